"""Exact linear algebra over Q.

Vectors are plain tuples of scalars.  Scalars are ``fractions.Fraction``
for everything that gets row-reduced; the tensor and map containers only
use ``+``, ``-``, ``*`` and comparison with zero, so they also work with
ring elements such as :class:`lie2kit.derdef.DualScalar`.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

try:
    if os.environ.get("LIE2KIT_KERNEL") == "python":
        raise ImportError("pure-Python kernel requested")
    from . import _kernels as _kern
    KERNEL = "compiled"
except ImportError:
    from . import _pykernels as _kern
    KERNEL = "python"

Scalar = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    """Shapes of spaces, maps or tensors do not fit together."""


class SingularMapError(ArithmeticError):
    def __init__(self, name, msg=None):
        self.name = name
        super().__init__(msg or f"{name} is not invertible")


def Q(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def fmt(c) -> str:
    c = Q(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------- spaces

@dataclass(frozen=True)
class FinSpace:
    name: str
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(l) for l in self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise DimensionError(f"duplicate basis labels in space {self.name}")

    @classmethod
    def std(cls, name, dim, prefix=None):
        p = prefix if prefix is not None else name
        return cls(name, tuple(f"{p}{i + 1}" for i in range(dim)))

    @property
    def dim(self):
        return len(self.labels)

    def index(self, label):
        return self.labels.index(label)

    def zero(self):
        return (ZERO,) * self.dim

    def unit(self, i):
        return unit(self.dim, i)

    def renamed(self, name):
        return FinSpace(name, self.labels)


def direct_sum(name, *parts):
    """Direct sum with labels prefixed by each summand's name."""
    labels = []
    for sp in parts:
        labels.extend(f"{sp.name}.{l}" for l in sp.labels)
    return FinSpace(name, tuple(labels))


# --------------------------------------------------------------- vectors

def vzero(n):
    return (ZERO,) * n


def unit(n, i):
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(c, u):
    return tuple(c * a for a in u)


def vsum(vectors, n):
    acc = [ZERO] * n
    for v in vectors:
        for i, a in enumerate(v):
            if a != 0:
                acc[i] = acc[i] + a
    return tuple(acc)


def is_zero(v):
    return all(a == 0 for a in v)


def _nz(v):
    return [(i, a) for i, a in enumerate(v) if a != 0]


# ------------------------------------------------------------ row reduce

def rref(rows, ncols):
    return _kern.rref([list(map(Q, r)) for r in rows], ncols)


def rank_of(rows, ncols):
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of {v : rows . v = 0}, one vector per free column."""
    red, piv = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in zip(red, piv):
            v[p] = -r[f]
        basis.append(tuple(v))
    return basis


def solve(rows, rhs, ncols):
    """One solution x of rows . x = rhs, or None."""
    aug = [list(r) + [Q(b)] for r, b in zip(rows, rhs)]
    if not aug:
        return vzero(ncols)
    red, piv = rref(aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for r, p in zip(red, piv):
        x[p] = r[ncols]
    return tuple(x)


def independent_subset(vectors, n, start=()):
    """Indices of vectors that extend ``start`` to a larger independent set."""
    chosen = []
    rows = [list(v) for v in start]
    r0 = rank_of(rows, n)
    for i, v in enumerate(vectors):
        trial = rows + [list(v)]
        r1 = rank_of(trial, n)
        if r1 > r0:
            rows, r0 = trial, r1
            chosen.append(i)
    return chosen


def inverse_matrix(m, name="matrix"):
    n = len(m)
    if any(len(r) != n for r in m):
        raise SingularMapError(name, f"{name} is not square")
    aug = [list(r) + list(unit(n, i)) for i, r in enumerate(m)]
    red, piv = rref(aug, 2 * n) if n else ([], [])
    if piv[:n] != list(range(n)) or len(piv) < n or any(p >= n for p in piv[:n]):
        raise SingularMapError(name)
    return tuple(tuple(r[n:]) for r in red[:n])


# ------------------------------------------------------------ linear maps

class LinMap:
    """Matrix of shape dim(target) x dim(source)."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FinSpace, target: FinSpace, matrix):
        rows = tuple(tuple(r) for r in matrix)
        if len(rows) != target.dim or any(len(r) != source.dim for r in rows):
            raise DimensionError(
                f"matrix shape does not match {source.name}->{target.name} "
                f"({target.dim}x{source.dim})")
        self.source, self.target, self.matrix = source, target, rows

    @classmethod
    def identity(cls, space):
        return cls(space, space, [unit(space.dim, i) for i in range(space.dim)])

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, [vzero(source.dim)] * target.dim)

    @classmethod
    def from_columns(cls, source, target, cols):
        cols = list(cols)
        if len(cols) != source.dim:
            raise DimensionError("wrong number of columns")
        return cls(source, target,
                   [tuple(c[i] for c in cols) for i in range(target.dim)])

    @classmethod
    def from_function(cls, source, target, fn):
        return cls.from_columns(source, target, [fn(j) for j in range(source.dim)])

    def column(self, j):
        return tuple(r[j] for r in self.matrix)

    def columns(self):
        return [self.column(j) for j in range(self.source.dim)]

    def __call__(self, v):
        if isinstance(v, int):
            return self.column(v)
        nz = _nz(v)
        return tuple(vsum_row(r, nz) for r in self.matrix)

    def __matmul__(self, other: "LinMap"):
        if other.target.dim != self.source.dim:
            raise DimensionError("composition of incompatible maps")
        return LinMap.from_columns(other.source, self.target,
                                   [self(c) for c in other.columns()])

    def _check(self, other):
        if (self.source.dim, self.target.dim) != (other.source.dim, other.target.dim):
            raise DimensionError("adding maps of different shapes")

    def __add__(self, other):
        self._check(other)
        return LinMap(self.source, self.target,
                      [vadd(a, b) for a, b in zip(self.matrix, other.matrix)])

    def __sub__(self, other):
        self._check(other)
        return LinMap(self.source, self.target,
                      [vsub(a, b) for a, b in zip(self.matrix, other.matrix)])

    def __neg__(self):
        return LinMap(self.source, self.target, [vneg(r) for r in self.matrix])

    def scale(self, c):
        return LinMap(self.source, self.target, [vscale(c, r) for r in self.matrix])

    def transpose(self):
        return LinMap(self.target, self.source,
                      [self.column(j) for j in range(self.source.dim)])

    def with_spaces(self, source, target):
        return LinMap(source, target, self.matrix)

    def is_zero(self):
        return all(is_zero(r) for r in self.matrix)

    def rank(self):
        return rank_of(self.matrix, self.source.dim)

    def inverse(self, name=None):
        if self.source.dim != self.target.dim:
            raise SingularMapError(name or "map", f"{name or 'map'} is not square")
        inv = inverse_matrix(self.matrix, name or "map")
        return LinMap(self.target, self.source, inv)

    def __eq__(self, other):
        return (isinstance(other, LinMap) and self.matrix == other.matrix
                and self.source.dim == other.source.dim
                and self.target.dim == other.target.dim)

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"LinMap({self.source.name}->{self.target.name}, {self.matrix})"


def vsum_row(row, nz):
    acc = ZERO
    for j, a in nz:
        c = row[j]
        if c != 0:
            acc = acc + c * a
    return acc


# --------------------------------------------------------------- subspaces

@dataclass(frozen=True)
class Subspace:
    ambient: FinSpace
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    def inclusion(self, name=None):
        sp = FinSpace.std(name or f"sub({self.ambient.name})", self.dim, "v")
        return LinMap.from_columns(sp, self.ambient, self.basis)


def kernel(f: LinMap) -> Subspace:
    return Subspace(f.source, tuple(nullspace(f.matrix, f.source.dim)))


def image(f: LinMap) -> Subspace:
    cols = f.columns()
    idx = independent_subset(cols, f.target.dim)
    return Subspace(f.target, tuple(cols[i] for i in idx))


def span(ambient, vectors) -> Subspace:
    vectors = [tuple(map(Q, v)) for v in vectors]
    for v in vectors:
        if len(v) != ambient.dim:
            raise DimensionError("vector does not live in the ambient space")
    idx = independent_subset(vectors, ambient.dim)
    return Subspace(ambient, tuple(vectors[i] for i in idx))


def solve_membership(v, sub: Subspace):
    """Coordinates c with sum c_i basis_i = v, or None when v is outside."""
    n = sub.ambient.dim
    if len(v) != n:
        raise DimensionError("vector and subspace dimensions differ")
    if not sub.basis:
        return () if is_zero(v) else None
    rows = [[b[i] for b in sub.basis] for i in range(n)]
    return solve(rows, v, len(sub.basis))


def complement(sub: Subspace):
    """Standard basis vectors completing ``sub`` to the ambient space (indices)."""
    n = sub.ambient.dim
    return independent_subset([unit(n, i) for i in range(n)], n, start=sub.basis)


def quotient(ambient: FinSpace, sub: Subspace, name=None):
    """Quotient ambient/sub as (space, projection, section)."""
    if sub.ambient.dim != ambient.dim or any(len(b) != ambient.dim for b in sub.basis):
        raise DimensionError("subspace vectors are not inside the ambient space")
    sub = span(ambient, sub.basis)
    comp = complement(sub)
    qsp = FinSpace(name or f"{ambient.name}/~", tuple(ambient.labels[i] for i in comp))
    n, k = ambient.dim, sub.dim
    # coordinates in the adapted basis (sub basis, then complement units)
    adapted = list(sub.basis) + [unit(n, i) for i in comp]
    to_adapted = inverse_matrix(
        tuple(tuple(b[i] for b in adapted) for i in range(n)), "adapted basis")
    proj = LinMap(ambient, qsp, to_adapted[k:])
    section = LinMap.from_columns(qsp, ambient, [unit(n, i) for i in comp])
    return qsp, proj, section


# ------------------------------------------------------------ tensors

ALT, SYM, PLAIN = "alt", "sym", "plain"


@dataclass(frozen=True)
class Block:
    space: FinSpace
    kind: str
    arity: int

    def keys(self):
        n = self.space.dim
        if self.kind == ALT:
            return list(itertools.combinations(range(n), self.arity))
        if self.kind == SYM:
            return list(itertools.combinations_with_replacement(range(n), self.arity))
        return list(itertools.product(range(n), repeat=self.arity))


def alt(space, k):
    return Block(space, ALT, k)


def sym(space, k):
    return Block(space, SYM, k)


def plain(space, k=1):
    return Block(space, PLAIN, k)


def _sort_sign(idx):
    """(sign, sorted tuple) for an alternating argument list."""
    lst = list(idx)
    sign = 1
    n = len(lst)
    for i in range(n):
        for j in range(n - 1 - i):
            if lst[j] > lst[j + 1]:
                lst[j], lst[j + 1] = lst[j + 1], lst[j]
                sign = -sign
            elif lst[j] == lst[j + 1]:
                return 0, None
    if n and any(lst[i] == lst[i + 1] for i in range(n - 1)):
        return 0, None
    return sign, tuple(lst)


class MultiTensor:
    """Multilinear map on a product of symmetry blocks.

    Only canonical keys (sorted inside alt/sym blocks) are stored, and only
    with nonzero values.
    """

    __slots__ = ("blocks", "output", "data", "_arity")

    def __init__(self, blocks: Sequence[Block], output: FinSpace, data=None):
        self.blocks = tuple(blocks)
        self.output = output
        self._arity = sum(b.arity for b in self.blocks)
        clean = {}
        for k, v in (data or {}).items():
            k = tuple(k)
            v = tuple(v)
            if len(v) != output.dim or len(k) != self._arity:
                raise DimensionError("tensor entry has the wrong shape")
            s, ck = self.canonical(k)
            if s == 0:
                if not is_zero(v):
                    raise DimensionError(f"nonzero value on degenerate key {k}")
                continue
            if ck != k:
                raise DimensionError(f"non-canonical key {k}")
            if not is_zero(v):
                clean[k] = v
        self.data = clean

    # -- shape helpers
    @property
    def arity(self):
        return self._arity

    def slots(self):
        out = []
        for b in self.blocks:
            out.extend([b] * b.arity)
        return out

    def keys(self):
        return [sum(ks, ()) for ks in itertools.product(*[b.keys() for b in self.blocks])]

    def num_keys(self):
        return len(self.keys())

    def same_shape(self, other):
        return (len(self.blocks) == len(other.blocks) and self.output.dim == other.output.dim
                and all((a.space.dim, a.kind, a.arity) == (b.space.dim, b.kind, b.arity)
                        for a, b in zip(self.blocks, other.blocks)))

    def canonical(self, idx):
        sign = 1
        out = []
        pos = 0
        for b in self.blocks:
            part = idx[pos:pos + b.arity]
            pos += b.arity
            if b.kind == ALT:
                s, part = _sort_sign(part)
                if s == 0:
                    return 0, None
                sign *= s
            elif b.kind == SYM:
                part = tuple(sorted(part))
            out.extend(part)
        return sign, tuple(out)

    # -- construction
    @classmethod
    def zero(cls, blocks, output):
        return cls(blocks, output, {})

    @classmethod
    def from_function(cls, blocks, output, fn):
        t = cls(blocks, output)
        for k in t.keys():
            v = tuple(fn(*k))
            if len(v) != output.dim:
                raise DimensionError("function returned a vector of the wrong size")
            if not is_zero(v):
                t.data[k] = v
        return t

    @classmethod
    def from_flat(cls, blocks, output, flat):
        t = cls(blocks, output)
        n = output.dim
        for i, k in enumerate(t.keys()):
            v = tuple(flat[i * n:(i + 1) * n])
            if not is_zero(v):
                t.data[k] = v
        return t

    def flat(self):
        n = self.output.dim
        out = []
        z = vzero(n)
        for k in self.keys():
            out.extend(self.data.get(k, z))
        return tuple(out)

    # -- evaluation
    def at(self, *idx):
        s, k = self.canonical(idx)
        if s == 0:
            return vzero(self.output.dim)
        v = self.data.get(k)
        if v is None:
            return vzero(self.output.dim)
        return v if s == 1 else vneg(v)

    def __call__(self, *args):
        if len(args) != self._arity:
            raise DimensionError(f"expected {self._arity} arguments, got {len(args)}")
        if all(isinstance(a, int) for a in args):
            return self.at(*args)
        expanded = [[(a, ONE)] if isinstance(a, int) else _nz(a) for a in args]
        acc = [ZERO] * self.output.dim
        for combo in itertools.product(*expanded):
            idx = tuple(c[0] for c in combo)
            s, k = self.canonical(idx)
            if s == 0:
                continue
            v = self.data.get(k)
            if v is None:
                continue
            coef = ONE if s == 1 else -ONE
            for _, c in combo:
                coef = coef * c
            for i, a in enumerate(v):
                if a != 0:
                    acc[i] = acc[i] + coef * a
        return tuple(acc)

    # -- arithmetic
    def _binop(self, other, op):
        if not self.same_shape(other):
            raise DimensionError("tensor shapes differ")
        out = MultiTensor(self.blocks, self.output)
        z = vzero(self.output.dim)
        for k in set(self.data) | set(other.data):
            v = op(self.data.get(k, z), other.data.get(k, z))
            if not is_zero(v):
                out.data[k] = v
        return out

    def __add__(self, other):
        return self._binop(other, vadd)

    def __sub__(self, other):
        return self._binop(other, vsub)

    def __neg__(self):
        out = MultiTensor(self.blocks, self.output)
        out.data = {k: vneg(v) for k, v in self.data.items()}
        return out

    def scale(self, c):
        out = MultiTensor(self.blocks, self.output)
        for k, v in self.data.items():
            w = vscale(c, v)
            if not is_zero(w):
                out.data[k] = w
        return out

    def postcompose(self, f: LinMap):
        out = MultiTensor(self.blocks, f.target)
        for k, v in self.data.items():
            w = f(v)
            if not is_zero(w):
                out.data[k] = w
        return out

    def pullback(self, blocks, maps):
        """Precompose argument slots with ``maps`` (one LinMap per slot)."""
        return MultiTensor.from_function(
            blocks, self.output, lambda *k: self(*[m.column(i) for m, i in zip(maps, k)]))

    def with_spaces(self, blocks, output):
        out = MultiTensor(blocks, output)
        if not self.same_shape(out):
            raise DimensionError("relabelling changes the tensor shape")
        out.data = dict(self.data)
        return out

    def is_zero(self):
        return not self.data

    def items(self):
        return sorted(self.data.items())

    def __eq__(self, other):
        return isinstance(other, MultiTensor) and self.same_shape(other) and \
            self.data == other.data

    def __hash__(self):
        return hash(tuple(sorted(self.data)))

    def __repr__(self):
        shape = ",".join(f"{b.kind}{b.arity}({b.space.name})" for b in self.blocks)
        return f"MultiTensor[{shape}->{self.output.name}]({len(self.data)} entries)"


def rank_nullity_holds(f: LinMap) -> bool:
    return kernel(f).dim + image(f).dim == f.source.dim


def random_matrix(rng, rows, cols, lo=-3, hi=3, density=1.0):
    out = []
    for _ in range(rows):
        out.append(tuple(Fraction(rng.randint(lo, hi)) if rng.random() < density else ZERO
                         for _ in range(cols)))
    return tuple(out)


def random_invertible(rng, n, lo=-2, hi=2):
    while True:
        m = random_matrix(rng, n, n, lo, hi)
        if rank_of(m, n) == n:
            return m


def iter_nonzero(v: Iterable):
    return _nz(v)
