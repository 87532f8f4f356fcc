"""Representations of Lie 2-algebras and the generalized Chevalley-Eilenberg complex.

A k-cochain has components in Hom(alt^p g0 (x) sym^q g-1, V_s) with
p + 2q + s = k, s in {0, -1}.  The coboundary D is assembled as an exact
matrix per degree; it is the sum of the six pieces d^, del^, d_phi^(1,0),
d_phi^(0,1), d_phi2 and d_l3.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .exactlin import (DimensionError, FinSpace, LinMap, MultiTensor, ONE, ZERO, alt,
                       independent_subset, is_zero, nullspace, plain, rank_of, sym,
                       unit, vadd, vneg, vsub, vsum)
from .lie2core import AxiomReport, Lie2Algebra, _check

K_MAX = 4


# --------------------------------------------------------------- modules

@dataclass(frozen=True)
class Complex2:
    """A 2-term complex V-1 --partial--> V0."""
    V0: FinSpace
    Vm1: FinSpace
    partial: LinMap

    def __post_init__(self):
        if (self.partial.source.dim, self.partial.target.dim) != (self.Vm1.dim, self.V0.dim):
            raise DimensionError("partial must map V-1 to V0")

    @classmethod
    def concentrated(cls, V0, Vm1=None):
        Vm1 = Vm1 if Vm1 is not None else FinSpace("0", ())
        return cls(V0, Vm1, LinMap.zero(Vm1, V0))


def _mat(t: MultiTensor, first, out_dim, in_dim):
    """Operator matrix of u -> t(first..., u)."""
    cols = [t(*first, u) for u in range(in_dim)]
    return tuple(tuple(c[r] for c in cols) for r in range(out_dim))


class Rep2:
    """Representation of a Lie 2-algebra on a 2-term complex.

    a0: x > u (u in V0), a1: x > m (m in V-1), b: a > u in V-1,
    c: (x, y) > u in V-1.
    """

    def __init__(self, g: Lie2Algebra, V: Complex2, a0, a1, b, c):
        self.g, self.V = g, V
        self.a0, self.a1, self.b, self.c = a0, a1, b, c
        n0, n1 = g.dims
        want = [
            (a0, ((n0, "plain", 1), (V.V0.dim, "plain", 1)), V.V0.dim),
            (a1, ((n0, "plain", 1), (V.Vm1.dim, "plain", 1)), V.Vm1.dim),
            (b, ((n1, "plain", 1), (V.V0.dim, "plain", 1)), V.Vm1.dim),
            (c, ((n0, "alt", 2), (V.V0.dim, "plain", 1)), V.Vm1.dim),
        ]
        for t, blocks, out in want:
            got = tuple((bl.space.dim, bl.kind, bl.arity) for bl in t.blocks)
            if got != blocks or t.output.dim != out:
                raise DimensionError(f"representation tensor has shape {got}->{t.output.dim}")
        self._cache = {}
        v0, v1 = V.V0.dim, V.Vm1.dim
        self.A0 = [_mat(a0, (x,), v0, v0) for x in range(n0)]
        self.A1 = [_mat(a1, (x,), v1, v1) for x in range(n0)]
        self.B = [_mat(b, (a,), v1, v0) for a in range(n1)]
        self.C = {(x, y): _mat(c, (x, y), v1, v0)
                  for x in range(n0) for y in range(n0)}

    @staticmethod
    def blocks(g, V):
        return ([plain(g.g0), plain(V.V0)], [plain(g.g0), plain(V.Vm1)],
                [plain(g.gm1), plain(V.V0)], [alt(g.g0, 2), plain(V.V0)])

    @classmethod
    def from_functions(cls, g, V, a0, a1, b, c):
        B0, B1, B2, B3 = cls.blocks(g, V)
        return cls(g, V, MultiTensor.from_function(B0, V.V0, a0),
                   MultiTensor.from_function(B1, V.Vm1, a1),
                   MultiTensor.from_function(B2, V.Vm1, b),
                   MultiTensor.from_function(B3, V.Vm1, c))

    @classmethod
    def trivial(cls, g, V):
        B0, B1, B2, B3 = cls.blocks(g, V)
        return cls(g, V, MultiTensor(B0, V.V0), MultiTensor(B1, V.Vm1),
                   MultiTensor(B2, V.Vm1), MultiTensor(B3, V.Vm1))

    # operator matrices on arbitrary vectors
    def op0(self, x):
        return _combo(self.A0, x, self.V.V0.dim, self.V.V0.dim)

    def op1(self, x):
        return _combo(self.A1, x, self.V.Vm1.dim, self.V.Vm1.dim)

    def opb(self, a):
        return _combo(self.B, a, self.V.Vm1.dim, self.V.V0.dim)

    def opc(self, x, y):
        if isinstance(x, int) and isinstance(y, int):
            return self.C[x, y]
        out = None
        xs = [(x, ONE)] if isinstance(x, int) else [(i, c) for i, c in enumerate(x) if c != 0]
        ys = [(y, ONE)] if isinstance(y, int) else [(i, c) for i, c in enumerate(y) if c != 0]
        terms = [(self.C[i, j], ci * cj) for i, ci in xs for j, cj in ys]
        return _lincomb(terms, self.V.Vm1.dim, self.V.V0.dim)

    def pullback(self, phi) -> "Rep2":
        """The representation composed with a homomorphism phi: h -> g."""
        h = phi.source
        p0, p1, p2 = phi.phi0, phi.phi1, phi.phi2
        return Rep2.from_functions(
            h, self.V,
            lambda x, u: self.a0(p0.column(x), u),
            lambda x, m: self.a1(p0.column(x), m),
            lambda a, u: self.b(p1.column(a), u),
            lambda x, y, u: vadd(self.c(p0.column(x), p0.column(y), u),
                                 self.b(p2(x, y), u)))

    def __repr__(self):
        return f"Rep2({self.g.name} on V0={self.V.V0.dim}, V-1={self.V.Vm1.dim})"


def _lincomb(terms, rows, cols):
    acc = [[ZERO] * cols for _ in range(rows)]
    for m, c in terms:
        if c == 0:
            continue
        for r in range(rows):
            mr = m[r]
            ar = acc[r]
            for k in range(cols):
                if mr[k] != 0:
                    ar[k] = ar[k] + c * mr[k]
    return tuple(tuple(r) for r in acc)


def _combo(mats, v, rows, cols):
    if isinstance(v, int):
        return mats[v]
    return _lincomb([(mats[i], c) for i, c in enumerate(v) if c != 0], rows, cols)


def _mm(a, b):
    """Matrix product of nested tuples (shapes assumed compatible)."""
    if not a:
        return ()
    inner = len(b)
    ncol = len(b[0]) if b else 0
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(inner) if a[i][k] != 0), ZERO)
                       for j in range(ncol)) for i in range(len(a)))


def _msub(a, b):
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def _madd(a, b):
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def _mflat(m):
    return tuple(c for r in m for c in r)


def verify_rep(rep: Rep2) -> AxiomReport:
    """Laws making (a0 + a1, b, c) a homomorphism g -> gl(V)."""
    g, V = rep.g, rep.V
    P = V.partial.matrix
    rp = AxiomReport()
    n0, n1 = g.dims
    l0, l1 = g.g0.labels, g.gm1.labels
    dcol = [g.d.column(a) for a in range(n1)]
    for x in range(n0):
        _check(rp, "gl0", (l0[x],), _mflat(_msub(_mm(rep.A0[x], P), _mm(P, rep.A1[x]))))
    for a in range(n1):
        _check(rp, "chain0", (l1[a],), _mflat(_msub(rep.op0(dcol[a]), _mm(P, rep.B[a]))))
        _check(rp, "chain1", (l1[a],), _mflat(_msub(rep.op1(dcol[a]), _mm(rep.B[a], P))))
    for x in range(n0):
        for y in range(x + 1, n0):
            bxy = g.br(x, y)
            comm0 = _msub(_mm(rep.A0[x], rep.A0[y]), _mm(rep.A0[y], rep.A0[x]))
            comm1 = _msub(_mm(rep.A1[x], rep.A1[y]), _mm(rep.A1[y], rep.A1[x]))
            _check(rp, "h1", (l0[x], l0[y]),
                   _mflat(_msub(_msub(rep.op0(bxy), comm0), _mm(P, rep.C[x, y]))) +
                   _mflat(_msub(_msub(rep.op1(bxy), comm1), _mm(rep.C[x, y], P))))
    for x in range(n0):
        for a in range(n1):
            br = _msub(_mm(rep.A1[x], rep.B[a]), _mm(rep.B[a], rep.A0[x]))
            v = _msub(_msub(rep.opb(g.act(x, a)), br), rep.opc(x, dcol[a]))
            _check(rp, "h2", (l0[x], l1[a]), _mflat(v))
    for x in range(n0):
        for y in range(x + 1, n0):
            for z in range(y + 1, n0):
                lhs = rep.opb(g.jac(x, y, z))
                rhs = None
                for (u, v, w) in ((x, y, z), (y, z, x), (z, x, y)):
                    t = _msub(_mm(rep.A1[u], rep.C[v, w]), _mm(rep.C[v, w], rep.A0[u]))
                    t = _msub(t, rep.opc(g.br(u, v), w))
                    rhs = t if rhs is None else _madd(rhs, t)
                _check(rp, "h3", (l0[x], l0[y], l0[z]), _mflat(_msub(lhs, rhs)))
    return rp.finish()


def adjoint_rep(L: Lie2Algebra) -> Rep2:
    V = Complex2(L.g0, L.gm1, L.d)
    return Rep2.from_functions(
        L, V,
        lambda x, u: L.br(x, u),
        lambda x, m: L.act(x, m),
        lambda a, u: vneg(L.act(u, a)),
        lambda x, y, u: vneg(L.jac(x, y, u)))


def trivial_rep(L: Lie2Algebra, V: Complex2) -> Rep2:
    return Rep2.trivial(L, V)


# --------------------------------------------------------------- cochains

def components(k, rep=None):
    out = []
    for s in (0, -1):
        for q in range(0, (k - s) // 2 + 1 if k - s >= 0 else 0):
            p = k - 2 * q - s
            if p >= 0:
                out.append((p, q, s))
    return out


def comp_blocks(rep: Rep2, comp):
    p, q, s = comp
    return [alt(rep.g.g0, p), sym(rep.g.gm1, q)], (rep.V.V0 if s == 0 else rep.V.Vm1)


class CochainSpace:
    """Flat coordinates for C^k(g, V)."""

    def __init__(self, rep: Rep2, k: int):
        self.rep, self.k = rep, k
        self.comps = components(k)
        self.offset = {}
        self.keyindex = {}
        self.keys = {}
        self.outdim = {}
        pos = 0
        for comp in self.comps:
            blocks, out = comp_blocks(rep, comp)
            keys = MultiTensor(blocks, out).keys()
            self.offset[comp] = pos
            self.keys[comp] = keys
            self.keyindex[comp] = {kk: i for i, kk in enumerate(keys)}
            self.outdim[comp] = out.dim
            pos += len(keys) * out.dim
        self.dim = pos

    def flatten(self, cochain: "Cochain"):
        vec = [ZERO] * self.dim
        for comp, t in cochain.components.items():
            if comp not in self.offset:
                raise DimensionError(f"component {comp} is not admissible in degree {self.k}")
            base = self.offset[comp]
            n = self.outdim[comp]
            idx = self.keyindex[comp]
            for key, v in t.data.items():
                i = base + idx[key] * n
                for o, c in enumerate(v):
                    vec[i + o] = c
        return tuple(vec)

    def unflatten(self, vec) -> "Cochain":
        comps = {}
        for comp in self.comps:
            blocks, out = comp_blocks(self.rep, comp)
            base = self.offset[comp]
            size = len(self.keys[comp]) * out.dim
            comps[comp] = MultiTensor.from_flat(blocks, out, vec[base:base + size])
        return Cochain(self.k, comps)

    def basis_label(self, i):
        for comp in self.comps:
            base = self.offset[comp]
            n = self.outdim[comp]
            size = len(self.keys[comp]) * n
            if base <= i < base + size:
                return comp, self.keys[comp][(i - base) // n], (i - base) % n
        raise IndexError(i)


@dataclass
class Cochain:
    degree: int
    components: dict = field(default_factory=dict)

    def get(self, rep, comp):
        if comp in self.components:
            return self.components[comp]
        blocks, out = comp_blocks(rep, comp)
        return MultiTensor(blocks, out)

    def is_zero(self):
        return all(t.is_zero() for t in self.components.values())

    @classmethod
    def zero(cls, rep, k):
        return CochainSpace(rep, k).unflatten((ZERO,) * CochainSpace(rep, k).dim)


# ------------------------------------------------- symbolic evaluation

def _expand(arg):
    if isinstance(arg, int):
        return [(arg, ONE)]
    return [(i, c) for i, c in enumerate(arg) if c != 0]


class _Assembler:
    """Builds the matrix of D: C^k -> C^{k+1} row by row."""

    def __init__(self, rep: Rep2, k: int):
        self.rep = rep
        self.src = CochainSpace(rep, k)
        self.tgt = CochainSpace(rep, k + 1)
        g = rep.g
        n0 = g.g0.dim
        self.brv = {(i, j): g.br(i, j) for i in range(n0) for j in range(n0)}
        self.dcol = [g.d.column(a) for a in range(g.gm1.dim)]
        self.actv = {(x, a): g.act(x, a) for x in range(n0) for a in range(g.gm1.dim)}
        self.l3v = {}

    def jac(self, i, j, l):
        key = (i, j, l)
        if key not in self.l3v:
            self.l3v[key] = self.rep.g.jac(i, j, l)
        return self.l3v[key]

    def ev(self, comp, xargs, aargs):
        """Symbolic value of the source component at the arguments.

        Returns a list over output coordinates of {column: coefficient}.
        """
        src = self.src
        if comp not in src.offset:
            return None
        p, q, s = comp
        n = src.outdim[comp]
        out = [dict() for _ in range(n)]
        if n == 0:
            return out
        base = src.offset[comp]
        idx = src.keyindex[comp]
        xs = [_expand(a) for a in xargs]
        as_ = [_expand(a) for a in aargs]
        for xc in itertools.product(*xs):
            xi = [c[0] for c in xc]
            srt = sorted(xi)
            if len(set(srt)) < len(srt):
                continue
            sign = _perm_sign(xi)
            cx = ONE
            for c in xc:
                cx = cx * c[1]
            for ac in itertools.product(*as_):
                ai = tuple(sorted(c[0] for c in ac))
                coef = cx if sign > 0 else -cx
                for c in ac:
                    coef = coef * c[1]
                col0 = base + idx[tuple(srt) + ai] * n
                for o in range(n):
                    d = out[o]
                    col = col0 + o
                    d[col] = d.get(col, ZERO) + coef
        return out

    def build(self):
        rep, tgt = self.rep, self.tgt
        rows = []
        for comp in tgt.comps:
            p, q, s = comp
            n = tgt.outdim[comp]
            for key in tgt.keys[comp]:
                xs, as_ = list(key[:p]), list(key[p:])
                acc = [dict() for _ in range(n)]
                self._accumulate(acc, p, q, s, xs, as_)
                rows.extend(acc)
        return rows

    def _accumulate(self, acc, p, q, s, xs, as_):
        rep = self.rep
        # d^ : (p+1, q-1, s), da_i inserted after the x's
        if q >= 1:
            sp = p + 1
            sg = ONE if sp % 2 == 0 else -ONE
            for i in range(q):
                rest = as_[:i] + as_[i + 1:]
                _add(acc, self.ev((sp, q - 1, s), xs + [self.dcol[as_[i]]], rest), sg)
        # del^ : (p, q, -1) -> s = 0
        if s == 0:
            v = self.ev((p, q, -1), xs, as_)
            if v is not None:
                sg = ONE if p % 2 == 0 else -ONE
                _add(acc, _apply(rep.V.partial.matrix, v), sg)
        # d_phi^(1,0) : (p-1, q, s)
        if p >= 1:
            comp = (p - 1, q, s)
            if comp in self.src.offset:
                ops = rep.A0 if s == 0 else rep.A1
                for i in range(p):
                    v = self.ev(comp, xs[:i] + xs[i + 1:], as_)
                    sg = ONE if i % 2 == 0 else -ONE  # (-1)^{(i+1)+1}
                    _add(acc, _apply(ops[xs[i]], v), sg)
                for i in range(p):
                    for j in range(i + 1, p):
                        rest = [x for t, x in enumerate(xs) if t not in (i, j)]
                        v = self.ev(comp, [self.brv[xs[i], xs[j]]] + rest, as_)
                        sg = ONE if (i + j) % 2 == 0 else -ONE
                        _add(acc, v, sg)
                for i in range(p):
                    rest = xs[:i] + xs[i + 1:]
                    sg = ONE if (i + 1) % 2 == 0 else -ONE
                    for j in range(q):
                        aa = list(as_)
                        aa[j] = self.actv[xs[i], as_[j]]
                        _add(acc, self.ev(comp, rest, aa), sg)
        # d_phi^(0,1) : (p, q-1, 0) -> s = -1
        if s == -1 and q >= 1:
            comp = (p, q - 1, 0)
            if comp in self.src.offset:
                sg = ONE if p % 2 == 0 else -ONE
                for i in range(q):
                    v = self.ev(comp, xs, as_[:i] + as_[i + 1:])
                    _add(acc, _apply(rep.B[as_[i]], v), sg)
        # d_phi2 : (p-2, q, 0) -> s = -1
        if s == -1 and p >= 2:
            comp = (p - 2, q, 0)
            if comp in self.src.offset:
                base = ONE if (p - 2) % 2 == 0 else -ONE
                for i in range(p):
                    for j in range(i + 1, p):
                        rest = [x for t, x in enumerate(xs) if t not in (i, j)]
                        sg = base if (i + j - 1) % 2 == 0 else -base
                        v = self.ev(comp, rest, as_)
                        _add(acc, _apply(rep.C[xs[i], xs[j]], v), sg)
        # d_l3 : (p-3, q+1, s)
        if p >= 3:
            comp = (p - 3, q + 1, s)
            if comp in self.src.offset:
                for i, j, l in itertools.combinations(range(p), 3):
                    rest = [x for t, x in enumerate(xs) if t not in (i, j, l)]
                    sg = -ONE if (i + j + l - 3) % 2 == 0 else ONE
                    lv = self.jac(xs[i], xs[j], xs[l])
                    if is_zero(lv):
                        continue
                    _add(acc, self.ev(comp, rest, as_ + [lv]), sg)


def _perm_sign(seq):
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


def _add(acc, v, sg):
    if v is None:
        return
    for o, d in enumerate(v):
        a = acc[o]
        for col, c in d.items():
            if c != 0:
                a[col] = a.get(col, ZERO) + sg * c


def _apply(mat, v):
    """Apply an operator matrix to a symbolic vector."""
    out = []
    for r in mat:
        d = {}
        for o, c in enumerate(r):
            if c != 0:
                for col, e in v[o].items():
                    d[col] = d.get(col, ZERO) + c * e
        out.append(d)
    return out


def coboundary_matrix(rep: Rep2, k: int):
    """Dense rows of D: C^k -> C^{k+1}."""
    key = ("D", k)
    if key in rep._cache:
        return rep._cache[key]
    asm = _Assembler(rep, k)
    sparse = asm.build()
    ncols = asm.src.dim
    dense = [tuple(r.get(c, ZERO) for c in range(ncols)) for r in sparse]
    out = (dense, asm.src, asm.tgt)
    rep._cache[key] = out
    return out


def coboundary(rep: Rep2, c: Cochain) -> Cochain:
    rows, src, tgt = coboundary_matrix(rep, c.degree)
    v = src.flatten(c)
    nz = [(i, a) for i, a in enumerate(v) if a != 0]
    out = tuple(sum((r[i] * a for i, a in nz if r[i] != 0), ZERO) for r in rows)
    return tgt.unflatten(out)


# -------------------------------------------------------------- cohomology

@dataclass
class CohomologyResult:
    degree: int
    dim_Z: int
    dim_B: int
    dim_H: int
    representatives: list
    dim_C: int = 0


def cocycle_basis(rep: Rep2, k: int):
    rows, src, _ = coboundary_matrix(rep, k)
    return nullspace(rows, src.dim), src


def coboundary_span(rep: Rep2, k: int):
    """Columns of D_{k-1} (spanning B^k), as vectors in C^k coordinates."""
    if k - 1 < -1:
        return []
    rows, src, tgt = coboundary_matrix(rep, k - 1)
    return [tuple(r[j] for r in rows) for j in range(src.dim)]


def cohomology(rep: Rep2, k: int, k_max: int = K_MAX) -> CohomologyResult:
    if not (-1 <= k <= k_max):
        raise ValueError(f"degree {k} outside [-1, {k_max}]")
    Z, src = cocycle_basis(rep, k)
    Bcols = coboundary_span(rep, k)
    n = src.dim
    Bidx = independent_subset(Bcols, n)
    Bbasis = [Bcols[i] for i in Bidx]
    extra = independent_subset(Z, n, start=Bbasis)
    reps = [src.unflatten(Z[i]) for i in extra]
    dz, db = len(Z), len(Bbasis)
    return CohomologyResult(k, dz, db, dz - db, reps, n)


def is_coboundary(rep: Rep2, c: Cochain) -> bool:
    rows, src, tgt = coboundary_matrix(rep, c.degree - 1)
    v = tgt.flatten(c)
    from .exactlin import solve
    return solve(rows, v, src.dim) is not None


def is_cocycle(rep: Rep2, c: Cochain) -> bool:
    return coboundary(rep, c).is_zero()


# ---------------------------------------------------- degree 0 and 1 helpers

def degree0_cochain(rep: Rep2, u, theta: LinMap) -> Cochain:
    """(u, Theta) in V0 + Hom(g0, V-1)."""
    sp = CochainSpace(rep, 0)
    comps = {}
    b, out = comp_blocks(rep, (0, 0, 0))
    comps[(0, 0, 0)] = MultiTensor(b, out, {(): tuple(u)} if not is_zero(u) else {})
    b, out = comp_blocks(rep, (1, 0, -1))
    comps[(1, 0, -1)] = MultiTensor.from_function(b, out, lambda x: theta.column(x))
    sp.flatten(Cochain(0, comps))
    return Cochain(0, comps)


def degree1_cochain(rep: Rep2, X0: LinMap, X1: LinMap, lX: MultiTensor) -> Cochain:
    comps = {}
    b, out = comp_blocks(rep, (1, 0, 0))
    comps[(1, 0, 0)] = MultiTensor.from_function(b, out, lambda x: X0.column(x))
    b, out = comp_blocks(rep, (0, 1, -1))
    comps[(0, 1, -1)] = MultiTensor.from_function(b, out, lambda a: X1.column(a))
    b, out = comp_blocks(rep, (2, 0, -1))
    comps[(2, 0, -1)] = MultiTensor.from_function(b, out, lambda x, y: lX(x, y))
    return Cochain(1, comps)


def degree1_parts(rep: Rep2, c: Cochain):
    g, V = rep.g, rep.V
    t0 = c.get(rep, (1, 0, 0))
    t1 = c.get(rep, (0, 1, -1))
    X0 = LinMap.from_function(g.g0, V.V0, lambda x: t0(x))
    X1 = LinMap.from_function(g.gm1, V.Vm1, lambda a: t1(a))
    lX = c.get(rep, (2, 0, -1))
    return X0, X1, MultiTensor([alt(g.g0, 2)], V.Vm1, dict(lX.data))


def one_cocycle_check(rep: Rep2, X0: LinMap, X1: LinMap, lX: MultiTensor) -> AxiomReport:
    """The four closedness conditions for (X, l_X), evaluated directly."""
    g, V = rep.g, rep.V
    rp = AxiomReport()
    n0, n1 = g.dims
    l0, l1 = g.g0.labels, g.gm1.labels
    dv = V.partial
    mv = lambda m, v: tuple(sum((r[i] * v[i] for i in range(len(v)) if v[i] != 0), ZERO)
                            for r in m)
    for a in range(n1):
        _check(rp, "z1a", (l1[a],), vsub(dv(X1.column(a)), X0(g.d.column(a))))
    for x in range(n0):
        for y in range(x + 1, n0):
            v = vsub(dv(lX(x, y)), vsum([X0(g.br(x, y)), mv(rep.A0[y], X0.column(x)),
                                         vneg(mv(rep.A0[x], X0.column(y)))], V.V0.dim))
            _check(rp, "z1b", (l0[x], l0[y]), v)
    for x in range(n0):
        for a in range(n1):
            v = vsub(lX(x, g.d.column(a)),
                     vsum([X1(g.act(x, a)), mv(rep.B[a], X0.column(x)),
                           vneg(mv(rep.A1[x], X1.column(a)))], V.Vm1.dim))
            _check(rp, "z1c", (l0[x], l1[a]), v)
    for x in range(n0):
        for y in range(x + 1, n0):
            for z in range(y + 1, n0):
                terms = []
                for (u, v_, w) in ((x, y, z), (y, z, x), (z, x, y)):
                    terms += [lX(u, g.br(v_, w)), mv(rep.A1[u], lX(v_, w)),
                              vneg(mv(rep.C[v_, w], X0.column(u)))]
                v = vsub(X1(g.jac(x, y, z)), vsum(terms, V.Vm1.dim))
                _check(rp, "z1d", (l0[x], l0[y], l0[z]), v)
    return rp.finish()


# -------------------------------------------------- classical CE cohomology

def classical_ce_matrix(bracket: MultiTensor, action: MultiTensor, p: int):
    """Matrix of the Lie algebra differential Hom(alt^p g, V) -> Hom(alt^{p+1} g, V).

    ``bracket``: alt^2 g -> g; ``action``: g (x) V -> V.
    """
    g = bracket.output
    V = action.output
    n, m = g.dim, V.dim
    src_keys = list(itertools.combinations(range(n), p))
    tgt_keys = list(itertools.combinations(range(n), p + 1))
    sidx = {k: i for i, k in enumerate(src_keys)}
    ncols = len(src_keys) * m
    A = [[[action(x, u)[r] for u in range(m)] for r in range(m)] for x in range(n)]
    rows = []
    for key in tgt_keys:
        acc = [[ZERO] * ncols for _ in range(m)]
        for i in range(p + 1):
            rest = key[:i] + key[i + 1:]
            sg = ONE if i % 2 == 0 else -ONE
            base = sidx[rest] * m
            for r in range(m):
                for u in range(m):
                    c = A[key[i]][r][u]
                    if c != 0:
                        acc[r][base + u] += sg * c
        for i in range(p + 1):
            for j in range(i + 1, p + 1):
                rest = [key[t] for t in range(p + 1) if t not in (i, j)]
                sg = ONE if (i + j) % 2 == 0 else -ONE
                bv = bracket(key[i], key[j])
                for z, cz in enumerate(bv):
                    if cz == 0 or z in rest:
                        continue
                    args = [z] + rest
                    s = _perm_sign(args)
                    k2 = tuple(sorted(args))
                    base = sidx[k2] * m
                    for r in range(m):
                        acc[r][base + r] += sg * s * cz
        rows.extend(tuple(r) for r in acc)
    return rows, len(src_keys) * m


def classical_flat(t: MultiTensor):
    return t.flat()


def classical_cohomology_dims(bracket, action, p):
    rows, n = classical_ce_matrix(bracket, action, p)
    dz = n - rank_of(rows, n)
    if p == 0:
        db = 0
    else:
        prev, n_prev = classical_ce_matrix(bracket, action, p - 1)
        db = rank_of(prev, n_prev)
    return dz, db, dz - db


def classical_is_coboundary(bracket, action, cochain: MultiTensor) -> bool:
    """Is the p-cochain in the image of the classical differential?"""
    p = sum(b.arity for b in cochain.blocks)
    if p == 0:
        return cochain.is_zero()
    rows, n = classical_ce_matrix(bracket, action, p - 1)
    from .exactlin import solve
    return solve(rows, cochain.flat(), n) is not None


def classical_is_cocycle(bracket, action, cochain: MultiTensor) -> bool:
    p = sum(b.arity for b in cochain.blocks)
    rows, n = classical_ce_matrix(bracket, action, p)
    v = cochain.flat()
    return all(sum((r[i] * v[i] for i in range(n) if v[i] != 0), ZERO) == 0 for r in rows)


def classical_apply(bracket, action, cochain: MultiTensor) -> MultiTensor:
    p = sum(b.arity for b in cochain.blocks)
    rows, n = classical_ce_matrix(bracket, action, p)
    v = cochain.flat()
    out = [sum((r[i] * v[i] for i in range(n) if v[i] != 0), ZERO) for r in rows]
    return MultiTensor.from_flat([alt(bracket.output, p + 1)], action.output, out)
