"""Graded polynomial functions on the shifted dual of a Lie 2-algebra, the
Leibniz-extended homotopy Poisson brackets, the Courant algebroid over the dual
of g-1 and the linear quasi-Poisson groupoid data."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exactlin import ONE, Q, ZERO
from .lie2core import AxiomReport, Lie2Algebra

D_MAX = 3
# degrees as functions on the shifted dual: g0, g0^*, g-1, g-1^*
FUNCTION_DEGREES = {"g0": 1, "g0*": 1, "gm1": 0, "gm1*": 2}


# ------------------------------------------------------------ polynomials

class PolyRing:
    """Generators with a function degree each; odd degrees anticommute."""

    def __init__(self, labels, degrees):
        self.labels = tuple(labels)
        self.degrees = tuple(degrees)
        self.n = len(self.labels)
        self.odd = tuple(d % 2 == 1 for d in self.degrees)
        self.index = {l: i for i, l in enumerate(self.labels)}

    def gen(self, i):
        if isinstance(i, str):
            i = self.index[i]
        e = [0] * self.n
        e[i] = 1
        return GradedPoly(self, {tuple(e): ONE})

    def const(self, c):
        c = Q(c)
        return GradedPoly(self, {(0,) * self.n: c} if c != 0 else {})

    def zero(self):
        return GradedPoly(self, {})

    def linear(self, coeffs, offset=0):
        """sum_i coeffs[i] * gen(offset + i)."""
        out = {}
        for i, c in enumerate(coeffs):
            if c != 0:
                e = [0] * self.n
                e[offset + i] = 1
                out[tuple(e)] = Q(c)
        return GradedPoly(self, out)

    def mono_degree(self, e):
        return sum(k * d for k, d in zip(e, self.degrees))

    def mul_mono(self, e1, e2):
        """(sign, product exponent) or (0, None) for a squared odd generator."""
        sign = 1
        for i in range(self.n):
            if self.odd[i] and e1[i] and e2[i]:
                return 0, None
        # move odd generators of e2 left past the odd generators of e1 with larger index
        later = 0
        for i in range(self.n - 1, -1, -1):
            if self.odd[i]:
                if e2[i]:
                    if later % 2:
                        sign = -sign
                if e1[i]:
                    later += 1
        return sign, tuple(a + b for a, b in zip(e1, e2))

    def monomials(self, max_degree, min_degree=1, max_poly=None):
        """Exponent tuples with polynomial degree in [min_degree, max_degree]."""
        out = []

        def rec(i, cur, left):
            if i == self.n:
                tot = sum(cur)
                if min_degree <= tot:
                    out.append(tuple(cur))
                return
            top = 1 if self.odd[i] else left
            for k in range(min(top, left) + 1):
                cur.append(k)
                rec(i + 1, cur, left - k)
                cur.pop()

        rec(0, [], max_degree)
        return sorted(out, key=lambda e: (sum(e), tuple(-k for k in e)))


class GradedPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms=None):
        self.ring = ring
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    def __add__(self, o):
        if not isinstance(o, GradedPoly):
            o = self.ring.const(o)
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, ZERO) + v
        return GradedPoly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-o if isinstance(o, GradedPoly) else -Q(o))

    def __rsub__(self, o):
        return (-self) + o

    def scale(self, c):
        c = Q(c)
        return GradedPoly(self.ring, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, o):
        if not isinstance(o, GradedPoly):
            return self.scale(o)
        R = self.ring
        t = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                s, k = R.mul_mono(k1, k2)
                if s:
                    t[k] = t.get(k, ZERO) + s * v1 * v2
        return GradedPoly(R, t)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, o):
        if not isinstance(o, GradedPoly):
            o = self.ring.const(o)
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return {self.ring.mono_degree(k) for k in self.terms}

    def degree(self):
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("inhomogeneous polynomial")
        return ds.pop() if ds else 0

    def poly_degree(self):
        return max((sum(k) for k in self.terms), default=0)

    def deriv(self, i):
        """Partial derivative along an even generator."""
        R = self.ring
        if R.odd[i]:
            raise ValueError("use an even generator")
        t = {}
        for k, v in self.terms.items():
            if k[i]:
                e = list(k)
                e[i] -= 1
                e = tuple(e)
                t[e] = t.get(e, ZERO) + v * k[i]
        return GradedPoly(R, t)

    def coefficient(self, e):
        return self.terms.get(tuple(e), ZERO)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items()):
            m = "*".join(f"{l}^{e}" if e > 1 else l
                         for l, e in zip(self.ring.labels, k) if e)
            parts.append(f"{v}" + (f"*{m}" if m else ""))
        return " + ".join(parts)


def mono(ring, e, c=ONE):
    return GradedPoly(ring, {tuple(e): Q(c)})


# -------------------------------------------------------- bracket family

def function_ring(L: Lie2Algebra) -> PolyRing:
    """g-1 generators (degree 0) followed by g0 generators (degree 1)."""
    return PolyRing(tuple(L.gm1.labels) + tuple(L.g0.labels),
                    (FUNCTION_DEGREES["gm1"],) * L.gm1.dim + (FUNCTION_DEGREES["g0"],) * L.g0.dim)


def _sgn(k):
    return -1 if k % 2 else 1


def _parity(deg):
    """Koszul parity of a function of degree deg on the shifted algebra."""
    return (deg - 1) % 2


@dataclass
class BracketFamily:
    L: Lie2Algebra
    ring: PolyRing
    signs: tuple = (1, 1, 1)
    _cache: dict = field(default_factory=dict)

    # generator indices
    def a(self, i):
        return i

    def x(self, j):
        return self.L.gm1.dim + j

    def _lin_a(self, v):
        return self.ring.linear(v, 0)

    def _lin_x(self, v):
        return self.ring.linear(v, self.L.gm1.dim)

    def _table(self, m, gens):
        L, R = self.L, self.ring
        n1 = L.gm1.dim
        s1, s2, s3 = self.signs
        kinds = ["a" if g < n1 else "x" for g in gens]
        idx = [g if g < n1 else g - n1 for g in gens]
        if m == 1:
            if kinds[0] == "a":
                return self._lin_x(L.d.column(idx[0])).scale(s1)
            return R.zero()
        if m == 2:
            if kinds == ["x", "x"]:
                return self._lin_x(L.br(idx[0], idx[1])).scale(s2)
            if kinds == ["x", "a"]:
                return self._lin_a(L.act(idx[0], idx[1])).scale(s2)
            if kinds == ["a", "x"]:
                # graded skew symmetry with parities 1 and 0
                return self._lin_a(L.act(idx[1], idx[0])).scale(-s2)
            return R.zero()
        if kinds == ["x", "x", "x"]:
            return self._lin_a(L.jac(*idx)).scale(s3)
        return R.zero()

    def bracket(self, *args):
        """l_m(args) for m = len(args), extended as a multiderivation."""
        m = len(args)
        R = self.ring
        if m > 3:
            return R.zero()
        out = R.zero()
        for combo in itertools.product(*[list(a.terms.items()) for a in args]):
            c = ONE
            for _, v in combo:
                c *= v
            out = out + self._mono(tuple(k for k, _ in combo)).scale(c)
        return out

    def _mono(self, monos):
        key = monos
        if key in self._cache:
            return self._cache[key]
        R = self.ring
        m = len(monos)
        if any(sum(e) == 0 for e in monos):
            res = R.zero()
        elif all(sum(e) == 1 for e in monos):
            res = self._table(m, [e.index(1) for e in monos])
        else:
            k = max(i for i, e in enumerate(monos) if sum(e) > 1)
            sign = 1
            cur = list(monos)
            for j in range(k, m - 1):
                pu = _parity(R.mono_degree(cur[j]))
                pv = _parity(R.mono_degree(cur[j + 1]))
                sign *= -_sgn(pu * pv)
                cur[j], cur[j + 1] = cur[j + 1], cur[j]
            last = cur[-1]
            g = next(i for i, e in enumerate(last) if e)
            ge = [0] * R.n
            ge[g] = 1
            rest = list(last)
            rest[g] -= 1
            ge, rest = tuple(ge), tuple(rest)
            delta = 2 - m - (m - 1) + sum(R.mono_degree(e) for e in cur[:-1])
            gdeg = R.degrees[g]
            first = self._mono(tuple(cur[:-1]) + (ge,)) * mono(R, rest)
            second = mono(R, ge) * self._mono(tuple(cur[:-1]) + (rest,))
            res = (first + second.scale(_sgn(delta * gdeg))).scale(sign)
        self._cache[key] = res
        return res

    def l1(self, f):
        return self.bracket(f)

    def l2(self, f, g):
        return self.bracket(f, g)

    def l3(self, f, g, h):
        return self.bracket(f, g, h)


def _unshuffles(n, i):
    for first in itertools.combinations(range(n), i):
        rest = tuple(k for k in range(n) if k not in first)
        yield first + rest


def _koszul(perm, parities):
    """sign(perm) times the Koszul sign, i.e. the antisymmetric Koszul sign."""
    sign = 1
    seq = list(perm)
    # bubble sort the permuted sequence back, tracking swaps
    arr = [(p, parities[p]) for p in seq]
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j][0] > arr[j + 1][0]:
                sign *= -_sgn(arr[j][1] * arr[j + 1][1])
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
    return sign


def jacobi_defect(B: BracketFamily, args):
    """Left side of the n-th homotopy Jacobi identity on homogeneous monomials."""
    n = len(args)
    R = B.ring
    par = [_parity(a.degree()) for a in args]
    out = R.zero()
    for i in range(1, n + 1):
        j = n + 1 - i
        if i > 3 or j > 3:
            continue
        for perm in _unshuffles(n, i):
            chi = _koszul(perm, par)
            inner = B.bracket(*[args[p] for p in perm[:i]])
            if inner.is_zero():
                continue
            outer = B.bracket(inner, *[args[p] for p in perm[i:]])
            out = out + outer.scale(chi * _sgn(i * (j - 1)))
    return out


def check_homotopy_jacobi(B: BracketFamily, d_max=D_MAX, max_arity=4) -> AxiomReport:
    """All identities n = 1..max_arity on tuples of monomials with total polynomial
    degree <= max(d_max, n + 1)."""
    rp = AxiomReport()
    R = B.ring
    monos = R.monomials(max(d_max, max_arity + 1))
    for n in range(1, max_arity + 1):
        cap = max(d_max, n + 1) if n > 1 else d_max
        pool = [e for e in monos if sum(e) <= cap - (n - 1)]
        for combo in itertools.combinations_with_replacement(range(len(pool)), n):
            es = [pool[i] for i in combo]
            if sum(sum(e) for e in es) > cap:
                continue
            v = jacobi_defect(B, [mono(R, e) for e in es])
            if not v.is_zero():
                rp.add(f"J{n}", tuple(repr(mono(R, e)) for e in es), tuple(v.terms.values()))
    return rp.finish()


def check_generators(B: BracketFamily) -> AxiomReport:
    """On generators the brackets reproduce d, l2 and l3 of the algebra."""
    L, R = B.L, B.ring
    rp = AxiomReport()
    n0, n1 = L.dims
    A = [R.gen(B.a(i)) for i in range(n1)]
    X = [R.gen(B.x(j)) for j in range(n0)]
    for i in range(n1):
        if B.l1(A[i]) != B._lin_x(L.d.column(i)).scale(B.signs[0]):
            rp.add("gen.l1", (L.gm1.labels[i],), (ONE,))
    for j in range(n0):
        for k in range(n0):
            if B.l2(X[j], X[k]) != B._lin_x(L.br(j, k)).scale(B.signs[1]):
                rp.add("gen.l2", (L.g0.labels[j], L.g0.labels[k]), (ONE,))
        for i in range(n1):
            if B.l2(X[j], A[i]) != B._lin_a(L.act(j, i)).scale(B.signs[1]):
                rp.add("gen.l2", (L.g0.labels[j], L.gm1.labels[i]), (ONE,))
    for j, k, l in itertools.combinations(range(n0), 3):
        if B.l3(X[j], X[k], X[l]) != B._lin_a(L.jac(j, k, l)).scale(B.signs[2]):
            rp.add("gen.l3", (L.g0.labels[j], L.g0.labels[k], L.g0.labels[l]), (ONE,))
    return rp.finish()


def check_leibniz(B: BracketFamily, rng, samples=20, max_deg=2) -> AxiomReport:
    """l_m(..., f g) = l_m(..., f) g + (-1)^(delta |f|) f l_m(..., g)."""
    R = B.ring
    rp = AxiomReport()
    monos = R.monomials(max_deg)
    if not monos:
        return rp.finish()

    def rpoly(deg):
        cands = [e for e in monos if R.mono_degree(e) == deg]
        if not cands:
            return None
        p = R.zero()
        for e in rng.sample(cands, min(len(cands), 3)):
            p = p + mono(R, e, rng.randint(-3, 3))
        return p

    degs = sorted({R.mono_degree(e) for e in monos})
    for s in range(samples):
        m = rng.randint(1, 3)
        pre = [rpoly(rng.choice(degs)) for _ in range(m - 1)]
        f, g = rpoly(rng.choice(degs)), rpoly(rng.choice(degs))
        if any(p is None or p.is_zero() for p in pre + [f, g]):
            continue
        delta = 2 - m - (m - 1) + sum(p.degree() for p in pre)
        lhs = B.bracket(*pre, f * g)
        rhs = B.bracket(*pre, f) * g + (f * B.bracket(*pre, g)).scale(_sgn(delta * f.degree()))
        if lhs != rhs:
            rp.add("leibniz", (f"sample{s}",), tuple((lhs - rhs).terms.values()))
    return rp.finish()


def extend_brackets(L: Lie2Algebra, signs=(1, 1, 1)) -> BracketFamily:
    return BracketFamily(L, function_ring(L), tuple(signs))


# ------------------------------------------------------------ Courant data

@dataclass
class Section:
    """sum_j f_j x_j + g_j xi_j with polynomial coefficients on g-1^*."""
    x: tuple
    xi: tuple

    def __add__(self, o):
        return Section(tuple(a + b for a, b in zip(self.x, o.x)),
                       tuple(a + b for a, b in zip(self.xi, o.xi)))

    def __neg__(self):
        return Section(tuple(-a for a in self.x), tuple(-a for a in self.xi))

    def __sub__(self, o):
        return self + (-o)

    def times(self, f):
        return Section(tuple(f * a for a in self.x), tuple(f * a for a in self.xi))

    def scale(self, c):
        return Section(tuple(a.scale(c) for a in self.x), tuple(a.scale(c) for a in self.xi))

    def __eq__(self, o):
        return self.x == o.x and self.xi == o.xi

    def is_zero(self):
        return all(a.is_zero() for a in self.x + self.xi)

    def terms(self):
        """(kind, j, coefficient) for nonzero components."""
        for j, f in enumerate(self.x):
            if not f.is_zero():
                yield "x", j, f
        for j, f in enumerate(self.xi):
            if not f.is_zero():
                yield "xi", j, f


class CourantData:
    """E = g-1^* x (g0^* + g0) over g-1^*.

    Dorfman bracket on constant sections:
      {x, y} = [x, y] + l3(x, y, .),  {x, xi} = ad*_x xi = -xi o ad_x,  {xi, eta} = 0,
    pairing <x, xi> = xi(x), anchor rho(x)(a) = [x, a], rho(xi) = d^* xi.
    The Courant bracket is the skew part: [[e1, e2]] = {e1, e2} - 1/2 D<e1, e2>."""

    def __init__(self, L: Lie2Algebra):
        self.L = L
        n0, n1 = L.dims
        self.n0, self.n1 = n0, n1
        self.ring = PolyRing(L.gm1.labels, (0,) * n1)
        R = self.ring
        self._zero = tuple(R.zero() for _ in range(n0))

    # constructors
    def const_x(self, j):
        x = list(self._zero)
        x[j] = self.ring.const(1)
        return Section(tuple(x), self._zero)

    def const_xi(self, j):
        xi = list(self._zero)
        xi[j] = self.ring.const(1)
        return Section(self._zero, tuple(xi))

    def zero(self):
        return Section(self._zero, self._zero)

    def lin(self, v):
        return self.ring.linear(v)

    # anchor: vector fields as tuples of components along d/da_i
    def anchor_x(self, j):
        return tuple(self.lin(self.L.act(j, i)) for i in range(self.n1))

    def anchor_xi(self, j):
        return tuple(self.ring.const(self.L.d.column(i)[j]) for i in range(self.n1))

    def anchor(self, e: Section):
        comps = [self.ring.zero() for _ in range(self.n1)]
        for kind, j, f in e.terms():
            v = self.anchor_x(j) if kind == "x" else self.anchor_xi(j)
            comps = [c + f * w for c, w in zip(comps, v)]
        return tuple(comps)

    def apply_vf(self, X, f):
        out = self.ring.zero()
        for i, c in enumerate(X):
            if not c.is_zero():
                out = out + c * f.deriv(i)
        return out

    def vf_bracket(self, X, Y):
        return tuple(self.apply_vf(X, Y[i]) - self.apply_vf(Y, X[i]) for i in range(self.n1))

    def pairing(self, e1: Section, e2: Section):
        out = self.ring.zero()
        for j in range(self.n0):
            out = out + e1.x[j] * e2.xi[j] + e1.xi[j] * e2.x[j]
        return out

    def Dop(self, f):
        """<D f, e> = rho(e)(f)."""
        x = tuple(self.apply_vf(self.anchor_xi(j), f) for j in range(self.n0))
        xi = tuple(self.apply_vf(self.anchor_x(j), f) for j in range(self.n0))
        return Section(x, xi)

    def _const_dorfman(self, k1, j1, k2, j2):
        L, R = self.L, self.ring
        if k1 == "x" and k2 == "x":
            x = tuple(R.const(c) for c in L.br(j1, j2))
            xi = tuple(self.lin(L.jac(j1, j2, k)) for k in range(self.n0))
            return Section(x, xi)
        if k1 == "x" and k2 == "xi":
            # ad*_x xi = -xi o ad_x, the sign forced by invariance of the pairing
            xi = tuple(R.const(-L.br(j1, k)[j2]) for k in range(self.n0))
            return Section(self._zero, xi)
        if k1 == "xi" and k2 == "x":
            xi = tuple(R.const(L.br(j2, k)[j1]) for k in range(self.n0))
            return Section(self._zero, xi)
        return self.zero()

    def dorfman(self, e1: Section, e2: Section) -> Section:
        out = self.zero()
        for k1, j1, f in e1.terms():
            c1 = self.const_x(j1) if k1 == "x" else self.const_xi(j1)
            for k2, j2, g in e2.terms():
                c2 = self.const_x(j2) if k2 == "x" else self.const_xi(j2)
                # {f c1, g c2} = f g {c1,c2} + f rho(c1)(g) c2 - g rho(c2)(f) c1 + g <c1,c2> D f
                term = self._const_dorfman(k1, j1, k2, j2).times(f * g)
                term = term + c2.times(f * self.apply_vf(self.anchor(c1), g))
                term = term - c1.times(g * self.apply_vf(self.anchor(c2), f))
                pc = self.pairing(c1, c2)
                if not pc.is_zero():
                    term = term + self.Dop(f).times(g * pc)
                out = out + term
        return out

    def courant(self, e1, e2):
        return self.dorfman(e1, e2) - self.Dop(self.pairing(e1, e2)).scale(Fraction(1, 2))

    def T(self, e1, e2, e3):
        s = (self.pairing(self.courant(e1, e2), e3) + self.pairing(self.courant(e2, e3), e1)
             + self.pairing(self.courant(e3, e1), e2))
        return s.scale(Fraction(1, 6))

    def constant_sections(self):
        return ([("x" + l, self.const_x(j)) for j, l in enumerate(self.L.g0.labels)]
                + [("xi" + l, self.const_xi(j)) for j, l in enumerate(self.L.g0.labels)])

    def linear_sections(self):
        out = []
        for i, a in enumerate(self.L.gm1.labels):
            ai = self.ring.gen(i)
            for name, s in self.constant_sections():
                out.append((f"{a}*{name}", s.times(ai)))
        return out

    def test_functions(self):
        R = self.ring
        fs = [(l, R.gen(i)) for i, l in enumerate(self.L.gm1.labels)]
        fs += [(f"{self.L.gm1.labels[i]}*{self.L.gm1.labels[j]}", R.gen(i) * R.gen(j))
               for i in range(self.n1) for j in range(i, self.n1)]
        return fs


def _sec_defect(s: Section):
    return tuple(v for p in s.x + s.xi for v in p.terms.values())


def verify_courant(C: CourantData, linear=True) -> AxiomReport:
    rp = AxiomReport()
    S = C.constant_sections()
    triples_src = S + (C.linear_sections() if linear else [])
    half = Fraction(1, 2)

    def axioms(names, e1, e2, e3, full=True):
        # (1)
        lhs = (C.courant(C.courant(e1, e2), e3) + C.courant(C.courant(e2, e3), e1)
               + C.courant(C.courant(e3, e1), e2))
        v = lhs - C.Dop(C.T(e1, e2, e3))
        if not v.is_zero():
            rp.add("1", names, _sec_defect(v))
        # (5)
        lhs5 = C.apply_vf(C.anchor(e1), C.pairing(e2, e3))
        rhs5 = (C.pairing(C.courant(e1, e2) + C.Dop(C.pairing(e1, e2)).scale(half), e3)
                + C.pairing(e2, C.courant(e1, e3) + C.Dop(C.pairing(e1, e3)).scale(half)))
        if lhs5 != rhs5:
            rp.add("5", names, tuple((lhs5 - rhs5).terms.values()))
        # Dorfman Jacobi
        dj = C.dorfman(e1, C.dorfman(e2, e3)) - C.dorfman(C.dorfman(e1, e2), e3) \
            - C.dorfman(e2, C.dorfman(e1, e3))
        if not dj.is_zero():
            rp.add("dorfman_jacobi", names, _sec_defect(dj))

    for (n1, e1), (n2, e2), (n3, e3) in itertools.product(S, S, S):
        axioms((n1, n2, n3), e1, e2, e3)
    if linear:
        LS = C.linear_sections()
        for (n1, e1) in LS:
            for (n2, e2), (n3, e3) in itertools.product(S, S):
                for perm in ((0, 1, 2), (1, 0, 2), (1, 2, 0)):
                    es = [(n1, e1), (n2, e2), (n3, e3)]
                    es = [es[p] for p in perm]
                    axioms(tuple(n for n, _ in es), *[e for _, e in es])
    pool = S + (C.linear_sections() if linear else [])
    for (n1, e1), (n2, e2) in itertools.product(pool, pool):
        # (2)
        v = tuple(a - b for a, b in zip(C.anchor(C.courant(e1, e2)),
                                        C.vf_bracket(C.anchor(e1), C.anchor(e2))))
        if any(not p.is_zero() for p in v):
            rp.add("2", (n1, n2), tuple(c for p in v for c in p.terms.values()))
        # skew symmetry of the Courant bracket
        sk = C.courant(e1, e2) + C.courant(e2, e1)
        if not sk.is_zero():
            rp.add("skew", (n1, n2), _sec_defect(sk))
        # (3)
        for nf, f in C.test_functions():
            lhs = C.courant(e1, e2.times(f))
            rhs = (C.courant(e1, e2).times(f) + e2.times(C.apply_vf(C.anchor(e1), f))
                   - C.Dop(f).times(C.pairing(e1, e2)).scale(half))
            if not (lhs - rhs).is_zero():
                rp.add("3", (n1, n2, nf), _sec_defect(lhs - rhs))
    # (4)
    fs = C.test_functions()
    for (nf, f), (ng, g) in itertools.product(fs, fs):
        v = C.pairing(C.Dop(f), C.Dop(g))
        if not v.is_zero():
            rp.add("4", (nf, ng), tuple(v.terms.values()))
    for nf, f in fs:
        v = C.anchor(C.Dop(f))
        if any(not p.is_zero() for p in v):
            rp.add("4", (nf,), tuple(c for p in v for c in p.terms.values()))
    return rp.finish()


def build_courant(L: Lie2Algebra, check=True, linear=True) -> CourantData:
    C = CourantData(L)
    if check:
        C.report = verify_courant(C, linear)
    return C


# ------------------------------------------------------ quasi-Poisson data

@dataclass
class QuasiPoissonData:
    L: Lie2Algebra
    ring: PolyRing          # coordinates x_j on g0^* and a_i on g-1^*, all even
    Pi: dict                # (u, v) generator indices -> polynomial
    phi: dict               # sorted triples of g0 indices -> linear polynomial in a
    skew: AxiomReport = None

    def bracket(self, f: GradedPoly, g: GradedPoly) -> GradedPoly:
        out = self.ring.zero()
        n = self.ring.n
        for u in range(n):
            fu = f.deriv(u)
            if fu.is_zero():
                continue
            for v in range(n):
                p = self.Pi.get((u, v))
                if p is None or p.is_zero():
                    continue
                out = out + fu * g.deriv(v) * p
        return out


def build_quasi_poisson(L: Lie2Algebra) -> QuasiPoissonData:
    n0, n1 = L.dims
    R = PolyRing(tuple("X." + l for l in L.g0.labels) + tuple("A." + l for l in L.gm1.labels),
                 (0,) * (n0 + n1))
    linx = lambda v: R.linear(v, 0)
    lina = lambda v: R.linear(v, n0)
    Pi = {}
    for j in range(n0):
        for k in range(n0):
            Pi[(j, k)] = -linx(L.br(j, k))
        for i in range(n1):
            Pi[(j, n0 + i)] = -lina(L.act(j, i))
            Pi[(n0 + i, j)] = lina(L.act(j, i))
    for i in range(n1):
        for k in range(n1):
            # -[da, b] = -act(da, b)
            Pi[(n0 + i, n0 + k)] = -lina(L.act(L.d.column(i), k))
    phi = {(j, k, l): -lina(L.jac(j, k, l)) for j, k, l in itertools.combinations(range(n0), 3)}
    Q_ = QuasiPoissonData(L, R, Pi, phi)
    rp = AxiomReport()
    n = n0 + n1
    for u in range(n):
        for v in range(u, n):
            s = Pi[(u, v)] + Pi[(v, u)]
            if not s.is_zero():
                rp.add("skew", (R.labels[u], R.labels[v]), tuple(s.terms.values()))
    Q_.skew = rp.finish()
    return Q_


def check_pi_table(Qd: QuasiPoissonData) -> AxiomReport:
    """Pi(dx,dy) = -[x,y], Pi(dx,da) = -[x,a], Pi(da,db) = -[da,b] through the
    bracket of linear functions."""
    L, R = Qd.L, Qd.ring
    n0, n1 = L.dims
    rp = AxiomReport()
    X = [R.gen(j) for j in range(n0)]
    A = [R.gen(n0 + i) for i in range(n1)]
    for j in range(n0):
        for k in range(n0):
            if Qd.bracket(X[j], X[k]) != -R.linear(L.br(j, k), 0):
                rp.add("xy", (L.g0.labels[j], L.g0.labels[k]), (ONE,))
        for i in range(n1):
            if Qd.bracket(X[j], A[i]) != -R.linear(L.act(j, i), n0):
                rp.add("xa", (L.g0.labels[j], L.gm1.labels[i]), (ONE,))
    for i in range(n1):
        for k in range(n1):
            if Qd.bracket(A[i], A[k]) != -R.linear(L.act(L.d.column(i), k), n0):
                rp.add("ab", (L.gm1.labels[i], L.gm1.labels[k]), (ONE,))
    return rp.finish()


def quasi_poisson_identity(Qd: QuasiPoissonData):
    """Optional check of 1/2 [Pi, Pi] = phi_left - phi_right on linear functions.

    Uses the Jacobiator of the Pi-bracket for 1/2 [Pi, Pi] and, for the
    invariant extensions of a constant section u of the action algebroid,
    the right-invariant field (u, 0) and the left-invariant field (u, -d^* u);
    the coefficients are read at t(g) and s(g) respectively.  Returns
    "holds" if the identity holds in this convention, "indeterminate" if it
    holds only after flipping the overall sign or the left/right roles, and
    "fails" otherwise."""
    L, R = Qd.L, Qd.ring
    n0, n1 = L.dims
    n = n0 + n1
    gens = [R.gen(u) for u in range(n)]

    def jac(u, v, w):
        f, g, h = gens[u], gens[v], gens[w]
        return (Qd.bracket(Qd.bracket(f, g), h) + Qd.bracket(Qd.bracket(g, h), f)
                + Qd.bracket(Qd.bracket(h, f), g))

    # vector fields of the invariant extensions of the basis sections e_k of g0^*
    right = [{k: R.const(1)} for k in range(n0)]
    left = []
    for k in range(n0):
        vf = {k: R.const(1)}
        for i in range(n1):
            c = L.d.column(i)[k]
            if c != 0:
                vf[n0 + i] = R.const(-c)
        left.append(vf)
    # coefficient functions: l3 values are linear in a; at t(g) substitute a -> a + (d a)(x)
    def at_target(p):
        out = R.zero()
        for e, c in p.terms.items():
            i = next((t - n0 for t in range(n0, n) if e[t]), None)
            if i is None:
                out = out + R.const(c)
                continue
            out = out + (gens[n0 + i] + R.linear(L.d.column(i), 0)).scale(c)
        return out

    def trivector(fields, coeff_map):
        """Evaluate sum phi^{jkl} V_j ^ V_k ^ V_l on (du, dv, dw)."""
        def ev(u, v, w):
            out = R.zero()
            for (j, k, l), p in Qd.phi.items():
                c = coeff_map(p)
                Vs = [fields[j], fields[k], fields[l]]
                # determinant of V_r(coordinate s)
                det = R.zero()
                for perm in itertools.permutations(range(3)):
                    sgn = _perm_parity(perm)
                    term = R.const(sgn)
                    for r, s in zip(range(3), perm):
                        term = term * Vs[r].get((u, v, w)[s], R.zero())
                    det = det + term
                out = out + c * det
            return out
        return ev

    phiL = trivector(left, lambda p: p)
    phiR = trivector(right, at_target)
    results = {}
    for sgn, swap in itertools.product((1, -1), (False, True)):
        ok = True
        for u, v, w in itertools.combinations(range(n), 3):
            lhs = jac(u, v, w).scale(Fraction(sgn, 1))
            rhs = (phiR(u, v, w) - phiL(u, v, w)) if swap else (phiL(u, v, w) - phiR(u, v, w))
            if lhs != rhs:
                ok = False
                break
        results[(sgn, swap)] = ok
    if results[(1, False)]:
        return "holds", results
    if any(results.values()):
        return "indeterminate", results
    return "fails", results


def _perm_parity(perm):
    s = 1
    p = list(perm)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s
