"""Integration layer: the star monoid on Hom(g0, g-1), the automorphism 2-group
Aut(g) as a group crossed module, strict 2-group operations on H x G, and
first-order differentiation back to Der(g)."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .derdef import DualScalar, lam_part, Der2Algebra, build_Der, dbar, der_bracket, dual_algebra
from .exactlin import (FinSpace, LinMap, MultiTensor, ONE, Q, SingularMapError, ZERO, alt,
                       inverse_matrix, nullspace, random_matrix, unit, vadd, vneg, vsub, vsum)
from .lie2core import AxiomReport, Hom2, Lie2Algebra, compose, invert, verify_hom

SAMPLES = 64


class CompositionError(ValueError):
    """Groupoid multiplication of a non-composable pair."""


# ------------------------------------------------------------- star monoid

@dataclass(frozen=True)
class StarElement:
    L: Lie2Algebra
    tau: LinMap

    def __eq__(self, other):
        return isinstance(other, StarElement) and self.tau.matrix == other.tau.matrix

    def __hash__(self):
        return hash(self.tau.matrix)


def star_zero(L) -> StarElement:
    return StarElement(L, LinMap.zero(L.g0, L.gm1))


def star(t1: StarElement, t2: StarElement) -> StarElement:
    """tau * tau' = tau + tau' + tau d tau'."""
    if t1.L.dims != t2.L.dims:
        raise ValueError("star elements over different algebras")
    return StarElement(t1.L, t1.tau + t2.tau + t1.tau @ t1.L.d @ t2.tau)


def is_unit(t: StarElement):
    """(True, inverse) when id + d tau is invertible, else (False, None)."""
    L = t.L
    M = LinMap.identity(L.g0) + L.d @ t.tau
    try:
        M.inverse()
    except SingularMapError:
        return False, None
    # sigma = -(id + tau d)^{-1} tau solves tau * sigma = 0
    N = LinMap.identity(L.gm1) + t.tau @ L.d
    sigma = -(N.inverse() @ t.tau)
    s = StarElement(L, sigma)
    z = star_zero(L)
    if star(t, s) != z or star(s, t) != z:
        raise ArithmeticError("star inverse failed")
    return True, s


def l_tau(L: Lie2Algebra, tau: LinMap) -> MultiTensor:
    """tau[x,y] - [x,tau y] - [tau x,y] - [tau x, d tau y]."""
    dt = L.d @ tau

    def f(x, y):
        tx, ty = tau.column(x), tau.column(y)
        return vsum([tau(L.br(x, y)), vneg(L.act(x, ty)), L.act(y, tx),
                     L.act(dt.column(y), tx)], L.gm1.dim)

    return MultiTensor.from_function([alt(L.g0, 2)], L.gm1, f)


def partial_map(t: StarElement, check_unit=True) -> Hom2:
    L = t.L
    if check_unit and not is_unit(t)[0]:
        raise ValueError("partial map needs a unit of the star monoid")
    return Hom2(L, L, LinMap.identity(L.g0) + L.d @ t.tau,
                LinMap.identity(L.gm1) + t.tau @ L.d, l_tau(L, t.tau))


def aut_action(A: Hom2, t: StarElement) -> StarElement:
    """A . tau = A1 tau A0^{-1}."""
    return StarElement(t.L, A.phi1 @ t.tau @ A.phi0.inverse("A0"))


def hom_equal(a: Hom2, b: Hom2) -> bool:
    return (a.phi0.matrix == b.phi0.matrix and a.phi1.matrix == b.phi1.matrix
            and (a.phi2 - b.phi2).is_zero())


def is_automorphism(A: Hom2) -> bool:
    if not verify_hom(A).passed:
        return False
    try:
        A.phi0.inverse()
        A.phi1.inverse()
    except SingularMapError:
        return False
    return True


# ----------------------------------------------------------- sampling Aut

def _closed_phi2_basis(L: Lie2Algebra):
    """phi2 with (id, id, phi2) an automorphism: d phi2 = 0, phi2(x, da) = 0 and
    sum_cp [x, phi2(y,z)] - phi2([x,y], z) = 0 (a linear system)."""
    blocks = [alt(L.g0, 2)]
    tmpl = MultiTensor(blocks, L.gm1)
    nvar = len(tmpl.flat())
    cols = []
    for j in range(nvar):
        p2 = MultiTensor.from_flat(blocks, L.gm1, unit(nvar, j))
        h = Hom2(L, L, LinMap.identity(L.g0), LinMap.identity(L.gm1), p2)
        cols.append(_hom_defect(h, L))
    nrows = len(cols[0]) if cols else 0
    rows = [tuple(c[i] for c in cols) for i in range(nrows)]
    base = _hom_defect(Hom2.identity(L), L)
    # identity has zero defect, and the defect is linear in phi2 here
    assert all(c == 0 for c in base)
    Z = nullspace(rows, nvar) if rows else [unit(nvar, i) for i in range(nvar)]
    return [MultiTensor.from_flat(blocks, L.gm1, z) for z in Z]


def _hom_defect(h: Hom2, L):
    g = L
    p2 = h.phi2
    n0, n1 = L.dims
    out = []
    for x in range(n0):
        for y in range(x + 1, n0):
            out += list(L.d(p2(x, y)))
    for x in range(n0):
        for a in range(n1):
            out += list(p2(x, L.d.column(a)))
    for x in range(n0):
        for y in range(x + 1, n0):
            for z in range(y + 1, n0):
                out += list(vsum([L.act(x, p2(y, z)), L.act(y, p2(z, x)), L.act(z, p2(x, y)),
                                  vneg(p2(L.br(x, y), z)), vneg(p2(L.br(y, z), x)),
                                  vneg(p2(L.br(z, x), y))], n1))
    return out


class AutSampler:
    """Seeded sampler of units of the star monoid and of automorphisms."""

    def __init__(self, L: Lie2Algebra, seed=0):
        self.L = L
        self.rng = random.Random(seed)
        self.phi2_basis = _closed_phi2_basis(L)

    def tau(self):
        n0, n1 = self.L.dims
        return StarElement(self.L, LinMap(self.L.g0, self.L.gm1,
                                          random_matrix(self.rng, n1, n0, -2, 2, 0.6)))

    def unit(self):
        for _ in range(200):
            t = self.tau()
            if is_unit(t)[0]:
                return t
        return star_zero(self.L)

    def unipotent(self):
        L = self.L
        p2 = MultiTensor([alt(L.g0, 2)], L.gm1)
        for b in self.phi2_basis:
            p2 = p2 + b.scale(Q(self.rng.randint(-2, 2)))
        return Hom2(L, L, LinMap.identity(L.g0), LinMap.identity(L.gm1), p2)

    def aut(self):
        A = Hom2.identity(self.L)
        for _ in range(self.rng.randint(1, 3)):
            B = partial_map(self.unit()) if self.rng.random() < 0.6 else self.unipotent()
            if self.rng.random() < 0.3:
                B = invert(B)
            A = compose(B, A)
        return A


# ------------------------------------------------- group crossed modules

@dataclass
class GroupCrossedModuleOps:
    h_mul: Callable
    h_inv: Callable
    h_unit: Any
    g_mul: Callable
    g_inv: Callable
    g_unit: Any
    Phi: Callable
    act: Callable
    h_eq: Callable
    g_eq: Callable
    sample_h: Callable
    sample_g: Callable
    name: str = ""


def aut_crossed_module(L: Lie2Algebra, seed=0) -> GroupCrossedModuleOps:
    S = AutSampler(L, seed)
    return GroupCrossedModuleOps(
        h_mul=star, h_inv=lambda t: is_unit(t)[1], h_unit=star_zero(L),
        g_mul=compose, g_inv=invert, g_unit=Hom2.identity(L),
        Phi=partial_map, act=aut_action,
        h_eq=lambda a, b: a == b, g_eq=hom_equal,
        sample_h=S.unit, sample_g=S.aut, name=f"Aut({L.name})")


def heisenberg_crossed_module(omega, seed=0) -> GroupCrossedModuleOps:
    """H = V + Q with (v,a)(w,b) = (v+w, a+b+omega(v,w)) over G = V."""
    n = len(omega)
    rng = random.Random(seed)
    om = lambda v, w: sum((omega[i][j] * v[i] * w[j] for i in range(n) for j in range(n)), ZERO)
    hm = lambda h, k: (tuple(a + b for a, b in zip(h[0], k[0])), h[1] + k[1] + om(h[0], k[0]))
    vec = lambda: tuple(Q(rng.randint(-3, 3)) for _ in range(n))
    return GroupCrossedModuleOps(
        h_mul=hm, h_inv=lambda h: (tuple(-a for a in h[0]), -h[1]),
        h_unit=((ZERO,) * n, ZERO),
        g_mul=lambda g, k: tuple(a + b for a, b in zip(g, k)), g_inv=lambda g: tuple(-a for a in g),
        g_unit=(ZERO,) * n, Phi=lambda h: h[0],
        act=lambda g, h: (h[0], h[1] + 2 * om(g, h[0])),
        h_eq=lambda a, b: a == b, g_eq=lambda a, b: a == b,
        sample_h=lambda: (vec(), Q(rng.randint(-3, 3))), sample_g=vec, name="Heisenberg")


def verify_group_cm(ops: GroupCrossedModuleOps, samples=SAMPLES) -> AxiomReport:
    rp = AxiomReport()
    H, G = ops.sample_h, ops.sample_g
    he, ge = ops.h_eq, ops.g_eq
    hm, gm = ops.h_mul, ops.g_mul

    def chk(name, i, ok):
        if not ok:
            rp.add(name, (f"sample{i}",), (ONE,))

    for i in range(samples):
        h1, h2, h3 = H(), H(), H()
        chk("H.assoc", i, he(hm(hm(h1, h2), h3), hm(h1, hm(h2, h3))))
        chk("H.unit", i, he(hm(ops.h_unit, h1), h1) and he(hm(h1, ops.h_unit), h1))
        chk("H.inverse", i, he(hm(h1, ops.h_inv(h1)), ops.h_unit))
        g1, g2, g3 = G(), G(), G()
        chk("G.assoc", i, ge(gm(gm(g1, g2), g3), gm(g1, gm(g2, g3))))
        chk("G.unit", i, ge(gm(ops.g_unit, g1), g1) and ge(gm(g1, ops.g_unit), g1))
        chk("G.inverse", i, ge(gm(g1, ops.g_inv(g1)), ops.g_unit))
        chk("Phi.hom", i, ge(ops.Phi(hm(h1, h2)), gm(ops.Phi(h1), ops.Phi(h2))))
        chk("act.hom_G", i, he(ops.act(gm(g1, g2), h1), ops.act(g1, ops.act(g2, h1))))
        chk("act.unit", i, he(ops.act(ops.g_unit, h1), h1))
        chk("act.by_aut", i, he(ops.act(g1, hm(h1, h2)), hm(ops.act(g1, h1), ops.act(g1, h2))))
        chk("equivariance", i, ge(ops.Phi(ops.act(g1, h1)),
                                  gm(gm(g1, ops.Phi(h1)), ops.g_inv(g1))))
        chk("peiffer", i, he(ops.act(ops.Phi(h1), h2), hm(hm(h1, h2), ops.h_inv(h1))))
    return rp.finish()


# ----------------------------------------------------------- strict 2-group

class TwoGroup:
    """The strict 2-group H x G over G of a group crossed module."""

    def __init__(self, ops: GroupCrossedModuleOps):
        self.ops = ops

    def s(self, e):
        return e[1]

    def t(self, e):
        return self.ops.g_mul(self.ops.Phi(e[0]), e[1])

    def iota(self, g):
        return (self.ops.h_unit, g)

    def product(self, e1, e2):
        o = self.ops
        return (o.h_mul(e1[0], o.act(e1[1], e2[0])), o.g_mul(e1[1], e2[1]))

    def product_inverse(self, e):
        o = self.ops
        gi = o.g_inv(e[1])
        return (o.act(gi, o.h_inv(e[0])), gi)

    def compose(self, e1, e2):
        """Groupoid multiplication e1 . e2, defined when s(e1) = t(e2)."""
        if not self.ops.g_eq(self.s(e1), self.t(e2)):
            raise CompositionError("source of the first arrow differs from target of the second")
        return (self.ops.h_mul(e1[0], e2[0]), e2[1])

    def groupoid_inverse(self, e):
        return (self.ops.h_inv(e[0]), self.t(e))

    def eq(self, a, b):
        return self.ops.h_eq(a[0], b[0]) and self.ops.g_eq(a[1], b[1])

    def arrow_into(self, g):
        """A random arrow with target g."""
        h = self.ops.sample_h()
        return (h, self.ops.g_mul(self.ops.g_inv(self.ops.Phi(h)), g))


def two_group_ops(ops: GroupCrossedModuleOps) -> TwoGroup:
    return TwoGroup(ops)


def verify_two_group(T: TwoGroup, samples=SAMPLES) -> AxiomReport:
    rp = AxiomReport()
    o = T.ops

    def chk(name, i, ok):
        if not ok:
            rp.add(name, (f"sample{i}",), (ONE,))

    def arrow():
        return (o.sample_h(), o.sample_g())

    for i in range(samples):
        e1, e2, e3 = arrow(), arrow(), arrow()
        chk("product.assoc", i, T.eq(T.product(T.product(e1, e2), e3),
                                     T.product(e1, T.product(e2, e3))))
        chk("product.inverse", i, T.eq(T.product(e1, T.product_inverse(e1)),
                                       T.iota(o.g_unit)))
        chk("s.hom", i, o.g_eq(T.s(T.product(e1, e2)), o.g_mul(T.s(e1), T.s(e2))))
        chk("t.hom", i, o.g_eq(T.t(T.product(e1, e2)), o.g_mul(T.t(e1), T.t(e2))))
        # composable chains c . b . a
        a = arrow()
        b = (o.sample_h(), T.t(a))
        c = (o.sample_h(), T.t(b))
        chk("compose.assoc", i, T.eq(T.compose(T.compose(c, b), a), T.compose(c, T.compose(b, a))))
        chk("compose.source_target", i, o.g_eq(T.s(T.compose(b, a)), T.s(a))
            and o.g_eq(T.t(T.compose(b, a)), T.t(b)))
        chk("compose.unit", i, T.eq(T.compose(T.iota(T.t(a)), a), a)
            and T.eq(T.compose(a, T.iota(T.s(a))), a))
        chk("compose.inverse", i, T.eq(T.compose(T.groupoid_inverse(a), a), T.iota(T.s(a))))
        chk("iota.hom", i, T.eq(T.iota(o.g_mul(a[1], b[1])),
                                T.product(T.iota(a[1]), T.iota(b[1]))))
        # interchange: (b.a) * (d.c) = (b*d).(a*c)
        cc = arrow()
        dd = (o.sample_h(), T.t(cc))
        lhs = T.product(T.compose(b, a), T.compose(dd, cc))
        rhs = T.compose(T.product(b, dd), T.product(a, cc))
        chk("interchange", i, T.eq(lhs, rhs))
    return rp.finish()


# ----------------------------------------------- differentiation over duals

def _nv(c, i):
    if isinstance(c, Nil2):
        return c.v[i]
    return c if i == 0 else ZERO


class Nil2:
    """a + b lam + c mu + e lam mu with lam^2 = mu^2 = 0."""

    __slots__ = ("v",)

    def __init__(self, a=0, b=0, c=0, e=0, _raw=None):
        self.v = _raw if _raw is not None else tuple(Q(x) for x in (a, b, c, e))

    def __add__(self, o):
        if isinstance(o, Nil2):
            p = o.v
            return Nil2(_raw=(self.v[0] + p[0], self.v[1] + p[1], self.v[2] + p[2],
                              self.v[3] + p[3]))
        if isinstance(o, (int, Fraction)):
            a, b, c, e = self.v
            return Nil2(_raw=(a + o, b, c, e))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Nil2(_raw=tuple(-p for p in self.v))

    def __sub__(self, o):
        if isinstance(o, (Nil2, int, Fraction)):
            return self + (-o)
        return NotImplemented

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            if o == 0:
                return Nil2(_raw=(ZERO,) * 4)
            return Nil2(_raw=tuple(p * o for p in self.v))
        if not isinstance(o, Nil2):
            return NotImplemented
        a, b, c, e = self.v
        p, q, r, s = o.v
        return Nil2(_raw=(a * p, a * q + b * p, a * r + c * p, a * s + e * p + b * r + c * q))

    __rmul__ = __mul__

    def __eq__(self, o):
        if isinstance(o, Nil2):
            return self.v == o.v
        if isinstance(o, (int, Fraction)):
            v = self.v
            return v[0] == o and v[1] == 0 and v[2] == 0 and v[3] == 0
        return False

    def __hash__(self):
        return hash(self.v)

    def __repr__(self):
        return "Nil2" + repr(tuple(str(x) for x in self.v))


def _lift_map(f: LinMap, ring):
    return LinMap(f.source, f.target, [[ring(c) for c in r] for r in f.matrix])


def _lift_tensor(t: MultiTensor, ring):
    return MultiTensor(t.blocks, t.output,
                       {k: tuple(ring(c) for c in v) for k, v in t.data.items()})


def _over(L: Lie2Algebra, ring):
    return Lie2Algebra(L.g0, L.gm1, _lift_map(L.d, ring), _lift_tensor(L.l2_00, ring),
                       _lift_tensor(L.l2_01, ring), _lift_tensor(L.l3, ring), L.name)


def _eps_map(f: LinMap, slot):
    def c(x):
        v = [0, 0, 0, 0]
        v[slot] = x
        return Nil2(*v)
    return LinMap(f.source, f.target, [[c(x) for x in r] for r in f.matrix])


def _unipotent(L, X0, X1, lX, slot):
    """Id + eps (X0, X1, lX) with eps = lam (slot 1) or mu (slot 2)."""
    I0 = _lift_map(LinMap.identity(L.g0), Nil2)
    I1 = _lift_map(LinMap.identity(L.gm1), Nil2)
    e2 = _eps_map(LinMap(L.g0, L.g0, X0.matrix), slot)
    e3 = _eps_map(LinMap(L.gm1, L.gm1, X1.matrix), slot)

    def c(x):
        v = [0, 0, 0, 0]
        v[slot] = x
        return Nil2(*v)

    p2 = MultiTensor(lX.blocks, lX.output, {k: tuple(c(x) for x in v)
                                            for k, v in lX.data.items()})
    Ln = _over(L, Nil2)
    return Hom2(Ln, Ln, I0 + e2, I1 + e3, p2)


def _nil_invert(A: Hom2) -> Hom2:
    """Inverse of a unipotent map over Nil2 (id + N with N in the nilpotent ideal)."""
    def inv(M: LinMap):
        I = _lift_map(LinMap.identity(M.source), Nil2)
        N = M - I
        return I - N + N @ N
    i0, i1 = inv(A.phi0), inv(A.phi1)
    c2 = MultiTensor.from_function(
        [alt(A.target.g0, 2)], A.source.gm1,
        lambda x, y: vneg(i1(A.phi2(i0.column(x), i0.column(y)))))
    return Hom2(A.target, A.source, i0, i1, c2)


@dataclass
class DifferentiationReport:
    dbar_ok: bool
    action_ok: bool
    bracket_ok: bool
    derivations_are_tangent: bool
    report: AxiomReport


def differentiate_aut(L: Lie2Algebra, D: Der2Algebra = None) -> DifferentiationReport:
    """Recover d-bar, the Der0 action on Der-1 and the Der0 bracket from curves
    through the identity of Aut(L) realized over nilpotent scalars."""
    D = D or build_Der(L)
    rp = AxiomReport()
    n = D.ds.dim
    nT = D.algebra.gm1.dim
    Ld = dual_algebra(L)
    lam = lambda c: DualScalar(0, c)
    # d-bar from partial(lam Theta)
    for T in range(nT):
        th = D.theta(T)
        curve = StarElement(Ld, LinMap(L.g0, L.gm1, [[lam(c) for c in r] for r in th.matrix]))
        P = partial_map(curve, check_unit=False)
        X0, X1, lX = dbar(L, th)
        got0 = tuple(lam_part(r) for r in P.phi0.matrix)
        got1 = tuple(lam_part(r) for r in P.phi1.matrix)
        got2 = MultiTensor(P.phi2.blocks, L.gm1,
                           {k: lam_part(v) for k, v in P.phi2.data.items()})
        ok = (got0 == tuple(X0.matrix) and got1 == tuple(X1.matrix)
              and (got2 - lX).is_zero())
        if not ok:
            rp.add("dbar", (D.algebra.gm1.labels[T],), (ONE,))
    # tangent vectors: Id + lam X is an automorphism mod lam^2
    tangent = True
    for i in range(n):
        B = D.ds.basis[i]
        A = _unipotent(L, B.X0, B.X1, B.lX, 1)
        if not verify_hom(A).passed:
            tangent = False
            rp.add("tangent", (D.algebra.g0.labels[i],), (ONE,))
        # action on tau: A1 tau A0^{-1}
        Ai = _nil_invert(A)
        for T in range(nT):
            th = D.theta(T)
            tau = _lift_map(th, Nil2)
            conj = A.phi1 @ tau @ Ai.phi0
            got = tuple(_nv(c, 1) for r in conj.matrix for c in r)
            want = D.theta_coords(B.X1 @ th - th @ B.X0)
            if got != want:
                rp.add("action", (D.algebra.g0.labels[i], D.algebra.gm1.labels[T]), (ONE,))
    # brackets from group commutators
    lamA = [_unipotent(L, B.X0, B.X1, B.lX, 1) for B in D.ds.basis]
    muA = [_unipotent(L, B.X0, B.X1, B.lX, 2) for B in D.ds.basis]
    lamI = [_nil_invert(A) for A in lamA]
    muI = [_nil_invert(A) for A in muA]
    for i in range(n):
        for j in range(i + 1, n):
            Bi, Bj = D.ds.basis[i], D.ds.basis[j]
            C = compose(compose(compose(lamA[i], muA[j]), lamI[i]), muI[j])
            X0 = LinMap(L.g0, L.g0, [[_nv(c, 3) for c in r] for r in C.phi0.matrix])
            X1 = LinMap(L.gm1, L.gm1, [[_nv(c, 3) for c in r] for r in C.phi1.matrix])
            lX = MultiTensor(C.phi2.blocks, L.gm1,
                             {k: tuple(_nv(c, 3) for c in v) for k, v in C.phi2.data.items()})
            W0, W1, Wl = der_bracket(L, Bi, Bj)
            if not (X0 == W0 and X1 == W1 and (lX - Wl).is_zero()):
                rp.add("bracket", (D.algebra.g0.labels[i], D.algebra.g0.labels[j]), (ONE,))
    rp.finish()
    fails = set(rp.axioms_failed())
    return DifferentiationReport("dbar" not in fails, "action" not in fails,
                                 "bracket" not in fails, tangent, rp)
