"""Crossed modules of Lie 2-algebras, the canonical Der example, the 4-term
sequence, and the Gerstenhaber class of a Lie algebra crossed module."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .cohomology import (Complex2, Rep2, classical_ce_matrix, classical_is_coboundary,
                         classical_is_cocycle, classical_apply, verify_rep)
from .constructions import (ActionByDerivations, LieAlgebra, LieCrossedModule,
                            canonical_action, crossed_product)
from .exactlin import (DimensionError, FinSpace, LinMap, MultiTensor, ONE, Q, ZERO, alt,
                       complement, image, independent_subset, is_zero, kernel, nullspace,
                       plain, quotient, solve_membership, span, unit, vadd, vneg, vscale,
                       vsub, vsum)
from .lie2core import (AxiomError, AxiomReport, Hom2, Lie2Algebra, _check, verify_hom,
                       verify_l2a)


class InternalInconsistency(RuntimeError):
    """An induced structure that should verify did not."""


@dataclass
class CrossedModule2:
    m: Lie2Algebra
    g: Lie2Algebra
    action: ActionByDerivations
    Pi: Hom2

    @property
    def product(self):
        return self.Pi.source

    # pieces of Pi
    def phi0(self, a):
        n0 = self.g.g0.dim
        return self.Pi.phi0.column(n0 + a)

    def phi1(self, a):
        n1 = self.g.gm1.dim
        return self.Pi.phi1.column(n1 + a)

    def sigma(self, x, a):
        """Pi2 on g0 x m0."""
        return self.Pi.phi2(x, self.g.g0.dim + a)

    def varphi(self):
        m, g = self.m, self.g
        return (LinMap.from_function(m.g0, g.g0, self.phi0),
                LinMap.from_function(m.gm1, g.gm1, self.phi1))

    def is_strong(self):
        n0, k0 = self.g.g0.dim, self.m.g0.dim
        return all(is_zero(self.sigma(x, a)) for x in range(n0) for a in range(k0))


def build_cm2(m, g, action, phi0: LinMap, phi1: LinMap, sigma, name="cp") -> CrossedModule2:
    """Assemble Pi = Id + sigma + varphi with varphi2(a,b) = sigma(varphi0 a, b).

    ``sigma(x, a)`` returns a vector in g-1 for basis indices x of g0, a of m0."""
    P = crossed_product(g, m, action, name, check=False)
    n0, n1 = g.dims
    k0, k1 = m.dims
    P0 = LinMap.from_function(P.g0, g.g0, lambda i: unit(n0, i) if i < n0
                              else phi0.column(i - n0))
    P1 = LinMap.from_function(P.gm1, g.gm1, lambda i: unit(n1, i) if i < n1
                              else phi1.column(i - n1))
    sig = MultiTensor.from_function([plain(g.g0), plain(m.g0)], g.gm1, sigma)

    def p2(i, j):
        if i < n0 and j < n0:
            return (ZERO,) * n1
        if i < n0:
            return sig(i, j - n0)
        if j < n0:
            return vneg(sig(j, i - n0))
        return sig(phi0.column(i - n0), j - n0)

    P2 = MultiTensor.from_function([alt(P.g0, 2)], g.gm1, p2)
    return CrossedModule2(m, g, action, Hom2(P, g, P0, P1, P2))


def verify_cm2(cm: CrossedModule2, components=True) -> AxiomReport:
    rp = AxiomReport()
    m, g, act = cm.m, cm.g, cm.action
    r = act.rep
    P = cm.product
    n0, n1 = g.dims
    k0, k1 = m.dims
    if (P.g0.dim, P.gm1.dim) != (n0 + k0, n1 + k1) or cm.Pi.target.dims != g.dims:
        raise DimensionError("Pi must map the crossed product onto g")
    if components:
        rp.merge(verify_l2a(m), prefix="m.")
        rp.merge(verify_l2a(g), prefix="g.")
        rp.merge(act.verify(), prefix="action.")
        rp.merge(verify_hom(cm.Pi), prefix="Pi.")
    ml0, ml1, gl0 = m.g0.labels, m.gm1.labels, g.g0.labels
    Pi = cm.Pi
    # Pi restricted to g is the identity
    for x in range(n0):
        _check(rp, "Pi_g", (gl0[x],), vsub(Pi.phi0.column(x), unit(n0, x)))
        for y in range(x + 1, n0):
            _check(rp, "Pi_g", (gl0[x], gl0[y]), Pi.phi2(x, y))
    for a in range(n1):
        _check(rp, "Pi_g", (g.gm1.labels[a],), vsub(Pi.phi1.column(a), unit(n1, a)))
    P0 = [cm.phi0(a) for a in range(k0)]
    P1 = [cm.phi1(a) for a in range(k1)]
    # (i)
    for a in range(k0):
        for b in range(k0):
            _check(rp, "i", (ml0[a], ml0[b]), vsub(m.br(a, b), r.a0(P0[a], b)))
        for u in range(k1):
            _check(rp, "i", (ml0[a], ml1[u]), vsub(m.act(a, u), r.a1(P0[a], u)))
            _check(rp, "i", (ml1[u], ml0[a]), vadd(m.act(a, u), r.b(P1[u], a)))
    # (ii)
    for a in range(k0):
        for b in range(k0):
            s = Pi.phi2(P0[a], n0 + b) if n0 else ()
            for c in range(k0):
                rhs = vneg(vadd(r.c(P0[a], P0[b], c), r.b(s, c) if n1 else (ZERO,) * k1))
                _check(rp, "ii", (ml0[a], ml0[b], ml0[c]), vsub(m.jac(a, b, c), rhs))
    # (iii)
    for x in range(n0):
        for b in range(k0):
            s = cm.sigma(x, b)
            for c in range(k0):
                rhs = vneg(vadd(r.c(x, P0[b], c), r.b(s, c)))
                _check(rp, "iii", (gl0[x], ml0[b], ml0[c]), vsub(act.lphi(x, b, c), rhs))
    # (iv)
    for a in range(k0):
        for b in range(k0):
            v = Pi.phi2(n0 + a, n0 + b)
            w1 = Pi.phi2(P0[a], n0 + b) if n0 else v
            w2 = Pi.phi2(n0 + a, P0[b]) if n0 else v
            _check(rp, "iv", (ml0[a], ml0[b]), vsub(v, w1))
            _check(rp, "iv", (ml0[a], ml0[b]), vsub(v, w2))
    rp.finish()
    rp.notes["strong"] = cm.is_strong()
    return rp


def canonical_cm(L: Lie2Algebra, D=None) -> CrossedModule2:
    """(L, Der(L), Id, extended adjoint, sigma)."""
    D, action = canonical_action(L, D)
    A = D.algebra
    n0, n1 = L.dims

    def ad0(x):
        X0 = LinMap.from_function(L.g0, L.g0, lambda y: L.br(x, y))
        X1 = LinMap.from_function(L.gm1, L.gm1, lambda a: L.act(x, a))
        lX = MultiTensor.from_function([alt(L.g0, 2)], L.gm1, lambda y, z: L.jac(x, y, z))
        return D.coords(X0, X1, lX)

    def ad1(a):
        return D.theta_coords(LinMap.from_function(L.g0, L.gm1,
                                                   lambda y: vneg(L.act(y, a))))

    def sigma(X, x):
        lX = D.lX(X)
        return vneg(D.theta_coords(LinMap.from_function(L.g0, L.gm1,
                                                        lambda y: lX(x, y))))

    phi0 = LinMap.from_function(L.g0, A.g0, ad0)
    phi1 = LinMap.from_function(L.gm1, A.gm1, ad1)
    cm = build_cm2(L, A, action, phi0, phi1, sigma, name="DerL")
    cm.der = D
    return cm


def ad_bar2(cm: CrossedModule2, y, z):
    """varphi2(y, z) = Pi2 on m0 x m0."""
    n0 = cm.g.g0.dim
    return cm.Pi.phi2(n0 + y, n0 + z)


# ----------------------------------------------------------- 4-term sequence

@dataclass
class FourTermSequence:
    V: Complex2
    m: Lie2Algebra
    g: Lie2Algebra
    h: Complex2
    i: tuple            # (i0, i1)
    varphi: tuple       # (phi0, phi1)
    pi: tuple           # (pi0, pi1)
    exact: AxiomReport
    h_algebra: Lie2Algebra = None
    V_rep: Rep2 = None


def _sub_complex(ker0, ker1, d: LinMap, name):
    V0 = FinSpace.std(name + "0", ker0.dim, name.lower() + "0_")
    V1 = FinSpace.std(name + "-1", ker1.dim, name.lower() + "1_")
    cols = []
    for b in ker1.basis:
        c = solve_membership(d(b), ker0)
        if c is None:
            raise InternalInconsistency("kernel is not a subcomplex")
        cols.append(c)
    return Complex2(V0, V1, LinMap.from_columns(V1, V0, cols) if cols else LinMap.zero(V1, V0))


def four_term(cm: CrossedModule2) -> FourTermSequence:
    m, g = cm.m, cm.g
    f0, f1 = cm.varphi()
    K0, K1 = kernel(f0), kernel(f1)
    V = _sub_complex(K0, K1, m.d, "V")
    i0 = LinMap.from_columns(V.V0, m.g0, list(K0.basis))
    i1 = LinMap.from_columns(V.Vm1, m.gm1, list(K1.basis))
    h0, pi0, s0 = quotient(g.g0, image(f0), "h0")
    h1, pi1, s1 = quotient(g.gm1, image(f1), "h-1")
    hd = pi0 @ g.d @ s1
    # d_g must descend
    rp = AxiomReport()
    for v in image(f1).basis:
        _check(rp, "d_descends", (), pi0(g.d(v)))
    h = Complex2(h0, h1, hd)
    for nm, (i, f, p) in {"0": (i0, f0, pi0), "-1": (i1, f1, pi1)}.items():
        if i.rank() != i.source.dim:
            rp.add("i_injective", (nm,), (ONE,))
        if not (f @ i).is_zero() or i.rank() != kernel(f).dim:
            rp.add("exact_m", (nm,), (ONE,))
        if not (p @ f).is_zero() or f.rank() != kernel(p).dim:
            rp.add("exact_g", (nm,), (ONE,))
        if p.rank() != p.target.dim:
            rp.add("pi_surjective", (nm,), (ONE,))
    rp.finish()
    seq = FourTermSequence(V, m, g, h, (i0, i1), (f0, f1), (pi0, pi1), rp)
    if cm.is_strong():
        _induce(cm, seq, s0, s1)
    return seq


def _induce(cm, seq, s0, s1):
    g = cm.g
    r = cm.action.rep
    pi0, pi1 = seq.pi
    i0, i1 = seq.i
    h = seq.h
    K0 = Subspace_of(i0)
    K1 = Subspace_of(i1)
    hal = Lie2Algebra.from_functions(
        h.V0, h.Vm1, h.partial,
        lambda x, y: pi0(g.br(s0.column(x), s0.column(y))),
        lambda x, a: pi1(g.act(s0.column(x), s1.column(a))),
        lambda x, y, z: pi1(g.jac(s0.column(x), s0.column(y), s0.column(z))),
        "h")
    rp = verify_l2a(hal)
    if not rp.passed:
        raise InternalInconsistency(f"induced Lie 2-algebra fails {rp.axioms_failed()}")

    def back(v, K):
        c = solve_membership(v, K)
        if c is None:
            raise InternalInconsistency("induced action leaves the kernel")
        return c

    V = seq.V
    rep = Rep2.from_functions(
        hal, V,
        lambda x, u: back(r.a0(s0.column(x), i0.column(u)), K0),
        lambda x, w: back(r.a1(s0.column(x), i1.column(w)), K1),
        lambda a, u: back(r.b(s1.column(a), i0.column(u)), K1),
        lambda x, y, u: back(r.c(s0.column(x), s0.column(y), i0.column(u)), K1))
    rr = verify_rep(rep)
    if not rr.passed:
        raise InternalInconsistency(f"induced action fails {rr.axioms_failed()}")
    seq.h_algebra, seq.V_rep = hal, rep


def Subspace_of(incl: LinMap):
    from .exactlin import Subspace
    return Subspace(incl.target, tuple(incl.columns()))


# ------------------------------------------------------- Gerstenhaber class

@dataclass
class GerstenhaberClass:
    h: LieAlgebra
    V: FinSpace
    action: MultiTensor       # h (x) V -> V
    cocycle: MultiTensor      # alt^3 h -> V
    closed: bool
    section_independent: bool
    second: MultiTensor = None

    @property
    def certified(self):
        return self.closed and self.section_independent


def _lie_quotient(cm: LieCrossedModule):
    m, g, phi = cm.m, cm.g, cm.varphi
    K = kernel(phi)
    Im = image(phi)
    hs, pi, s = quotient(g.space, Im, "h")
    hb = MultiTensor.from_function([alt(hs, 2)], hs,
                                   lambda x, y: pi(g.br(s.column(x), s.column(y))))
    h = LieAlgebra(hs, hb, "h")
    Vs = FinSpace.std("V", K.dim, "v")
    incl = LinMap.from_columns(Vs, m.space, list(K.basis)) if K.dim else LinMap.zero(Vs, m.space)
    return K, Im, h, Vs, incl, pi, s


def _random_section(rng, base: LinMap, shift_space_basis, target_dim):
    """base + a random map whose columns lie in the span of ``shift_space_basis``."""
    cols = []
    for j in range(base.source.dim):
        c = base.column(j)
        for b in shift_space_basis:
            c = vadd(c, vscale(Q(rng.randint(-2, 2)), b))
        cols.append(c)
    return LinMap.from_columns(base.source, base.target, cols)


def _class_with(cm, K, Im, h, Vs, incl, s: LinMap, rho):
    """Classifying 3-cochain from a section s of pi and a lift rho of varphi."""
    m, g = cm.m, cm.g
    hs = h.space

    def lift(x):
        return s.column(x) if isinstance(x, int) else s(x)

    def beta(x, y):
        F = vsub(g.br(lift(x), lift(y)), s(h.br(x, y)))
        return rho(F)

    def theta(x, y, z):
        terms = []
        for (u, v, w) in ((x, y, z), (y, z, x), (z, x, y)):
            terms.append(cm.act(s.column(u), beta(v, w)))
            terms.append(vneg(beta(h.br(u, v), w)))
        t = vsum(terms, m.dim)
        c = solve_membership(t, K)
        if c is None:
            raise InternalInconsistency("classifying cochain leaves ker(varphi)")
        return c

    return MultiTensor.from_function([alt(hs, 3)], Vs, theta)


def _lift(phi: LinMap, Im, rng=None):
    """A linear map rho: g -> m with phi(rho(v)) = v for v in Im (zero on a complement)."""
    n = phi.target.dim
    pre = []
    for b in Im.basis:
        rows = [list(r) for r in phi.matrix]
        from .exactlin import solve
        c = solve(rows, b, phi.source.dim)
        pre.append(c)
    comp = complement(Im)
    basis = list(Im.basis) + [unit(n, i) for i in comp]
    from .exactlin import inverse_matrix
    to_adapted = inverse_matrix(tuple(tuple(b[i] for b in basis) for i in range(n)), "adapted")
    K = kernel(phi)

    def rho(v):
        coords = [sum((to_adapted[r][i] * v[i] for i in range(n)), ZERO) for r in range(len(pre))]
        out = vsum([vscale(c, p) for c, p in zip(coords, pre)], phi.source.dim)
        return out

    if rng is None:
        return rho
    # shift the lift by a random map Im -> ker(phi)
    shift = [[Q(rng.randint(-2, 2)) for _ in K.basis] for _ in pre]

    def rho2(v):
        coords = [sum((to_adapted[r][i] * v[i] for i in range(n)), ZERO) for r in range(len(pre))]
        out = rho(v)
        for r, c in enumerate(coords):
            for j, kb in enumerate(K.basis):
                out = vadd(out, vscale(c * shift[r][j], kb))
        return out

    return rho2


def gerstenhaber_class(cm: LieCrossedModule, seed=0) -> GerstenhaberClass:
    rp = cm.verify()
    if not rp.passed:
        raise AxiomError(rp, "crossed module")
    K, Im, h, Vs, incl, pi, s = _lie_quotient(cm)
    # h acts on V through any lift
    action = MultiTensor.from_function(
        [plain(h.space), plain(Vs)], Vs,
        lambda x, v: solve_membership(cm.act(s.column(x), incl.column(v)), K))
    th = _class_with(cm, K, Im, h, Vs, incl, s, _lift(cm.varphi, Im))
    closed = classical_is_cocycle(h.bracket, action, th)
    rng = random.Random(seed)
    # a second section of pi: shift by a random map h -> Im
    s2 = _random_section(rng, s, list(Im.basis), cm.g.dim)
    th2 = _class_with(cm, K, Im, h, Vs, incl, s2, _lift(cm.varphi, Im, rng))
    diff = th - th2
    indep = classical_is_cocycle(h.bracket, action, th2) and \
        classical_is_coboundary(h.bracket, action, diff)
    return GerstenhaberClass(h, Vs, action, th, closed, indep, th2)


# ------------------------------------------------------------ test families

def derivation_crossed_module(m: LieAlgebra) -> LieCrossedModule:
    """ad: m -> Der(m) with the natural action."""
    from .cohomology import classical_ce_matrix
    n = m.dim
    act = MultiTensor.from_function([plain(m.space), plain(m.space)], m.space,
                                    lambda x, y: m.br(x, y))
    rows, ncols = classical_ce_matrix(m.bracket, act, 1)
    Z = nullspace(rows, ncols) if rows else [unit(ncols, i) for i in range(ncols)]
    # flat 1-cochain (key x, output r) at position x*n + r
    mats = [LinMap(m.space, m.space, [[z[x * n + r] for x in range(n)] for r in range(n)])
            for z in Z]
    D = FinSpace.std("Der", len(mats), "D")

    def coords(A: LinMap):
        v = tuple(c for row in A.matrix for c in row)
        flat = [tuple(c for row in M.matrix for c in row) for M in mats]
        c = solve_membership(v, _Sub(len(v), flat))
        if c is None:
            raise InternalInconsistency("not a derivation")
        return c

    br = MultiTensor.from_function([alt(D, 2)], D,
                                   lambda i, j: coords(mats[i] @ mats[j] - mats[j] @ mats[i]))
    g = LieAlgebra(D, br, "Der")
    phi = LinMap.from_function(m.space, D, lambda x: coords(LinMap.from_function(
        m.space, m.space, lambda y: m.br(x, y))))
    action = MultiTensor.from_function([plain(D), plain(m.space)], m.space,
                                       lambda i, y: mats[i].column(y))
    return LieCrossedModule(m, g, phi, action)


def _Sub(n, vecs):
    from .exactlin import Subspace
    return Subspace(FinSpace.std("flat", n), tuple(vecs))


def ideal_crossed_module(g: LieAlgebra, ideal_basis) -> LieCrossedModule:
    I = span(g.space, ideal_basis)
    Is = FinSpace.std("I", I.dim, "i")
    incl = LinMap.from_columns(Is, g.space, list(I.basis))

    def back(v):
        c = solve_membership(v, I)
        if c is None:
            raise ValueError("not an ideal")
        return c

    mb = MultiTensor.from_function([alt(Is, 2)], Is,
                                   lambda a, b: back(g.br(incl.column(a), incl.column(b))))
    act = MultiTensor.from_function([plain(g.space), plain(Is)], Is,
                                    lambda x, a: back(g.br(x, incl.column(a))))
    return LieCrossedModule(LieAlgebra(Is, mb, "I"), g, incl, act)


def trivial_crossed_module(g: LieAlgebra, rho: MultiTensor) -> LieCrossedModule:
    """varphi = 0 on an abelian g-module."""
    V = rho.output
    m = LieAlgebra(V, MultiTensor([alt(V, 2)], V), "V")
    return LieCrossedModule(m, g, LinMap.zero(V, g.space), rho)


def transport_crossed_module(cm: LieCrossedModule, P: list, R: list) -> LieCrossedModule:
    """Change bases of m (by R) and g (by P)."""
    gm = cm.g.transformed(LinMap(cm.g.space, FinSpace.std("g", cm.g.dim, "y"), P), "g'")
    mm = cm.m.transformed(LinMap(cm.m.space, FinSpace.std("m", cm.m.dim, "b"), R), "m'")
    Pm = LinMap(cm.g.space, gm.space, P)
    Rm = LinMap(cm.m.space, mm.space, R)
    Pi, Ri = Pm.inverse(), Rm.inverse()
    phi = Pm @ cm.varphi @ Ri
    act = MultiTensor.from_function([plain(gm.space), plain(mm.space)], mm.space,
                                    lambda x, a: Rm(cm.act(Pi.column(x), Ri.column(a))))
    return LieCrossedModule(mm, gm, phi, act)


def random_lie_crossed_module(rng, max_dim=3) -> LieCrossedModule:
    from .randgen import random_lie, random_module
    from .exactlin import random_invertible
    kind = rng.choice(["der", "ideal", "trivial", "yoneda", "yoneda"])
    n = rng.randint(1, max_dim)
    g = random_lie(rng, n)
    if kind == "der":
        cm = derivation_crossed_module(g)
    elif kind == "ideal":
        # derived algebra or the whole algebra or a random central piece
        cands = [[g.br(x, y) for x in range(n) for y in range(x + 1, n)],
                 [unit(n, i) for i in range(n)]]
        basis = [v for v in rng.choice(cands) if not is_zero(v)]
        if not basis:
            basis = [unit(n, i) for i in range(n)]
        cm = ideal_crossed_module(g, basis)
    elif kind == "yoneda":
        cm = random_yoneda_crossed_module(rng, max_dim)
    else:
        cm = trivial_crossed_module(g, random_module(rng, g, rng.randint(1, max_dim)))
    if cm.g.dim and cm.m.dim:
        cm = transport_crossed_module(cm, random_invertible(rng, cm.g.dim),
                                      random_invertible(rng, cm.m.dim))
    return cm


def yoneda_crossed_module(h: LieAlgebra, f: MultiTensor, omega: MultiTensor) -> LieCrossedModule:
    """M = V + N -> g = N +_omega h, whose class is the connecting image of omega.

    ``f``: h (x) N -> V vanishing on [h, h]; ``omega``: alt^2 h -> N a 2-cocycle
    with trivial coefficients.  h acts on M by x.(v, n) = (f(x, n), 0)."""
    V, N = f.output, omega.output
    nv, nn, k = V.dim, N.dim, h.dim
    M = FinSpace("M", tuple("v" + l for l in V.labels) + tuple("n" + l for l in N.labels))
    G = FinSpace("G", tuple("n" + l for l in N.labels) + tuple("x" + l for l in h.space.labels))
    zM = (ZERO,) * (nv + nn)

    def gbr(i, j):
        if i >= nn and j >= nn:
            x, y = i - nn, j - nn
            return tuple(omega(x, y)) + tuple(h.br(x, y))
        return (ZERO,) * (nn + k)

    g = LieAlgebra(G, MultiTensor.from_function([alt(G, 2)], G, gbr), "N+h")
    m = LieAlgebra(M, MultiTensor([alt(M, 2)], M), "M")
    phi = LinMap.from_function(M, G, lambda a: (ZERO,) * (nn + k) if a < nv
                               else unit(nn + k, a - nv))
    act = MultiTensor.from_function(
        [plain(G), plain(M)], M,
        lambda i, a: tuple(f(i - nn, a - nv)) + (ZERO,) * nn if i >= nn and a >= nv else zM)
    return LieCrossedModule(m, g, phi, act)


def random_yoneda_crossed_module(rng, max_dim=3) -> LieCrossedModule:
    from .randgen import random_lie, _derived_annihilators
    n = rng.randint(2, max_dim)
    h = random_lie(rng, n)
    V = FinSpace.std("V", rng.randint(1, 2), "p")
    N = FinSpace.std("N", rng.randint(1, 3), "q")
    ann = _derived_annihilators(h)

    coef = {(u, o): [Q(rng.randint(-2, 2)) for _ in ann]
            for u in range(N.dim) for o in range(V.dim)}

    def fval(x, u):
        return tuple(sum((c * fv[x] for c, fv in zip(coef[u, o], ann)), ZERO)
                     for o in range(V.dim))

    f = MultiTensor.from_function([plain(h.space), plain(N)], V, fval)
    triv = MultiTensor([plain(h.space), plain(N)], N)
    rows, ncols = classical_ce_matrix(h.bracket, triv, 2)
    Z = nullspace(rows, ncols) if rows else [unit(ncols, i) for i in range(ncols)]
    flat = vsum([vscale(Q(rng.randint(-2, 2)), z) for z in Z], ncols)
    omega = MultiTensor.from_flat([alt(h.space, 2)], N, flat)
    return yoneda_crossed_module(h, f, omega)
