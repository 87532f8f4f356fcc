"""Seeded random generation of verified Lie 2-algebras, homomorphisms and
representations with small dimensions."""
from __future__ import annotations

import random

from .cohomology import Complex2, Rep2, adjoint_rep, classical_ce_matrix
from .constructions import LieAlgebra, sl2
from .exactlin import (FinSpace, LinMap, MultiTensor, ONE, Q, ZERO, alt, nullspace, plain,
                       random_invertible, random_matrix, unit, vadd, vneg, vscale, vsub, vsum)
from .lie2core import Hom2, Lie2Algebra, compose, invert, verify_hom, verify_l2a


def _table(labels, tab, name):
    return LieAlgebra.from_table(labels, tab, name)


def lie_catalog(n):
    """Small Lie algebras of dimension n (n <= 3)."""
    if n == 0:
        return [LieAlgebra.abelian(0)]
    if n == 1:
        return [LieAlgebra.abelian(1)]
    if n == 2:
        return [LieAlgebra.abelian(2), _table(("x", "y"), {("x", "y"): {"y": 1}}, "r2")]
    return [
        LieAlgebra.abelian(3),
        _table(("x", "y", "z"), {("x", "y"): {"z": 1}}, "heis"),
        sl2(),
        _table(("x", "y", "z"), {("x", "y"): {"z": 1}, ("y", "z"): {"x": 1},
                                 ("z", "x"): {"y": 1}}, "so3"),
        _table(("x", "y", "z"), {("x", "y"): {"y": 1}, ("x", "z"): {"z": -1}}, "r3a"),
        _table(("x", "y", "z"), {("x", "y"): {"y": 1}, ("x", "z"): {"y": 1, "z": 1}}, "r3b"),
        _table(("x", "y", "z"), {("x", "y"): {"y": 1}}, "r2+1"),
    ]


def random_lie(rng, n) -> LieAlgebra:
    g = rng.choice(lie_catalog(n))
    if n == 0:
        return g
    P = random_invertible(rng, n)
    sp = FinSpace.std(g.name, n, "e")
    return g.transformed(LinMap(g.space, sp, P), g.name)


def _derived_annihilators(g: LieAlgebra):
    """Linear functionals vanishing on [g, g]."""
    n = g.dim
    rows = [g.br(x, y) for x in range(n) for y in range(x + 1, n)]
    # f with f(v) = 0 for v in rows
    return nullspace(rows, n) if rows else [unit(n, i) for i in range(n)]


def random_module(rng, g: LieAlgebra, m) -> MultiTensor:
    """rho: g (x) V -> V for a random module V of dimension m."""
    V = FinSpace.std("V", m, "v")
    kinds = ["trivial", "character"]
    if m == g.dim and m > 0:
        kinds.append("adjoint")
    kind = rng.choice(kinds)
    blocks = [plain(g.space), plain(V)]
    if kind == "trivial" or m == 0:
        return MultiTensor(blocks, V)
    if kind == "adjoint":
        return MultiTensor.from_function(blocks, V, lambda x, u: g.br(x, u))
    fs = _derived_annihilators(g)
    if not fs:
        return MultiTensor(blocks, V)
    f = vsum([vscale(Q(rng.randint(-2, 2)), fv) for fv in fs], g.dim)
    M = random_matrix(rng, m, m, -2, 2)
    return MultiTensor.from_function(blocks, V, lambda x, u: tuple(f[x] * M[r][u]
                                                                  for r in range(m)))


def random_cocycle3(rng, g: LieAlgebra, rho: MultiTensor) -> MultiTensor:
    V = rho.output
    rows, n = classical_ce_matrix(g.bracket, rho, 3)
    Z = nullspace(rows, n) if rows else [unit(n, i) for i in range(n)]
    flat = vsum([vscale(Q(rng.randint(-2, 2)), z) for z in Z], n)
    return MultiTensor.from_flat([alt(g.space, 3)], V, flat)


def random_skeletal(rng, n, m) -> Lie2Algebra:
    g = random_lie(rng, n)
    rho = random_module(rng, g, m)
    c3 = random_cocycle3(rng, g, rho)
    V = rho.output
    b00, b01, b3 = Lie2Algebra.blocks(g.space, V)
    return Lie2Algebra(g.space, V, LinMap.zero(V, g.space), g.bracket,
                       rho.with_spaces(b01, V), c3.with_spaces(b3, V), f"skel[{g.name}]")


def with_acyclic(L: Lie2Algebra, u) -> Lie2Algebra:
    """L plus an acyclic abelian piece U --id--> U."""
    n0, n1 = L.dims
    G0 = FinSpace("G0", L.g0.labels + tuple(f"u{i + 1}" for i in range(u)))
    G1 = FinSpace("G1", L.gm1.labels + tuple(f"w{i + 1}" for i in range(u)))
    N0, N1 = n0 + u, n1 + u
    lo0 = lambda i: i < n0
    lo1 = lambda i: i < n1
    pad0 = lambda v: tuple(v) + (ZERO,) * u
    pad1 = lambda v: tuple(v) + (ZERO,) * u
    d = LinMap.from_function(G1, G0, lambda a: pad0(L.d.column(a)) if lo1(a)
                             else unit(N0, n0 + a - n1))
    br = lambda x, y: pad0(L.br(x, y)) if lo0(x) and lo0(y) else (ZERO,) * N0
    act = lambda x, a: pad1(L.act(x, a)) if lo0(x) and lo1(a) else (ZERO,) * N1
    jac = lambda x, y, z: pad1(L.jac(x, y, z)) if lo0(x) and lo0(y) and lo0(z) \
        else (ZERO,) * N1
    return Lie2Algebra.from_functions(G0, G1, d, br, act, jac, L.name + f"+acyc{u}")


def transport(L: Lie2Algebra, P0, P1, P2: MultiTensor, name=None):
    """Algebra L' on fresh spaces with phi = (P0, P1, P2): L -> L' a homomorphism.

    Returns (L', phi)."""
    n0, n1 = L.dims
    T0 = FinSpace.std("x", n0, "x")
    T1 = FinSpace.std("a", n1, "a")
    p0 = LinMap(L.g0, T0, P0)
    p1 = LinMap(L.gm1, T1, P1)
    q0, q1 = p0.inverse("phi0"), p1.inverse("phi1")
    p2 = P2.with_spaces([alt(L.g0, 2)], T1)
    d = p0 @ L.d @ q1
    Q0 = [q0.column(i) for i in range(n0)]
    Q1 = [q1.column(i) for i in range(n1)]

    def br(X, Y):
        x, y = Q0[X], Q0[Y]
        return vsub(p0(L.br(x, y)), d(p2(x, y)))

    def act(X, A):
        x, a = Q0[X], Q1[A]
        return vsub(p1(L.act(x, a)), p2(x, L.d(a)))

    b00, b01, b3 = Lie2Algebra.blocks(T0, T1)
    brt = MultiTensor.from_function(b00, T0, br)
    actt = MultiTensor.from_function(b01, T1, act)

    def jac(X, Y, Z):
        x, y, z = Q0[X], Q0[Y], Q0[Z]
        terms = [p1(L.jac(x, y, z))]
        for (u, v, w, U) in ((x, y, z, X), (y, z, x, Y), (z, x, y, Z)):
            terms.append(vneg(actt(U, p2(v, w))))
            terms.append(p2(L.br(u, v), w))
        return vsum(terms, n1)

    Lp = Lie2Algebra(T0, T1, d, brt, actt, MultiTensor.from_function(b3, T1, jac),
                     name or L.name)
    return Lp, Hom2(L, Lp, p0, p1, p2)


def random_dims(rng, max_dim=3):
    n = rng.randint(0, max_dim)
    m = rng.randint(0, max_dim)
    u = rng.randint(0, max_dim - max(n, m))
    return n, m, u


def random_l2a(rng, max_dim=3, with_data=False):
    """A random verified Lie 2-algebra with dims <= max_dim.

    With ``with_data`` returns (L, M, psi) where M is skeletal plus acyclic and
    psi: L -> M is an isomorphism."""
    n, m, u = random_dims(rng, max_dim)
    M = with_acyclic(random_skeletal(rng, n, m), u)
    N0, N1 = M.dims
    P0 = random_invertible(rng, N0)
    P1 = random_invertible(rng, N1)
    P2 = MultiTensor.from_function([alt(M.g0, 2)], M.gm1,
                                   lambda x, y: tuple(Q(rng.randint(-2, 2))
                                                      for _ in range(N1)))
    L, phi = transport(M, P0, P1, P2, name=f"rand[{M.name}]")
    if with_data:
        return L, M, invert(phi), n
    return L


def random_hom(rng, L: Lie2Algebra, max_dim=3):
    """A random homomorphism out of L (an isomorphism onto a transport)."""
    n0, n1 = L.dims
    P0 = random_invertible(rng, n0)
    P1 = random_invertible(rng, n1)
    P2 = MultiTensor.from_function([alt(L.g0, 2)], L.gm1,
                                   lambda x, y: tuple(Q(rng.randint(-2, 2))
                                                      for _ in range(n1)))
    return transport(L, P0, P1, P2)[1]


def random_rep(rng, max_dim=3):
    """A random verified (L, Rep2) pair."""
    L, M, psi, n = random_l2a(rng, max_dim, with_data=True)
    kind = rng.choice(["adjoint", "trivial", "pulled_adjoint", "pulled_strict"])
    if kind == "adjoint":
        return L, adjoint_rep(L)
    if kind == "trivial":
        v0, v1 = rng.randint(0, 2), rng.randint(0, 2)
        V = Complex2(FinSpace.std("V0", v0, "v"), FinSpace.std("V1", v1, "m"),
                     LinMap(FinSpace.std("V1", v1, "m"), FinSpace.std("V0", v0, "v"),
                            random_matrix(rng, v0, v1, -2, 2)))
        return L, Rep2.trivial(L, V)
    if kind == "pulled_adjoint":
        return L, adjoint_rep(M).pullback(psi)
    # a strict rep of the Lie algebra g = H0(M) acting on W -> W
    g0 = FinSpace("g", M.g0.labels[:n])
    gL = LieAlgebra(g0, MultiTensor.from_function(
        [alt(g0, 2)], g0, lambda x, y: M.br(x, y)[:n]))
    w = rng.randint(1, 2)
    rho = random_module(rng, gL, w)
    shape = rng.choice(["id", "left", "right"])
    W = rho.output
    Z = FinSpace("0", ())
    if shape == "id":
        V = Complex2(W, W, LinMap.identity(W))
    elif shape == "left":
        V = Complex2(W, Z, LinMap.zero(Z, W))
    else:
        V = Complex2(Z, W, LinMap.zero(W, Z))
    G = Lie2Algebra.abelian(g0, Z)
    G = Lie2Algebra(g0, Z, LinMap.zero(Z, g0), gL.bracket, G.l2_01, G.l3)
    strict = Rep2.from_functions(
        G, V,
        lambda x, u: rho(x, u) if V.V0.dim else (),
        lambda x, m: rho(x, m) if V.Vm1.dim else (),
        lambda a, u: (),
        lambda x, y, u: (ZERO,) * V.Vm1.dim)
    proj = Hom2.strict(M, G, LinMap.from_function(M.g0, g0, lambda i: unit(n, i) if i < n
                                                  else (ZERO,) * n),
                       LinMap.zero(M.gm1, Z))
    return L, strict.pullback(compose(proj, psi))


def random_shape_tensors(rng, n0, n1, density=0.5):
    """Random shape-valid (unverified) structure data."""
    g0 = FinSpace.std("g0", n0, "x")
    gm1 = FinSpace.std("g-1", n1, "a")
    d = LinMap(gm1, g0, random_matrix(rng, n0, n1, -1, 1, density))
    rv = lambda k: tuple(Q(rng.randint(-1, 1)) if rng.random() < density else ZERO
                         for _ in range(k))
    return Lie2Algebra.from_functions(g0, gm1, d, lambda x, y: rv(n0),
                                      lambda x, a: rv(n1), lambda x, y, z: rv(n1),
                                      "random-shape")
