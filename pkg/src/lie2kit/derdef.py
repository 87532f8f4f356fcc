"""Derivations, Der and DER of a Lie 2-algebra, first-order deformations over
dual numbers, and abelian extensions from 2-cocycles."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cohomology import (CochainSpace, Cochain, Rep2, adjoint_rep, coboundary, cocycle_basis,
                         coboundary_matrix, coboundary_span, comp_blocks, degree1_cochain,
                         degree1_parts, verify_rep)
from .exactlin import (DimensionError, FinSpace, LinMap, MultiTensor, ONE, ZERO, Q, alt,
                       independent_subset, is_zero, plain, solve, unit, vadd, vneg, vscale,
                       vsub, vsum, vzero)
from .lie2core import (AxiomError, AxiomReport, Hom2, Lie2Algebra, _check, compose,
                       verify_hom, verify_l2a)


# ----------------------------------------------------------------- dual numbers

class DualScalar:
    """a + b*lam with lam^2 = 0."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a if isinstance(a, Fraction) else Q(a)
        self.b = b if isinstance(b, Fraction) else Q(b)

    @staticmethod
    def _lift(x):
        if isinstance(x, DualScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return DualScalar(x, 0)
        return NotImplemented

    def __add__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return DualScalar(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return DualScalar(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return DualScalar(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __neg__(self):
        return DualScalar(-self.a, -self.b)

    def __eq__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def inverse(self):
        if self.a == 0:
            raise ZeroDivisionError("dual number with zero real part")
        return DualScalar(1 / self.a, -self.b / (self.a * self.a))

    def __repr__(self):
        return f"({self.a}+{self.b}λ)"


LAM = DualScalar(0, 1)


def dual_vec(v0, v1=None):
    v1 = v1 if v1 is not None else (ZERO,) * len(v0)
    return tuple(DualScalar(a, b) for a, b in zip(v0, v1))


def real_part(v):
    return tuple(c.a if isinstance(c, DualScalar) else c for c in v)


def lam_part(v):
    return tuple(c.b if isinstance(c, DualScalar) else ZERO for c in v)


# ---------------------------------------------------------------- derivations

@dataclass
class Derivation0:
    X0: LinMap
    X1: LinMap
    lX: MultiTensor


@dataclass
class DerivationSpace:
    L: Lie2Algebra
    rep: Rep2
    space: CochainSpace
    basis: list          # Derivation0
    flat_basis: list     # flattened 1-cochains
    inner: list          # flattened spanning basis of inner derivations
    dim_H1: int

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, flat):
        """Coordinates of a flattened 1-cochain in the derivation basis (or None)."""
        n = self.space.dim
        return solve([tuple(b[r] for b in self.flat_basis) for r in range(n)], flat,
                     len(self.flat_basis))


def _as_derivation(rep, space, flat):
    X0, X1, lX = degree1_parts(rep, space.unflatten(flat))
    return Derivation0(X0, X1, lX)


def derivation_space(L: Lie2Algebra) -> DerivationSpace:
    ad = adjoint_rep(L)
    Z, sp = cocycle_basis(ad, 1)
    Bcols = coboundary_span(ad, 1)
    idx = independent_subset(Bcols, sp.dim)
    inner = [Bcols[i] for i in idx]
    basis = [_as_derivation(ad, sp, z) for z in Z]
    return DerivationSpace(L, ad, sp, basis, list(Z), inner, len(Z) - len(inner))


def inner_derivation(L: Lie2Algebra, u, theta: LinMap) -> Derivation0:
    """The 1-coboundary of (u, Theta) for the adjoint representation."""
    from .cohomology import degree0_cochain
    ad = adjoint_rep(L)
    c = coboundary(ad, degree0_cochain(ad, u, theta))
    return Derivation0(*degree1_parts(ad, c))


def flatten_derivation(ds: DerivationSpace, X0, X1, lX):
    return ds.space.flatten(degree1_cochain(ds.rep, X0, X1, lX))


# ------------------------------------------------------------------ Der(g)

def _L_X(L, X0, X1, l):
    """L_X(l)(x,y) = X1 l(x,y) - l(X0 x, y) - l(x, X0 y)."""
    return MultiTensor.from_function(
        [alt(L.g0, 2)], L.gm1,
        lambda x, y: vsub(vsub(X1(l(x, y)), l(X0.column(x), y)), l(x, X0.column(y))))


@dataclass
class Der2Algebra:
    L: Lie2Algebra
    ds: DerivationSpace
    algebra: Lie2Algebra

    def vec(self, X):
        return unit(self.ds.dim, X) if isinstance(X, int) else tuple(X)

    def combo(self, X):
        v = self.vec(X)
        flat = vsum([vscale(c, self.ds.flat_basis[i]) for i, c in enumerate(v) if c != 0],
                    self.ds.space.dim)
        return _as_derivation(self.ds.rep, self.ds.space, flat)

    def X0(self, X):
        return self.combo(X).X0

    def X1(self, X):
        return self.combo(X).X1

    def lX(self, X):
        return self.combo(X).lX

    def theta(self, T) -> LinMap:
        L = self.L
        n0, n1 = L.dims
        v = unit(n0 * n1, T) if isinstance(T, int) else tuple(T)
        return LinMap(L.g0, L.gm1, [v[r * n0:(r + 1) * n0] for r in range(n1)])

    def theta_coords(self, th: LinMap):
        return tuple(c for r in th.matrix for c in r)

    def coords(self, X0, X1, lX):
        c = self.ds.coords(flatten_derivation(self.ds, X0, X1, lX))
        if c is None:
            raise ArithmeticError("not a derivation")
        return c


def dbar(L: Lie2Algebra, th: LinMap):
    """(d Theta, Theta d, l) with l(x,y) = Theta[x,y] - [x,Theta y] - [Theta x, y]."""
    X0 = L.d @ th
    X1 = th @ L.d
    lX = MultiTensor.from_function(
        [alt(L.g0, 2)], L.gm1,
        lambda x, y: vsum([th(L.br(x, y)), vneg(L.act(x, th.column(y))),
                           L.act(y, th.column(x))], L.gm1.dim))
    return X0, X1, lX


def der_bracket(L, A: Derivation0, B: Derivation0):
    X0 = A.X0 @ B.X0 - B.X0 @ A.X0
    X1 = A.X1 @ B.X1 - B.X1 @ A.X1
    lX = _L_X(L, A.X0, A.X1, B.lX) - _L_X(L, B.X0, B.X1, A.lX)
    return X0, X1, lX


def build_Der(L: Lie2Algebra, check=True) -> Der2Algebra:
    ds = derivation_space(L)
    n0, n1 = L.dims
    D0 = FinSpace(f"Der0({L.name})", tuple(f"D{i + 1}" for i in range(ds.dim)))
    Dm1 = FinSpace(f"Der-1({L.name})", tuple(
        f"T{r + 1}_{c + 1}" for r in range(n1) for c in range(n0)))
    out = Der2Algebra(L, ds, None)

    def dmap(T):
        return out.coords(*dbar(L, out.theta(T)))

    def br(i, j):
        return out.coords(*der_bracket(L, ds.basis[i], ds.basis[j]))

    def act(i, T):
        A = ds.basis[i]
        th = out.theta(T)
        return out.theta_coords(A.X1 @ th - th @ A.X0)

    b00, b01, b3 = Lie2Algebra.blocks(D0, Dm1)
    alg = Lie2Algebra(D0, Dm1, LinMap.from_function(Dm1, D0, dmap),
                      MultiTensor.from_function(b00, D0, br),
                      MultiTensor.from_function(b01, Dm1, act), MultiTensor(b3, Dm1),
                      f"Der({L.name})")
    if check:
        rp = verify_l2a(alg)
        if not rp.passed:
            raise AxiomError(rp, "derivation Lie 2-algebra")
    out.algebra = alg
    return out


# ------------------------------------------------------------------ DER(g)

@dataclass
class Lie3Strict:
    """Complex C-2 -> C-1 -> C0 with a degree-0 graded bracket.

    ``bracket[(i, j)]`` is a bilinear tensor C_i (x) C_j -> C_{i+j}; missing
    entries are zero."""
    spaces: dict
    d: dict          # degree -> LinMap C_deg -> C_{deg+1}
    bracket: dict
    name: str = ""

    def br(self, i, u, j, v):
        t = self.bracket.get((i, j))
        if t is None or i + j < -2:
            return None
        return t(u, v)

    def dim(self, k):
        return self.spaces[k].dim


def _zero_vec(n):
    return (ZERO,) * n


def verify_lie3(A: Lie3Strict) -> AxiomReport:
    rp = AxiomReport()
    degs = (0, -1, -2)
    lab = {k: A.spaces[k].labels for k in degs}
    # d o d
    dd = A.d[-1] @ A.d[-2]
    for a in range(A.dim(-2)):
        _check(rp, "dd", (lab[-2][a],), dd.column(a))

    def B(i, u, j, v):
        if i + j < -2:
            return None
        t = A.bracket.get((i, j))
        return t(u, v) if t is not None else _zero_vec(A.dim(i + j))

    def D(i, u):
        if i == 0:
            return None
        return A.d[i](u)

    def sgn(k):
        return ONE if k % 2 == 0 else -ONE

    for i in degs:
        for j in degs:
            if i + j < -2:
                continue
            for u in range(A.dim(i)):
                for v in range(A.dim(j)):
                    w = (lab[i][u], lab[j][v])
                    # graded skew symmetry
                    s = B(j, v, i, u)
                    _check(rp, "skew", w, vadd(B(i, u, j, v), vscale(sgn(i * j), s)))
                    # d is a derivation: d[u,v] = [du,v] + (-1)^i [u,dv]
                    if i + j == 0:
                        continue
                    lhs = A.d[i + j](B(i, u, j, v))
                    terms = []
                    if i != 0:
                        terms.append(B(i + 1, A.d[i].column(u), j, v))
                    if j != 0:
                        terms.append(vscale(sgn(i), B(i, u, j + 1, A.d[j].column(v))))
                    rhs = vsum([t for t in terms if t is not None], A.dim(i + j + 1))
                    _check(rp, "leibniz_d", w, vsub(lhs, rhs))
    for i in degs:
        for j in degs:
            for k in degs:
                if i + j + k < -2:
                    continue
                for u in range(A.dim(i)):
                    for v in range(A.dim(j)):
                        for x in range(A.dim(k)):
                            lhs = B(i, u, j + k, B(j, v, k, x))
                            r1 = B(i + j, B(i, u, j, v), k, x)
                            r2 = vscale(sgn(i * j), B(j, v, i + k, B(i, u, k, x)))
                            _check(rp, "jacobi", (lab[i][u], lab[j][v], lab[k][x]),
                                   vsub(lhs, vadd(r1, r2)))
    return rp.finish()


def build_DER(L: Lie2Algebra, D: Der2Algebra = None, check=True) -> Lie3Strict:
    D = D if D is not None else build_Der(L)
    ds = D.ds
    n0, n1 = L.dims
    Der0 = D.algebra.g0
    Derm1 = D.algebra.gm1
    nT = Derm1.dim
    C0 = Der0
    Cm1 = FinSpace("DER-1", Derm1.labels + L.g0.labels)
    Cm2 = FinSpace("DER-2", L.gm1.labels)

    def split(v):
        v = unit(nT + n0, v) if isinstance(v, int) else tuple(v)
        return D.theta(v[:nT]), v[nT:]

    def ad_x(x):
        """([x, .], l3(x, ., .)) as a derivation."""
        X0 = LinMap.from_function(L.g0, L.g0, lambda y: L.br(x, y))
        X1 = LinMap.from_function(L.gm1, L.gm1, lambda a: L.act(x, a))
        lX = MultiTensor.from_function([alt(L.g0, 2)], L.gm1, lambda y, z: L.jac(x, y, z))
        return X0, X1, lX

    def d1(v):
        th, x = split(v)
        A0, A1, Al = dbar(L, th)
        B0, B1, Bl = ad_x(x)
        return D.coords(A0 + B0, A1 + B1, Al + Bl)

    def d2(a):
        th = LinMap.from_function(L.g0, L.gm1, lambda y: vneg(L.act(y, a)))
        return D.theta_coords(th) + tuple(vneg(L.d.column(a)))

    def b00(i, j):
        return D.algebra.br(i, j)

    def b01(i, v):
        A = ds.basis[i]
        th, x = split(v)
        th2 = A.X1 @ th - th @ A.X0
        lx = LinMap.from_function(L.g0, L.gm1, lambda y: A.lX(x, y))
        return D.theta_coords(th2 + lx) + tuple(A.X0(x))

    def b11(u, v):
        th, x = split(u)
        th2, x2 = split(v)
        return vneg(vadd(th(x2), th2(x)))

    def b02(i, a):
        return ds.basis[i].X1.column(a)

    P = plain
    br = {
        (0, 0): MultiTensor.from_function([P(C0), P(C0)], C0, b00),
        (0, -1): MultiTensor.from_function([P(C0), P(Cm1)], Cm1, b01),
        (-1, 0): MultiTensor.from_function([P(Cm1), P(C0)], Cm1,
                                           lambda v, i: vneg(b01(i, v))),
        (-1, -1): MultiTensor.from_function([P(Cm1), P(Cm1)], Cm2, b11),
        (0, -2): MultiTensor.from_function([P(C0), P(Cm2)], Cm2, b02),
        (-2, 0): MultiTensor.from_function([P(Cm2), P(C0)], Cm2,
                                           lambda a, i: vneg(b02(i, a))),
    }
    A = Lie3Strict({0: C0, -1: Cm1, -2: Cm2},
                   {-1: LinMap.from_function(Cm1, C0, d1),
                    -2: LinMap.from_function(Cm2, Cm1, d2)}, br, f"DER({L.name})")
    if check:
        rp = verify_lie3(A)
        if not rp.passed:
            raise AxiomError(rp, "derivation Lie 3-algebra")
    return A


# -------------------------------------------------------------- deformations

def _dual_lift_map(f: LinMap, g: LinMap = None):
    rows = [[DualScalar(a, b if g is not None else 0) for a, b in
             zip(r, g.matrix[i] if g is not None else r)] for i, r in enumerate(f.matrix)]
    return LinMap(f.source, f.target, rows)


def _dual_tensor(t: MultiTensor, s: MultiTensor):
    data = {}
    z = (ZERO,) * t.output.dim
    for k in set(t.data) | set(s.data):
        data[k] = dual_vec(t.data.get(k, z), s.data.get(k, z))
    return MultiTensor(t.blocks, t.output, data)


def deformation_components(L: Lie2Algebra, c2: Cochain):
    """(d1, [.,.]_1 on g0, [.,.]_1 on g0 x g-1, l3_1) from a 2-cochain."""
    ad = adjoint_rep(L)
    t010 = c2.get(ad, (0, 1, 0))
    d1 = LinMap.from_function(L.gm1, L.g0, lambda a: t010(a))
    b00, b01, b3 = Lie2Algebra.blocks(L.g0, L.gm1)
    t20 = c2.get(ad, (2, 0, 0))
    br1 = MultiTensor.from_function(b00, L.g0, lambda x, y: t20(x, y))
    t11 = c2.get(ad, (1, 1, -1))
    act1 = MultiTensor.from_function(b01, L.gm1, lambda x, a: t11(x, a))
    t3 = c2.get(ad, (3, 0, -1))
    l31 = MultiTensor.from_function(b3, L.gm1, lambda x, y, z: t3(x, y, z))
    return d1, br1, act1, l31


def cochain_from_deformation(L, d1, br1, act1, l31) -> Cochain:
    ad = adjoint_rep(L)
    comps = {}
    b, o = comp_blocks(ad, (0, 1, 0))
    comps[(0, 1, 0)] = MultiTensor.from_function(b, o, lambda a: d1.column(a))
    b, o = comp_blocks(ad, (2, 0, 0))
    comps[(2, 0, 0)] = MultiTensor.from_function(b, o, lambda x, y: br1(x, y))
    b, o = comp_blocks(ad, (1, 1, -1))
    comps[(1, 1, -1)] = MultiTensor.from_function(b, o, lambda x, a: act1(x, a))
    b, o = comp_blocks(ad, (3, 0, -1))
    comps[(3, 0, -1)] = MultiTensor.from_function(b, o, lambda x, y, z: l31(x, y, z))
    for k in components_2():
        if k not in comps:
            b, o = comp_blocks(ad, k)
            comps[k] = MultiTensor(b, o)
    return Cochain(2, comps)


def components_2():
    from .cohomology import components
    return components(2)


def coboundary_deformation(L: Lie2Algebra, X0: LinMap, X1: LinMap, lX: MultiTensor):
    """The deformation induced by (X, l_X), written out directly."""
    n0, n1 = L.dims
    d1 = L.d @ X1 - X0 @ L.d
    b00, b01, b3 = Lie2Algebra.blocks(L.g0, L.gm1)
    br1 = MultiTensor.from_function(b00, L.g0, lambda x, y: vsum([
        L.br(x, X0.column(y)), L.br(X0.column(x), y), vneg(X0(L.br(x, y))),
        L.d(lX(x, y))], n0))
    act1 = MultiTensor.from_function(b01, L.gm1, lambda x, a: vsum([
        L.act(x, X1.column(a)), L.act(X0.column(x), a), vneg(X1(L.act(x, a))),
        lX(x, L.d.column(a))], n1))

    def l31(x, y, z):
        terms = [vneg(X1(L.jac(x, y, z)))]
        for (u, v, w) in ((x, y, z), (y, z, x), (z, x, y)):
            terms += [lX(u, L.br(v, w)), L.act(u, lX(v, w)), L.jac(X0.column(u), v, w)]
        return vsum(terms, n1)

    return d1, br1, act1, MultiTensor.from_function(b3, L.gm1, l31)


@dataclass
class DeformationResult:
    algebra: Lie2Algebra        # over dual numbers
    report: AxiomReport
    is_cocycle: bool
    trivialization: Hom2 = None
    trivialization_report: AxiomReport = None
    c1: Cochain = None


def deformed_algebra(L: Lie2Algebra, c2: Cochain) -> Lie2Algebra:
    d1, br1, act1, l31 = deformation_components(L, c2)
    return Lie2Algebra(L.g0, L.gm1, _dual_lift_map(L.d, d1),
                       _dual_tensor(L.l2_00, br1), _dual_tensor(L.l2_01, act1),
                       _dual_tensor(L.l3, l31), f"{L.name}_lam")


def dual_algebra(L: Lie2Algebra) -> Lie2Algebra:
    """L with scalars read in the dual numbers."""
    z = lambda t: MultiTensor(t.blocks, t.output)
    return Lie2Algebra(L.g0, L.gm1, _dual_lift_map(L.d), _dual_tensor(L.l2_00, z(L.l2_00)),
                       _dual_tensor(L.l2_01, z(L.l2_01)), _dual_tensor(L.l3, z(L.l3)),
                       L.name)


def deform(L: Lie2Algebra, c2: Cochain) -> DeformationResult:
    ad = adjoint_rep(L)
    if c2.degree != 2:
        raise DimensionError("deformations are given by 2-cochains")
    CochainSpace(ad, 2).flatten(c2)  # shape check
    Ll = deformed_algebra(L, c2)
    rp = verify_l2a(Ll)
    closed = coboundary(ad, c2).is_zero()
    res = DeformationResult(Ll, rp, closed)
    rows, src, tgt = coboundary_matrix(ad, 1)
    sol = solve(rows, tgt.flatten(c2), src.dim)
    if sol is not None:
        c1 = src.unflatten(sol)
        X0, X1, lX = degree1_parts(ad, c1)
        phi = trivializing_hom(L, Ll, X0, X1, lX)
        res.trivialization = phi
        res.trivialization_report = verify_hom(phi)
        res.c1 = c1
    return res


def trivializing_hom(L, Ll, X0, X1, lX) -> Hom2:
    """Id + lam (X0, X1, l_X): L_lam -> L (scalars extended)."""
    n0, n1 = L.dims
    I0 = LinMap.identity(L.g0)
    I1 = LinMap.identity(L.gm1)
    phi0 = LinMap(L.g0, L.g0, [[DualScalar(a, b) for a, b in zip(r, s)]
                               for r, s in zip(I0.matrix, X0.matrix)])
    phi1 = LinMap(L.gm1, L.gm1, [[DualScalar(a, b) for a, b in zip(r, s)]
                                 for r, s in zip(I1.matrix, X1.matrix)])
    phi2 = MultiTensor([alt(L.g0, 2)], L.gm1,
                       {k: tuple(DualScalar(0, c) for c in v) for k, v in lX.data.items()})
    return Hom2(Ll, dual_algebra(L), phi0, phi1, phi2)


# -------------------------------------------------------- abelian extensions

@dataclass
class Extension:
    algebra: Lie2Algebra
    report: AxiomReport
    i: Hom2
    p: Hom2
    exact: AxiomReport


def _ext_parts(rep: Rep2, c2: Cochain):
    g = rep.g
    nu = c2.get(rep, (0, 1, 0))
    om = c2.get(rep, (2, 0, 0))
    mu = c2.get(rep, (1, 1, -1))
    th = c2.get(rep, (3, 0, -1))
    return nu, om, mu, th


def _join_labels(a, b):
    if set(a) & set(b):
        b = tuple("h." + x for x in b)
    return tuple(a) + tuple(b)


def extension_algebra(rep: Rep2, c2: Cochain, name="ext") -> Lie2Algebra:
    g, V = rep.g, rep.V
    n0, n1 = g.dims
    v0, v1 = V.V0.dim, V.Vm1.dim
    nu, om, mu, th = _ext_parts(rep, c2)
    G0 = FinSpace(name + "0", _join_labels(g.g0.labels, V.V0.labels))
    G1 = FinSpace(name + "-1", _join_labels(g.gm1.labels, V.Vm1.labels))
    s0 = lambda i: (i, None) if i < n0 else (None, i - n0)
    s1 = lambda i: (i, None) if i < n1 else (None, i - n1)
    z0, z1, zv0, zv1 = (ZERO,) * n0, (ZERO,) * n1, (ZERO,) * v0, (ZERO,) * v1

    def d(a):
        ai, m = s1(a)
        if ai is not None:
            return tuple(g.d.column(ai)) + tuple(nu(ai))
        return z0 + tuple(V.partial.column(m))

    def br(x, y):
        (xi, u), (yi, v) = s0(x), s0(y)
        gp, vp = z0, zv0
        if xi is not None and yi is not None:
            gp = g.br(xi, yi)
            vp = om(xi, yi)
        if xi is not None and v is not None:
            vp = vadd(vp, rep.a0(xi, v))
        if yi is not None and u is not None:
            vp = vsub(vp, rep.a0(yi, u))
        return tuple(gp) + tuple(vp)

    def act(x, a):
        (xi, u), (ai, m) = s0(x), s1(a)
        gp, vp = z1, zv1
        if xi is not None and ai is not None:
            gp = g.act(xi, ai)
            vp = mu(xi, ai)
        if xi is not None and m is not None:
            vp = vadd(vp, rep.a1(xi, m))
        if ai is not None and u is not None:
            vp = vsub(vp, rep.b(ai, u))
        return tuple(gp) + tuple(vp)

    def jac(x, y, z):
        (xi, u), (yi, v), (zi, w) = s0(x), s0(y), s0(z)
        gp, vp = z1, zv1
        if None not in (xi, yi, zi):
            gp = g.jac(xi, yi, zi)
            vp = th(xi, yi, zi)
        for (p, q, r) in ((xi, yi, w), (yi, zi, u), (zi, xi, v)):
            if None not in (p, q, r):
                vp = vsub(vp, rep.c(p, q, r))
        return tuple(gp) + tuple(vp)

    return Lie2Algebra.from_functions(G0, G1, LinMap.from_function(G1, G0, d), br, act,
                                      jac, name)


def abelian_module_algebra(V) -> Lie2Algebra:
    return Lie2Algebra.abelian(V.V0, V.Vm1, V.partial, "h")


def abelian_extension(rep: Rep2, c2: Cochain, name="ext") -> Extension:
    if c2.degree != 2:
        raise DimensionError("extensions are given by 2-cochains")
    CochainSpace(rep, 2).flatten(c2)
    E = extension_algebra(rep, c2, name)
    rp = verify_l2a(E)
    g, V = rep.g, rep.V
    h = abelian_module_algebra(V)
    n0, n1 = g.dims
    v0, v1 = V.V0.dim, V.Vm1.dim
    i0 = LinMap.from_function(V.V0, E.g0, lambda u: unit(n0 + v0, n0 + u))
    i1 = LinMap.from_function(V.Vm1, E.gm1, lambda m: unit(n1 + v1, n1 + m))
    p0 = LinMap.from_function(E.g0, g.g0, lambda x: unit(n0, x) if x < n0 else (ZERO,) * n0)
    p1 = LinMap.from_function(E.gm1, g.gm1, lambda a: unit(n1, a) if a < n1 else (ZERO,) * n1)
    i = Hom2.strict(h, E, i0, i1)
    p = Hom2.strict(E, g, p0, p1)
    return Extension(E, rp, i, p, check_exact(i, p))


def check_exact(i: Hom2, p: Hom2) -> AxiomReport:
    from .exactlin import kernel, image, rank_of
    rp = AxiomReport()
    for deg, (im, pm) in (("0", (i.phi0, p.phi0)), ("-1", (i.phi1, p.phi1))):
        if im.rank() != im.source.dim:
            rp.add("ker_i", (deg,), (ONE,))
        if pm.rank() != pm.target.dim:
            rp.add("im_p", (deg,), (ONE,))
        comp = pm @ im
        if not comp.is_zero():
            rp.add("p_i", (deg,), (ONE,))
        if im.rank() != kernel(pm).dim:
            rp.add("im_i_ker_p", (deg,), (ONE,))
    return rp.finish()


def extension_equivalence(rep: Rep2, c2: Cochain, b: Cochain, E1: Extension = None,
                          E2: Extension = None):
    """For c2' = c2 + D(b), the map F = Id - b between the two extensions.

    Returns (F, E1, E2, report) where the report covers the homomorphism
    laws together with F.i = j, q.F = p and F2(i(u), .) = 0."""
    c2b = _add_cochains(rep, c2, coboundary(rep, b))
    E1 = E1 or abelian_extension(rep, c2)
    E2 = E2 or abelian_extension(rep, c2b)
    g, V = rep.g, rep.V
    n0, n1 = g.dims
    v0, v1 = V.V0.dim, V.Vm1.dim
    b0 = b.get(rep, (1, 0, 0))
    b1 = b.get(rep, (0, 1, -1))
    bl = b.get(rep, (2, 0, -1))
    F0 = LinMap.from_function(E1.algebra.g0, E2.algebra.g0,
                              lambda x: unit(n0 + v0, x) if x >= n0 else
                              unit(n0 + v0, x)[:n0] + tuple(vneg(b0(x))))
    F1 = LinMap.from_function(E1.algebra.gm1, E2.algebra.gm1,
                              lambda a: unit(n1 + v1, a) if a >= n1 else
                              unit(n1 + v1, a)[:n1] + tuple(vneg(b1(a))))
    F2 = MultiTensor.from_function(
        [alt(E1.algebra.g0, 2)], E2.algebra.gm1,
        lambda x, y: ((ZERO,) * n1 + tuple(vneg(bl(x, y)))) if x < n0 and y < n0
        else (ZERO,) * (n1 + v1))
    F = Hom2(E1.algebra, E2.algebra, F0, F1, F2)
    rp = AxiomReport()
    rp.merge(verify_hom(F), prefix="F.")
    Fi = compose(F, E1.i)
    if not Fi.same_maps(E2.i):
        rp.add("F_i_eq_j", (), (ONE,))
    qF = compose(E2.p, F)
    if not qF.same_maps(E1.p):
        rp.add("q_F_eq_p", (), (ONE,))
    for u in range(v0):
        for a in range(n0 + v0):
            v = F2(n0 + u, a)
            if not is_zero(v):
                rp.add("F2_iu", (V.V0.labels[u], E1.algebra.g0.labels[a]), v)
    return F, E1, E2, rp.finish()


def _add_cochains(rep, a: Cochain, b: Cochain) -> Cochain:
    sp = CochainSpace(rep, a.degree)
    return sp.unflatten(vadd(sp.flatten(a), sp.flatten(b)))


# ------------------------------------------------------------ basis alignment

def coadjoint_semidirect(g) -> "LieAlgebra":
    """g x| g*, [(x,xi),(y,eta)] = ([x,y], ad*_x eta - ad*_y xi), ad*_x xi = -xi o ad_x."""
    from .constructions import LieAlgebra
    n = g.dim
    sp = FinSpace(f"{g.name}x|{g.name}*", g.space.labels + tuple(f"{s}*" for s in g.space.labels))

    def coad(x, j):
        # coordinates of ad*_x (e_j^*) in the dual basis
        return tuple(-g.br(x, k)[j] for k in range(n))

    def br(a, b):
        if a < n and b < n:
            return tuple(g.br(a, b)) + (ZERO,) * n
        if a >= n and b >= n:
            return vzero(2 * n)
        if a < n:
            return (ZERO,) * n + coad(a, b - n)
        return (ZERO,) * n + tuple(-c for c in coad(b, a - n))

    return LieAlgebra(sp, MultiTensor.from_function([alt(sp, 2)], sp, br), sp.name)


def align_string_der(D: Der2Algebra, g):
    """Basis change P: g x| g* -> Der0(String(g)).

    g maps to the lifts (ad_x, 0, 0) and xi in g* to (0, 0, -xi o [.,.]), so
    that dbar(Theta) = (0, -Theta).  Returns (P, aligned Lie algebra on the
    g x| g* labels)."""
    from .constructions import LieAlgebra
    L = D.L
    n = g.dim
    if L.dims != (n, 1):
        raise DimensionError("alignment expects String(g) with a one-dimensional centre")
    zero1 = LinMap.zero(L.gm1, L.gm1)
    zero2 = MultiTensor([alt(L.g0, 2)], L.gm1)
    cols = [D.coords(g.ad(i).with_spaces(L.g0, L.g0), zero1, zero2) for i in range(n)]
    for j in range(n):
        th = LinMap(L.g0, L.gm1, (unit(n, j),))
        cols.append(tuple(-c for c in D.coords(*dbar(L, th))))
    src = FinSpace(f"{g.name}x|{g.name}*",
                   g.space.labels + tuple(f"{s}*" for s in g.space.labels))
    P = LinMap.from_columns(src, D.algebra.g0, cols)
    h = LieAlgebra(D.algebra.g0, D.algebra.l2_00, "Der0")
    return P, h.transformed(P.inverse("alignment"), src.name)
