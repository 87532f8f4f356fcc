"""Concrete Lie 2-algebras: gl of a complex, skeletal data, String, Leibniz
skew-symmetrization, omni-Lie, semidirect and crossed products, and the
strict algebra / crossed module dictionary."""
from __future__ import annotations

from dataclasses import dataclass

from .exactlin import (DimensionError, FinSpace, LinMap, MultiTensor, ONE, ZERO, Q, alt,
                       is_zero, nullspace, plain, solve, unit, vadd, vneg, vscale, vsub,
                       vsum)
from .lie2core import AxiomError, AxiomReport, Hom2, Lie2Algebra, _check, verify_l2a
from .cohomology import (Complex2, Rep2, classical_is_cocycle, one_cocycle_check,
                         adjoint_rep, verify_rep)

HALF = Q("1/2")


# ------------------------------------------------------------------ Lie algebras

class LieAlgebra:
    def __init__(self, space: FinSpace, bracket: MultiTensor, name=""):
        if (tuple((b.space.dim, b.kind, b.arity) for b in bracket.blocks)
                != ((space.dim, "alt", 2),) or bracket.output.dim != space.dim):
            raise DimensionError("bracket must map alt^2 g to g")
        self.space, self.bracket, self.name = space, bracket, name

    @classmethod
    def from_table(cls, labels, table, name=""):
        """``table`` maps (label, label) -> {label: coefficient}."""
        sp = FinSpace(name or "g", tuple(labels))
        data = {}
        for (a, b), val in table.items():
            i, j = sp.index(a), sp.index(b)
            v = [ZERO] * sp.dim
            for lab, c in val.items():
                v[sp.index(lab)] += Q(c)
            if i > j:
                i, j, v = j, i, [-c for c in v]
            data[(i, j)] = tuple(v)
        return cls(sp, MultiTensor([alt(sp, 2)], sp, data), name)

    @classmethod
    def abelian(cls, n, name="ab"):
        sp = FinSpace.std(name, n, "e")
        return cls(sp, MultiTensor([alt(sp, 2)], sp), name)

    @property
    def dim(self):
        return self.space.dim

    def br(self, x, y):
        return self.bracket(x, y)

    def ad(self, x) -> LinMap:
        return LinMap.from_function(self.space, self.space, lambda y: self.bracket(x, y))

    def verify(self) -> AxiomReport:
        rp = AxiomReport()
        n = self.dim
        lab = self.space.labels
        for x in range(n):
            for y in range(x + 1, n):
                for z in range(y + 1, n):
                    v = vsum([self.br(self.br(x, y), z), self.br(self.br(y, z), x),
                              self.br(self.br(z, x), y)], n)
                    _check(rp, "jacobi", (lab[x], lab[y], lab[z]), v)
        return rp.finish()

    def as_lie2(self) -> Lie2Algebra:
        """The Lie algebra as a Lie 2-algebra 0 -> g."""
        zero = FinSpace("0", ())
        b00, b01, b3 = Lie2Algebra.blocks(self.space, zero)
        return Lie2Algebra(self.space, zero, LinMap.zero(zero, self.space), self.bracket,
                           MultiTensor(b01, zero), MultiTensor(b3, zero),
                           self.name)

    def transformed(self, P: LinMap, name=None) -> "LieAlgebra":
        """Bracket transported along the invertible map P."""
        Pi = P.inverse("basis change")
        br = MultiTensor.from_function(
            [alt(P.target, 2)], P.target,
            lambda x, y: P(self.br(Pi.column(x), Pi.column(y))))
        return LieAlgebra(P.target, br, name or self.name)


def sl2() -> LieAlgebra:
    return LieAlgebra.from_table(("e", "f", "h"), {
        ("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}}, "sl2")


def killing_form(g: LieAlgebra):
    """Matrix of tr(ad x ad y)."""
    ads = [g.ad(i) for i in range(g.dim)]
    return tuple(tuple(_trace(ads[i] @ ads[j]) for j in range(g.dim)) for i in range(g.dim))


def _trace(f: LinMap):
    return sum((f.matrix[i][i] for i in range(f.source.dim)), ZERO)


class LeibnizAlgebra:
    def __init__(self, space: FinSpace, bracket: MultiTensor, name=""):
        if (tuple((b.space.dim, b.kind, b.arity) for b in bracket.blocks)
                != ((space.dim, "plain", 1), (space.dim, "plain", 1))):
            raise DimensionError("Leibniz bracket must map g (x) g to g")
        self.space, self.bracket, self.name = space, bracket, name

    @classmethod
    def from_function(cls, space, fn, name=""):
        return cls(space, MultiTensor.from_function([plain(space), plain(space)], space, fn),
                   name)

    def br(self, x, y):
        return self.bracket(x, y)

    def verify(self) -> AxiomReport:
        rp = AxiomReport()
        n = self.space.dim
        lab = self.space.labels
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    v = vsub(self.br(x, self.br(y, z)),
                             vadd(self.br(self.br(x, y), z), self.br(y, self.br(x, z))))
                    _check(rp, "leibniz", (lab[x], lab[y], lab[z]), v)
        return rp.finish()

    def left_center(self):
        n = self.space.dim
        rows = []
        for y in range(n):
            for r in range(n):
                rows.append(tuple(self.br(x, y)[r] for x in range(n)))
        return nullspace(rows, n)


# ------------------------------------------------------------------- gl(V)

@dataclass
class GlComplex:
    """gl of a 2-term complex, with helpers to move between matrix pairs and
    coordinates."""
    algebra: Lie2Algebra
    V: Complex2
    basis0: list  # flat (A0, A1) vectors

    def coords0(self, A0, A1):
        """Coordinates of a matrix pair; None if it is not a chain map."""
        flat = _flat_pair(A0, A1)
        return solve(_columns_to_rows(self.basis0, len(flat)), flat, len(self.basis0))

    def pair(self, x):
        v0, v1 = self.V.V0.dim, self.V.Vm1.dim
        flat = vsum([vscale(c, self.basis0[i]) for i, c in enumerate(_vec(x, len(self.basis0)))
                     if c != 0], v0 * v0 + v1 * v1)
        A0 = tuple(tuple(flat[r * v0:(r + 1) * v0]) for r in range(v0))
        off = v0 * v0
        A1 = tuple(tuple(flat[off + r * v1: off + (r + 1) * v1]) for r in range(v1))
        return A0, A1

    def coordsm1(self, D):
        return tuple(c for r in D for c in r)

    def matrixm1(self, a):
        v0, v1 = self.V.V0.dim, self.V.Vm1.dim
        a = _vec(a, v0 * v1)
        return tuple(tuple(a[r * v0:(r + 1) * v0]) for r in range(v1))


def _vec(x, n):
    return unit(n, x) if isinstance(x, int) else tuple(x)


def _flat_pair(A0, A1):
    return tuple(c for r in A0 for c in r) + tuple(c for r in A1 for c in r)


def _columns_to_rows(cols, n):
    return [tuple(c[r] for c in cols) for r in range(n)]


def _mm(a, b, n_inner, n_col):
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n_inner)), ZERO)
                       for j in range(n_col)) for i in range(len(a)))


def _msub(a, b):
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def gl_data(V: Complex2) -> GlComplex:
    v0, v1 = V.V0.dim, V.Vm1.dim
    P = V.partial.matrix
    amb = v0 * v0 + v1 * v1
    labels = ([f"A{i + 1}{j + 1}" for i in range(v0) for j in range(v0)]
              + [f"B{i + 1}{j + 1}" for i in range(v1) for j in range(v1)])
    # A0 P - P A1 = 0 as a linear condition on (A0, A1)
    rows = []
    for i in range(v0):
        for j in range(v1):
            r = [ZERO] * amb
            for k in range(v0):
                r[i * v0 + k] += P[k][j]
            for k in range(v1):
                r[v0 * v0 + k * v1 + j] -= P[i][k]
            rows.append(tuple(r))
    basis = nullspace(rows, amb)
    lab0 = []
    for t, b in enumerate(basis):
        nz = [k for k, c in enumerate(b) if c != 0]
        lab0.append(labels[nz[0]] if len(nz) == 1 and b[nz[0]] == ONE else f"g{t + 1}")
    g0 = FinSpace("gl0", tuple(lab0))
    gm1 = FinSpace("gl-1", tuple(f"D{i + 1}{j + 1}" for i in range(v1) for j in range(v0)))
    tmp = GlComplex(None, V, basis)

    def comm(x, y):
        A0, A1 = tmp.pair(x)
        B0, B1 = tmp.pair(y)
        C0 = _msub(_mm(A0, B0, v0, v0), _mm(B0, A0, v0, v0))
        C1 = _msub(_mm(A1, B1, v1, v1), _mm(B1, A1, v1, v1))
        return tmp.coords0(C0, C1)

    def act(x, a):
        A0, A1 = tmp.pair(x)
        D = tmp.matrixm1(a)
        return tmp.coordsm1(_msub(_mm(A1, D, v1, v0), _mm(D, A0, v0, v0)))

    def delta(a):
        D = tmp.matrixm1(a)
        return tmp.coords0(_mm(P, D, v1, v0), _mm(D, P, v0, v1))

    dmap = LinMap.from_function(gm1, g0, delta)
    b00, b01, b3 = Lie2Algebra.blocks(g0, gm1)
    L = Lie2Algebra(g0, gm1, dmap, MultiTensor.from_function(b00, g0, comm),
                    MultiTensor.from_function(b01, gm1, act), MultiTensor(b3, gm1), "gl")
    tmp.algebra = L
    return tmp


def gl_of_complex(V: Complex2) -> Lie2Algebra:
    L = gl_data(V).algebra
    _require(verify_l2a(L), "gl(V)")
    return L


def rep_as_hom(rep: Rep2) -> Hom2 | AxiomReport:
    """Package a representation as a homomorphism into gl(V).

    Returns an AxiomReport with axiom "gl0" when some x does not act by a
    chain map (so no such homomorphism exists)."""
    G = gl_data(rep.V)
    g = rep.g
    cols = []
    rp = AxiomReport()
    for x in range(g.g0.dim):
        c = G.coords0(rep.A0[x], rep.A1[x])
        if c is None:
            rp.add("gl0", (g.g0.labels[x],), (ONE,))
            c = (ZERO,) * G.algebra.g0.dim
        cols.append(c)
    if not rp.passed:
        return rp.finish()
    phi0 = LinMap.from_columns(g.g0, G.algebra.g0, cols)
    phi1 = LinMap.from_function(g.gm1, G.algebra.gm1, lambda a: G.coordsm1(rep.B[a]))
    phi2 = MultiTensor.from_function([alt(g.g0, 2)], G.algebra.gm1,
                                     lambda x, y: G.coordsm1(rep.C[x, y]))
    return Hom2(g, G.algebra, phi0, phi1, phi2)


def _require(rp: AxiomReport, what):
    if not rp.passed:
        raise AxiomError(rp, what)


# ---------------------------------------------------------- skeletal / string

def skeletal_from_quadruple(g: LieAlgebra, V: FinSpace, rho: MultiTensor,
                            c3: MultiTensor, name="skeletal") -> Lie2Algebra:
    """d = 0 algebra from a Lie algebra, a module and a 3-cocycle."""
    _require(g.verify(), "Lie algebra")
    rp = AxiomReport()
    n = g.dim
    for x in range(n):
        for y in range(x + 1, n):
            for u in range(V.dim):
                v = vsub(rho(g.br(x, y), u),
                         vsub(rho(x, rho(y, u)), rho(y, rho(x, u))))
                _check(rp, "module", (g.space.labels[x], g.space.labels[y], V.labels[u]), v)
    _require(rp.finish(), "module")
    if not classical_is_cocycle(g.bracket, rho, c3):
        from .cohomology import classical_apply
        defect = classical_apply(g.bracket, rho, c3)
        rp = AxiomReport()
        for key, v in defect.items():
            rp.add("cocycle", tuple(g.space.labels[i] for i in key), v)
        raise AxiomError(rp.finish(), "3-cocycle")
    b00, b01, b3 = Lie2Algebra.blocks(g.space, V)
    L = Lie2Algebra(g.space, V, LinMap.zero(V, g.space), g.bracket,
                    rho.with_spaces(b01, V), c3.with_spaces(b3, V), name)
    _require(verify_l2a(L), "skeletal algebra")
    return L


def check_invariant_form(g: LieAlgebra, form) -> AxiomReport:
    rp = AxiomReport()
    n = g.dim
    lab = g.space.labels
    B = lambda u, v: sum((form[i][j] * u[i] * v[j] for i in range(n) for j in range(n)
                          if u[i] != 0 and v[j] != 0), ZERO)
    for i in range(n):
        for j in range(n):
            if form[i][j] != form[j][i]:
                rp.add("symmetric", (lab[i], lab[j]), (form[i][j] - form[j][i],))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                d = B(unit(n, x), g.br(y, z)) - B(g.br(x, y), unit(n, z))
                if d != 0:
                    rp.add("invariant", (lab[x], lab[y], lab[z]), (d,))
    return rp.finish()


def string(g: LieAlgebra, form=None, name=None) -> Lie2Algebra:
    """String Lie 2-algebra: l3(x,y,z) = (x,[y,z]) with d = 0 on Q -> g."""
    form = form if form is not None else killing_form(g)
    form = tuple(tuple(Q(c) for c in r) for r in form)
    _require(check_invariant_form(g, form), "invariant form")
    _require(g.verify(), "Lie algebra")
    n = g.dim
    R = FinSpace("R", ("c",))
    B = lambda i, v: sum((form[i][j] * v[j] for j in range(n) if v[j] != 0), ZERO)
    b00, b01, b3 = Lie2Algebra.blocks(g.space, R)
    L = Lie2Algebra(g.space, R, LinMap.zero(R, g.space), g.bracket, MultiTensor(b01, R),
                    MultiTensor.from_function(b3, R, lambda x, y, z: (B(x, g.br(y, z)),)),
                    name or f"String({g.name})")
    _require(verify_l2a(L), "string algebra")
    return L


# ----------------------------------------------------------------- Leibniz

def _coords_in(basis, v, what):
    c = solve(_columns_to_rows(basis, len(v)), v, len(basis))
    if c is None:
        raise ArithmeticError(f"{what} does not lie in the subspace")
    return c


def skew_symmetrize_leibniz(Lb: LeibnizAlgebra, name=None) -> Lie2Algebra:
    _require(Lb.verify(), "Leibniz algebra")
    g = Lb.space
    n = g.dim
    Zb = Lb.left_center()
    labs = []
    for t, b in enumerate(Zb):
        nz = [k for k, c in enumerate(b) if c != 0]
        labs.append(g.labels[nz[0]] if len(nz) == 1 and b[nz[0]] == ONE else f"z{t + 1}")
    Z = FinSpace("Z", tuple(labs))
    sk = lambda x, y: vscale(HALF, vsub(Lb.br(x, y), Lb.br(y, x)))
    rp = AxiomReport()
    jac = {}
    for x in range(n):
        for y in range(x + 1, n):
            for z in range(y + 1, n):
                J = vsum([sk(x, sk(y, z)), sk(y, sk(z, x)), sk(z, sk(x, y))], n)
                c = solve(_columns_to_rows(Zb, n), J, len(Zb)) if Zb else (
                    () if is_zero(J) else None)
                if c is None:
                    rp.add("J_in_center", (g.labels[x], g.labels[y], g.labels[z]), J)
                else:
                    jac[(x, y, z)] = tuple(c)
    _require(rp.finish(), "left center")
    d = LinMap.from_columns(Z, g, Zb)
    b00, b01, b3 = Lie2Algebra.blocks(g, Z)
    l2_01 = MultiTensor.from_function(
        b01, Z, lambda x, c: _coords_in(Zb, vscale(HALF, Lb.br(x, Zb[c])), "{x,c}"))
    l3 = MultiTensor(b3, Z, {k: v for k, v in jac.items() if not is_zero(v)})
    L = Lie2Algebra(g, Z, d, MultiTensor.from_function(b00, g, sk), l2_01, l3,
                    name or f"skew({Lb.name})")
    _require(verify_l2a(L), "skew-symmetrized Leibniz algebra")
    return L


def _omni_space(n):
    return FinSpace(f"omni{n}", tuple(f"E{i + 1}{j + 1}" for i in range(n) for j in range(n))
                    + tuple(f"u{i + 1}" for i in range(n)))


def _split(v, n):
    A = tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n))
    return A, tuple(v[n * n:])


def _join(A, u):
    return tuple(c for r in A for c in r) + tuple(u)


def _mv(A, u):
    return tuple(sum((A[i][j] * u[j] for j in range(len(u))), ZERO) for i in range(len(A)))


def _comm(A, B):
    n = len(A)
    return _msub(_mm(A, B, n, n), _mm(B, A, n, n))


def omni_leibniz(n: int) -> LeibnizAlgebra:
    """{A+u, B+v} = [A,B] + Av on gl(V) + V."""
    if n < 1:
        raise ValueError("n must be positive")
    sp = _omni_space(n)
    N = sp.dim

    def br(x, y):
        A, _ = _split(unit(N, x), n)
        B, v = _split(unit(N, y), n)
        return _join(_comm(A, B), _mv(A, v))

    return LeibnizAlgebra.from_function(sp, br, f"omni-Leibniz({n})")


def omni_lie(n: int) -> Lie2Algebra:
    if n < 1:
        raise ValueError("n must be positive")
    g0 = _omni_space(n)
    V = FinSpace("V", tuple(f"u{i + 1}" for i in range(n)))
    N = g0.dim
    parts = [_split(unit(N, i), n) for i in range(N)]
    quarter = Q("-1/4")

    def l200(x, y):
        (A, u), (B, v) = parts[x], parts[y]
        return _join(_comm(A, B), vscale(HALF, vsub(_mv(A, v), _mv(B, u))))

    def l201(x, c):
        A, _ = parts[x]
        return vscale(HALF, _mv(A, unit(n, c)))

    def l3(x, y, z):
        (A, u), (B, v), (C, w) = parts[x], parts[y], parts[z]
        return vscale(quarter, vsum([_mv(_comm(A, B), w), _mv(_comm(B, C), u),
                                     _mv(_comm(C, A), v)], n))

    d = LinMap.from_function(V, g0, lambda c: _join(((ZERO,) * n,) * n, unit(n, c)))
    L = Lie2Algebra.from_functions(g0, V, d, l200, l201, l3, f"omni({n})")
    _require(verify_l2a(L), "omni-Lie algebra")
    return L


# ---------------------------------------------------------------- semidirect

def rep_uth(g: LieAlgebra, V: Complex2, a0, a1, c) -> Rep2:
    """A 2-term representation up to homotopy of a Lie algebra, given by
    functions a0(x,u), a1(x,m), c(x,y,u)."""
    G = g.as_lie2()
    return Rep2.from_functions(G, V, a0, a1, lambda a, u: (), c)


def _join_labels(a, b, prefix):
    """Concatenate label tuples, prefixing the second when they clash."""
    if set(a) & set(b):
        b = tuple(prefix + x for x in b)
    return tuple(a) + tuple(b)


def semidirect(rep: Rep2, name="semidirect") -> Lie2Algebra:
    g = rep.g
    if g.gm1.dim:
        raise DimensionError("semidirect product needs a Lie algebra (g-1 = 0)")
    _require(verify_rep(rep), "representation up to homotopy")
    V = rep.V
    n, v0, v1 = g.g0.dim, V.V0.dim, V.Vm1.dim
    G0 = FinSpace(name + "0", _join_labels(g.g0.labels, V.V0.labels, "v."))
    G1 = FinSpace(name + "-1", V.Vm1.labels)
    sp = lambda i: (i, None) if i < n else (None, i - n)

    def br(x, y):
        (xi, ui), (yi, vi) = sp(x), sp(y)
        out = [ZERO] * (n + v0)
        if xi is not None and yi is not None:
            out[:n] = g.br(xi, yi)
        if xi is not None and vi is not None:
            out[n:] = vadd(out[n:], rep.a0(xi, vi))
        if yi is not None and ui is not None:
            out[n:] = vsub(out[n:], rep.a0(yi, ui))
        return tuple(out)

    def act(x, m):
        xi, _ = sp(x)
        return rep.a1(xi, m) if xi is not None else (ZERO,) * v1

    def jac(x, y, z):
        (xi, ui), (yi, vi), (zi, wi) = sp(x), sp(y), sp(z)
        out = (ZERO,) * v1
        for (p, q, r) in ((xi, yi, wi), (yi, zi, ui), (zi, xi, vi)):
            if p is not None and q is not None and r is not None:
                out = vsub(out, rep.c(p, q, r))
        return out

    d = LinMap.from_function(G1, G0, lambda m: ((ZERO,) * n) + tuple(V.partial.column(m)))
    L = Lie2Algebra.from_functions(G0, G1, d, br, act, jac, name)
    _require(verify_l2a(L), "semidirect product")
    return L


# ----------------------------------------------------------- crossed product

class ActionByDerivations:
    """g acting on m: a representation of g on the complex m-1 -> m0 together
    with l_phi0(x): alt^2 m0 -> m-1, linear in x."""

    def __init__(self, g: Lie2Algebra, m: Lie2Algebra, a0, a1, b, c, lphi: MultiTensor):
        self.g, self.m = g, m
        self.rep = Rep2(g, Complex2(m.g0, m.gm1, m.d), a0, a1, b, c)
        want = ((g.g0.dim, "plain", 1), (m.g0.dim, "alt", 2))
        if tuple((bl.space.dim, bl.kind, bl.arity) for bl in lphi.blocks) != want:
            raise DimensionError("l_phi0 must map g0 (x) alt^2 m0 to m-1")
        self.lphi = lphi

    @classmethod
    def from_functions(cls, g, m, a0, a1, b, c, lphi):
        r = Rep2.from_functions(g, Complex2(m.g0, m.gm1, m.d), a0, a1, b, c)
        lt = MultiTensor.from_function([plain(g.g0), alt(m.g0, 2)], m.gm1, lphi)
        return cls(g, m, r.a0, r.a1, r.b, r.c, lt)

    def derivation(self, x):
        """(phi0(x), l_phi0(x)) as maps."""
        m = self.m
        X0 = LinMap.from_function(m.g0, m.g0, lambda u: self.rep.a0(x, u))
        X1 = LinMap.from_function(m.gm1, m.gm1, lambda a: self.rep.a1(x, a))
        lX = MultiTensor.from_function([alt(m.g0, 2)], m.gm1,
                                       lambda u, v: self.lphi(x, u, v))
        return X0, X1, lX

    def verify(self) -> AxiomReport:
        rp = AxiomReport()
        rp.merge(verify_rep(self.rep), prefix="act.")
        ad = adjoint_rep(self.m)
        for x in range(self.g.g0.dim):
            sub = one_cocycle_check(ad, *self.derivation(x))
            for ax, wit, v in sub.failures:
                rp.add("der." + ax, (self.g.g0.labels[x],) + tuple(wit), v)
        return rp.finish()


def crossed_product(g: Lie2Algebra, m: Lie2Algebra, action: ActionByDerivations,
                    name="crossed", check=True) -> Lie2Algebra:
    if check:
        _require(action.verify(), "action by derivations")
    r = action.rep
    n0, n1 = g.dims
    k0, k1 = m.dims
    G0 = FinSpace(name + "0", _join_labels(g.g0.labels, m.g0.labels, "m."))
    G1 = FinSpace(name + "-1", _join_labels(g.gm1.labels, m.gm1.labels, "m."))
    s0 = lambda i: (i, None) if i < n0 else (None, i - n0)
    s1 = lambda i: (i, None) if i < n1 else (None, i - n1)
    z0, z1 = (ZERO,) * n0, (ZERO,) * n1
    zm0, zm1 = (ZERO,) * k0, (ZERO,) * k1

    def br(x, y):
        (xi, al), (yi, be) = s0(x), s0(y)
        gpart = g.br(xi, yi) if xi is not None and yi is not None else z0
        mpart = zm0
        if al is not None and be is not None:
            mpart = m.br(al, be)
        if xi is not None and be is not None:
            mpart = vadd(mpart, r.a0(xi, be))
        if yi is not None and al is not None:
            mpart = vsub(mpart, r.a0(yi, al))
        return tuple(gpart) + tuple(mpart)

    def act(x, a):
        (xi, al), (ai, mu) = s0(x), s1(a)
        gpart = g.act(xi, ai) if xi is not None and ai is not None else z1
        mpart = zm1
        if al is not None and mu is not None:
            mpart = m.act(al, mu)
        if xi is not None and mu is not None:
            mpart = vadd(mpart, r.a1(xi, mu))
        if ai is not None and al is not None:
            mpart = vsub(mpart, r.b(ai, al))
        return tuple(gpart) + tuple(mpart)

    def jac(x, y, z):
        (xi, al), (yi, be), (zi, ga) = s0(x), s0(y), s0(z)
        gpart = g.jac(xi, yi, zi) if None not in (xi, yi, zi) else z1
        mpart = m.jac(al, be, ga) if None not in (al, be, ga) else zm1
        for (p, q, u) in ((xi, yi, ga), (yi, zi, al), (zi, xi, be)):
            if None not in (p, q, u):
                mpart = vsub(mpart, r.c(p, q, u))
        for (p, u, v) in ((xi, be, ga), (yi, ga, al), (zi, al, be)):
            if None not in (p, u, v):
                mpart = vadd(mpart, action.lphi(p, u, v))
        return tuple(gpart) + tuple(mpart)

    d = LinMap.from_function(
        G1, G0, lambda a: (tuple(g.d.column(a)) + zm0) if a < n1
        else (z0 + tuple(m.d.column(a - n1))))
    L = Lie2Algebra.from_functions(G0, G1, d, br, act, jac, name)
    if check:
        _require(verify_l2a(L), "crossed product")
    return L


def crossed_product_maps(g: Lie2Algebra, m: Lie2Algebra, L: Lie2Algebra):
    """Projection L -> g and inclusion m -> L as strict maps."""
    n0, n1 = g.dims
    k0, k1 = m.dims
    p0 = LinMap.from_function(L.g0, g.g0, lambda i: unit(n0, i) if i < n0 else (ZERO,) * n0)
    p1 = LinMap.from_function(L.gm1, g.gm1, lambda i: unit(n1, i) if i < n1 else (ZERO,) * n1)
    i0 = LinMap.from_function(m.g0, L.g0, lambda i: unit(n0 + k0, n0 + i))
    i1 = LinMap.from_function(m.gm1, L.gm1, lambda i: unit(n1 + k1, n1 + i))
    return Hom2.strict(L, g, p0, p1), Hom2.strict(m, L, i0, i1)


def canonical_action(m: Lie2Algebra, D=None) -> tuple:
    """The identity action of Der(m) on m.  Returns (Der(m) algebra data, action)."""
    from .derdef import build_Der
    D = D if D is not None else build_Der(m)
    A = D.algebra
    a0 = lambda X, u: D.X0(X)(unit(m.g0.dim, u))
    a1 = lambda X, a: D.X1(X)(unit(m.gm1.dim, a))
    b = lambda T, u: D.theta(T)(unit(m.g0.dim, u))
    c = lambda X, Y, u: (ZERO,) * m.gm1.dim
    lphi = lambda X, u, v: D.lX(X)(u, v)
    return D, ActionByDerivations.from_functions(A, m, a0, a1, b, c, lphi)


# ------------------------------------------------ strict <-> crossed module

class LieCrossedModule:
    def __init__(self, m: LieAlgebra, g: LieAlgebra, varphi: LinMap, action: MultiTensor):
        self.m, self.g, self.varphi, self.action = m, g, varphi, action
        want = ((g.dim, "plain", 1), (m.dim, "plain", 1))
        if (tuple((b.space.dim, b.kind, b.arity) for b in action.blocks) != want
                or action.output.dim != m.dim):
            raise DimensionError("action must map g (x) m to m")
        if (varphi.source.dim, varphi.target.dim) != (m.dim, g.dim):
            raise DimensionError("varphi must map m to g")

    def act(self, x, a):
        return self.action(x, a)

    def verify(self) -> AxiomReport:
        rp = AxiomReport()
        rp.merge(self.m.verify(), prefix="m.")
        rp.merge(self.g.verify(), prefix="g.")
        m, g, phi = self.m, self.g, self.varphi
        ml, gl = m.space.labels, g.space.labels
        for a in range(m.dim):
            for b in range(a + 1, m.dim):
                _check(rp, "hom", (ml[a], ml[b]), vsub(phi(m.br(a, b)),
                                                       g.br(phi.column(a), phi.column(b))))
        for x in range(g.dim):
            for y in range(x + 1, g.dim):
                for a in range(m.dim):
                    v = vsub(self.act(g.br(x, y), a),
                             vsub(self.act(x, self.act(y, a)), self.act(y, self.act(x, a))))
                    _check(rp, "action", (gl[x], gl[y], ml[a]), v)
        for x in range(g.dim):
            for a in range(m.dim):
                for b in range(m.dim):
                    v = vsub(self.act(x, m.br(a, b)),
                             vadd(m.br(self.act(x, a), b), m.br(a, self.act(x, b))))
                    _check(rp, "derivation", (gl[x], ml[a], ml[b]), v)
        for x in range(g.dim):
            for a in range(m.dim):
                _check(rp, "equivariance", (gl[x], ml[a]),
                       vsub(phi(self.act(x, a)), g.br(x, phi.column(a))))
        for a in range(m.dim):
            for b in range(m.dim):
                _check(rp, "peiffer", (ml[a], ml[b]),
                       vsub(self.act(phi.column(a), b), m.br(a, b)))
        return rp.finish()


def strict_to_crossed(L: Lie2Algebra) -> LieCrossedModule:
    if not L.is_strict():
        raise ValueError("strict_to_crossed needs l3 = 0")
    mb = MultiTensor.from_function([alt(L.gm1, 2)], L.gm1,
                                   lambda a, b: L.act(L.d.column(a), b))
    m = LieAlgebra(L.gm1, mb, "m")
    g = LieAlgebra(L.g0, L.l2_00, "g")
    act = MultiTensor(L.l2_01.blocks, L.gm1, dict(L.l2_01.data))
    cm = LieCrossedModule(m, g, L.d, act)
    _require(cm.verify(), "crossed module")
    return cm


def crossed_to_strict(cm: LieCrossedModule, name="strict") -> Lie2Algebra:
    _require(cm.verify(), "crossed module")
    g0, gm1 = cm.g.space, cm.m.space
    b00, b01, b3 = Lie2Algebra.blocks(g0, gm1)
    L = Lie2Algebra(g0, gm1, cm.varphi, cm.g.bracket, cm.action.with_spaces(b01, gm1),
                    MultiTensor(b3, gm1), name)
    _require(verify_l2a(L), "strict Lie 2-algebra")
    return L
