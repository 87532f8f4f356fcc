"""Lie 2-algebras (2-term L-infinity algebras), their morphisms and 2-morphisms.

Conventions.  ``l2_00(x, y)`` is the bracket on g0, ``l2_01(x, a)`` is
[x, a] for x in g0 and a in g-1, and [a, x] = -[x, a].  ``l3`` is the
Jacobiator.  Axiom ids used in reports:

* ``1a``  d[x,a] = [x,da]
* ``1b``  [da,b] = [a,db], i.e. l2_01(da,b) + l2_01(db,a) = 0
* ``2``   [[x,y],z] + c.p. = -d l3(x,y,z)
* ``3``   [[x,y],a] + [[y,a],x] + [[a,x],y] = -l3(x,y,da)
* ``4``   the coherence law for l3
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .exactlin import (DimensionError, FinSpace, LinMap, MultiTensor, ONE, ZERO,
                       SingularMapError, alt, complement, image, inverse_matrix,
                       is_zero, kernel, plain, unit, vadd, vneg, vsub, vsum, vzero)


class AxiomError(ValueError):
    """Raised by checked constructors when the data fails its laws."""

    def __init__(self, report, what="structure"):
        self.report = report
        first = report.failures[0] if report.failures else None
        msg = f"{what} fails axiom {first[0]} at {first[1]}" if first else f"{what} invalid"
        super().__init__(msg)


@dataclass
class AxiomReport:
    passed: bool = True
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def add(self, axiom, witness, defect):
        self.failures.append((axiom, tuple(witness), tuple(defect)))
        self.passed = False

    def merge(self, other, prefix=""):
        for a, w, d in other.failures:
            self.add(prefix + a, w, d)
        return self

    def finish(self):
        self.failures.sort(key=lambda f: (f[0], f[1]))
        self.passed = not self.failures
        return self

    def axioms_failed(self):
        return sorted({f[0] for f in self.failures})

    def __bool__(self):
        return self.passed


def _check(report, axiom, witness, vec):
    if not is_zero(vec):
        report.add(axiom, witness, vec)


# ------------------------------------------------------------ the algebra

class Lie2Algebra:
    """g_{-1} --d--> g_0 with l2 (two components) and l3."""

    def __init__(self, g0: FinSpace, gm1: FinSpace, d: LinMap,
                 l2_00: MultiTensor, l2_01: MultiTensor, l3: MultiTensor, name=""):
        self.g0, self.gm1 = g0, gm1
        self.d, self.l2_00, self.l2_01, self.l3 = d, l2_00, l2_01, l3
        self.name = name
        self._check_shapes()

    def _check_shapes(self):
        n0, n1 = self.g0.dim, self.gm1.dim
        if (self.d.source.dim, self.d.target.dim) != (n1, n0):
            raise DimensionError("d must map g-1 to g0")
        want = {
            "l2_00": (((n0, "alt", 2),), n0),
            "l2_01": (((n0, "plain", 1), (n1, "plain", 1)), n1),
            "l3": (((n0, "alt", 3),), n1),
        }
        for nm, (blocks, out) in want.items():
            t = getattr(self, nm)
            got = tuple((b.space.dim, b.kind, b.arity) for b in t.blocks)
            if got != blocks or t.output.dim != out:
                raise DimensionError(f"{nm} has shape {got}->{t.output.dim}, "
                                     f"expected {blocks}->{out}")

    # blocks used by every algebra over these spaces
    @staticmethod
    def blocks(g0, gm1):
        return ([alt(g0, 2)], [plain(g0), plain(gm1)], [alt(g0, 3)])

    @classmethod
    def from_functions(cls, g0, gm1, d, br, act, jac, name=""):
        b00, b01, b3 = cls.blocks(g0, gm1)
        return cls(g0, gm1, d,
                   MultiTensor.from_function(b00, g0, br),
                   MultiTensor.from_function(b01, gm1, act),
                   MultiTensor.from_function(b3, gm1, jac), name)

    @classmethod
    def abelian(cls, g0, gm1, d=None, name="abelian"):
        d = d if d is not None else LinMap.zero(gm1, g0)
        b00, b01, b3 = cls.blocks(g0, gm1)
        return cls(g0, gm1, d, MultiTensor(b00, g0), MultiTensor(b01, gm1),
                   MultiTensor(b3, gm1), name)

    @classmethod
    def checked(cls, *args, **kw):
        alg = cls(*args, **kw)
        rep = verify_l2a(alg)
        if not rep.passed:
            raise AxiomError(rep, "Lie 2-algebra")
        return alg

    # evaluation helpers (ints are basis indices)
    def br(self, x, y):
        return self.l2_00(x, y)

    def act(self, x, a):
        return self.l2_01(x, a)

    def jac(self, x, y, z):
        return self.l3(x, y, z)

    def dm(self, a):
        return self.d(a)

    @property
    def dims(self):
        return (self.g0.dim, self.gm1.dim)

    def is_strict(self):
        return self.l3.is_zero()

    def is_skeletal(self):
        return self.d.is_zero()

    def relabel(self, g0, gm1, name=None):
        b00, b01, b3 = self.blocks(g0, gm1)
        return Lie2Algebra(g0, gm1, self.d.with_spaces(gm1, g0),
                           self.l2_00.with_spaces(b00, g0),
                           self.l2_01.with_spaces(b01, gm1),
                           self.l3.with_spaces(b3, gm1), name or self.name)

    def __eq__(self, other):
        return (isinstance(other, Lie2Algebra)
                and self.g0.labels == other.g0.labels
                and self.gm1.labels == other.gm1.labels
                and self.d.matrix == other.d.matrix
                and self.l2_00.data == other.l2_00.data
                and self.l2_01.data == other.l2_01.data
                and self.l3.data == other.l3.data)

    def same_constants(self, other):
        """Equality of structure constants, ignoring labels."""
        return (self.dims == other.dims and self.d.matrix == other.d.matrix
                and self.l2_00.data == other.l2_00.data
                and self.l2_01.data == other.l2_01.data
                and self.l3.data == other.l3.data)

    __hash__ = object.__hash__

    def __repr__(self):
        return (f"Lie2Algebra({self.name or '?'}: dim g0={self.g0.dim}, "
                f"dim g-1={self.gm1.dim}, strict={self.is_strict()}, "
                f"skeletal={self.is_skeletal()})")


def verify_l2a(L: Lie2Algebra) -> AxiomReport:
    L._check_shapes()
    rep = AxiomReport()
    n0, n1 = L.dims
    g0l, g1l = L.g0.labels, L.gm1.labels
    br, act, j, d = L.l2_00, L.l2_01, L.l3, L.d
    dcols = [d(a) for a in range(n1)]
    for x in range(n0):
        for a in range(n1):
            _check(rep, "1a", (g0l[x], g1l[a]), vsub(d(act(x, a)), br(x, dcols[a])))
    for a in range(n1):
        for b in range(a, n1):
            _check(rep, "1b", (g1l[a], g1l[b]), vadd(act(dcols[a], b), act(dcols[b], a)))
    brs = {(x, y): br(x, y) for x in range(n0) for y in range(n0)}
    for x in range(n0):
        for y in range(x + 1, n0):
            for z in range(y + 1, n0):
                v = vsum([br(brs[x, y], z), br(brs[y, z], x), br(brs[z, x], y),
                          d(j(x, y, z))], n0)
                _check(rep, "2", (g0l[x], g0l[y], g0l[z]), v)
    for x in range(n0):
        for y in range(x + 1, n0):
            for a in range(n1):
                v = vsum([act(brs[x, y], a), vneg(act(x, act(y, a))),
                          act(y, act(x, a)), j(x, y, dcols[a])], n1)
                _check(rep, "3", (g0l[x], g0l[y], g1l[a]), v)
    if not j.is_zero():
        for w in range(n0):
            for x in range(w + 1, n0):
                for y in range(x + 1, n0):
                    for z in range(y + 1, n0):
                        v = vsum([
                            j(brs[w, x], y, z), vneg(j(brs[w, y], x, z)), j(brs[w, z], x, y),
                            j(brs[x, y], w, z), j(brs[y, z], w, x), vneg(j(brs[x, z], w, y)),
                            act(z, j(w, x, y)), act(x, j(w, y, z)),
                            vneg(act(y, j(w, x, z))), vneg(act(w, j(x, y, z)))], n1)
                        _check(rep, "4", (g0l[w], g0l[x], g0l[y], g0l[z]), v)
    return rep.finish()


# ------------------------------------------------------------ morphisms

class Hom2:
    def __init__(self, source: Lie2Algebra, target: Lie2Algebra,
                 phi0: LinMap, phi1: LinMap, phi2: MultiTensor):
        self.source, self.target = source, target
        self.phi0, self.phi1, self.phi2 = phi0, phi1, phi2
        self._check_shapes()

    def _check_shapes(self):
        s, t = self.source, self.target
        if (self.phi0.source.dim, self.phi0.target.dim) != (s.g0.dim, t.g0.dim):
            raise DimensionError("phi0 must map g0 to h0")
        if (self.phi1.source.dim, self.phi1.target.dim) != (s.gm1.dim, t.gm1.dim):
            raise DimensionError("phi1 must map g-1 to h-1")
        p2 = self.phi2
        if (tuple((b.space.dim, b.kind, b.arity) for b in p2.blocks) != ((s.g0.dim, "alt", 2),)
                or p2.output.dim != t.gm1.dim):
            raise DimensionError("phi2 must map alt^2 g0 to h-1")

    @classmethod
    def identity(cls, L):
        return cls(L, L, LinMap.identity(L.g0), LinMap.identity(L.gm1),
                   MultiTensor([alt(L.g0, 2)], L.gm1))

    @classmethod
    def strict(cls, source, target, phi0, phi1):
        return cls(source, target, phi0, phi1, MultiTensor([alt(source.g0, 2)], target.gm1))

    def is_strict(self):
        return self.phi2.is_zero()

    def same_maps(self, other):
        return (self.phi0.matrix == other.phi0.matrix
                and self.phi1.matrix == other.phi1.matrix
                and self.phi2.data == other.phi2.data)

    def __repr__(self):
        return f"Hom2({self.source.name}->{self.target.name})"


def verify_hom(h: Hom2) -> AxiomReport:
    h._check_shapes()
    g, t = h.source, h.target
    p0, p1, p2 = h.phi0, h.phi1, h.phi2
    rep = AxiomReport()
    n0, n1 = g.dims
    l0, l1 = g.g0.labels, g.gm1.labels
    P0 = [p0.column(i) for i in range(n0)]
    for a in range(n1):
        _check(rep, "chain", (l1[a],), vsub(p0(g.d.column(a)), t.d(p1.column(a))))
    for x in range(n0):
        for y in range(x + 1, n0):
            v = vsub(vsub(p0(g.br(x, y)), t.br(P0[x], P0[y])), t.d(p2(x, y)))
            _check(rep, "h1", (l0[x], l0[y]), v)
    for x in range(n0):
        for a in range(n1):
            v = vsub(vsub(p1(g.act(x, a)), t.act(P0[x], p1.column(a))),
                     p2(x, g.d.column(a)))
            _check(rep, "h2", (l0[x], l1[a]), v)
    brs = {(x, y): g.br(x, y) for x in range(n0) for y in range(n0)}
    m = t.gm1.dim
    for x in range(n0):
        for y in range(x + 1, n0):
            for z in range(y + 1, n0):
                lhs = vsub(p1(g.jac(x, y, z)), t.jac(P0[x], P0[y], P0[z]))
                rhs = vsum([t.act(P0[x], p2(y, z)), t.act(P0[y], p2(z, x)),
                            t.act(P0[z], p2(x, y)),
                            vneg(p2(brs[x, y], z)), vneg(p2(brs[y, z], x)),
                            vneg(p2(brs[z, x], y))], m)
                _check(rep, "h3", (l0[x], l0[y], l0[z]), vsub(lhs, rhs))
    return rep.finish()


def _require_same(a: Lie2Algebra, b: Lie2Algebra, what):
    if a is b:
        return
    if a.dims != b.dims or not a.same_constants(b):
        raise DimensionError(f"{what}: algebras do not match")


def compose(psi: Hom2, phi: Hom2) -> Hom2:
    """psi after phi."""
    _require_same(phi.target, psi.source, "compose")
    p0 = phi.phi0
    c2 = MultiTensor.from_function(
        [alt(phi.source.g0, 2)], psi.target.gm1,
        lambda x, y: vadd(psi.phi2(p0.column(x), p0.column(y)), psi.phi1(phi.phi2(x, y))))
    return Hom2(phi.source, psi.target, psi.phi0 @ phi.phi0, psi.phi1 @ phi.phi1, c2)


def invert(phi: Hom2) -> Hom2:
    i0 = phi.phi0.inverse("phi0")
    i1 = phi.phi1.inverse("phi1")
    c2 = MultiTensor.from_function(
        [alt(phi.target.g0, 2)], phi.source.gm1,
        lambda x, y: vneg(i1(phi.phi2(i0.column(x), i0.column(y)))))
    return Hom2(phi.target, phi.source, i0, i1, c2)


# ----------------------------------------------------------- 2-morphisms

class TwoMorphism:
    def __init__(self, from_hom: Hom2, to_hom: Hom2, tau: LinMap):
        self.from_hom, self.to_hom, self.tau = from_hom, to_hom, tau
        g, h = from_hom.source, from_hom.target
        if (tau.source.dim, tau.target.dim) != (g.g0.dim, h.gm1.dim):
            raise DimensionError("tau must map g0 to h-1")

    def __repr__(self):
        return f"TwoMorphism({self.from_hom} => {self.to_hom})"


def verify_2mor(t: TwoMorphism) -> AxiomReport:
    phi, psi, tau = t.from_hom, t.to_hom, t.tau
    _require_same(phi.source, psi.source, "2-morphism source")
    _require_same(phi.target, psi.target, "2-morphism target")
    g, h = phi.source, phi.target
    rep = AxiomReport()
    n0, n1 = g.dims
    l0, l1 = g.g0.labels, g.gm1.labels
    for x in range(n0):
        v = vsub(vsub(psi.phi0.column(x), phi.phi0.column(x)), h.d(tau.column(x)))
        _check(rep, "t1a", (l0[x],), v)
    for a in range(n1):
        v = vsub(vsub(psi.phi1.column(a), phi.phi1.column(a)), tau(g.d.column(a)))
        _check(rep, "t1b", (l1[a],), v)
    for x in range(n0):
        for y in range(x + 1, n0):
            lhs = vsub(psi.phi2(x, y), phi.phi2(x, y))
            # [tau x, psi0 y] = -[psi0 y, tau x]
            rhs = vsum([tau(g.br(x, y)), vneg(h.act(phi.phi0.column(x), tau.column(y))),
                        h.act(psi.phi0.column(y), tau.column(x))], h.gm1.dim)
            _check(rep, "t2", (l0[x], l0[y]), vsub(lhs, rhs))
    return rep.finish()


# -------------------------------------------------------- skeletalization

def _adapted_labels(space, vectors, prefix):
    labels = []
    for i, v in enumerate(vectors):
        nz = [k for k, c in enumerate(v) if c != 0]
        if len(nz) == 1 and v[nz[0]] == ONE:
            labels.append(space.labels[nz[0]])
        else:
            labels.append(f"{prefix}{i + 1}")
    if len(set(labels)) != len(labels):
        labels = [f"{prefix}{i + 1}" for i in range(len(vectors))]
    return tuple(labels)


@dataclass
class Skeletalization:
    skeleton: Lie2Algebra
    to: Hom2
    back: Hom2
    h1: TwoMorphism  # to . back => Id(skeleton)
    h2: TwoMorphism  # back . to => Id(L)
    contraction: LinMap

    def __iter__(self):
        return iter((self.skeleton, self.to, self.back, self.h1, self.h2))


def skeletalize(L: Lie2Algebra, check=True) -> Skeletalization:
    """Skeletal model ker d -> coker d with the equivalence data.

    Splittings g0 = im d + C and g-1 = ker d + K are chosen by pivoting; h is
    the contraction (d restricted to K)^{-1} on im d and 0 on C.
    """
    n0, n1 = L.dims
    imd = image(L.d)
    kerd = kernel(L.d)
    C = complement(imd)  # unit indices in g0
    K = complement(kerd)  # unit indices in g-1
    adapted0 = [L.d.column(k) for k in K] + [unit(n0, c) for c in C]
    inv0 = inverse_matrix(tuple(tuple(b[i] for b in adapted0) for i in range(n0)), "g0 split")
    adapted1 = list(kerd.basis) + [unit(n1, k) for k in K]
    inv1 = inverse_matrix(tuple(tuple(b[i] for b in adapted1) for i in range(n1)), "g-1 split")
    nk, nc, nz = len(K), len(C), kerd.dim

    H0 = FinSpace(f"H0({L.name})" if L.name else "H0",
                  tuple(L.g0.labels[c] for c in C))
    Hm1 = FinSpace(f"H-1({L.name})" if L.name else "H-1",
                   _adapted_labels(L.gm1, kerd.basis, "k"))
    p0 = LinMap(L.g0, H0, inv0[nk:])
    i0 = LinMap.from_columns(H0, L.g0, [unit(n0, c) for c in C])
    p1 = LinMap(L.gm1, Hm1, inv1[:nz])
    i1 = LinMap.from_columns(Hm1, L.gm1, list(kerd.basis))
    # h: g0 -> g-1, coordinates along d(e_k) mapped back to e_k
    hmat = [[ZERO] * n0 for _ in range(n1)]
    for r, k in enumerate(K):
        for col in range(n0):
            hmat[k][col] = inv0[r][col]
    h = LinMap(L.g0, L.gm1, hmat)

    b00, b01, b3 = Lie2Algebra.blocks(H0, Hm1)
    I0 = [i0.column(x) for x in range(nc)]
    sbr = MultiTensor.from_function(b00, H0, lambda x, y: p0(L.br(I0[x], I0[y])))
    sact = MultiTensor.from_function(b01, Hm1, lambda x, a: p1(L.act(I0[x], i1.column(a))))
    i2 = MultiTensor.from_function([alt(H0, 2)], L.gm1,
                                   lambda x, y: vneg(h(L.br(I0[x], I0[y]))))

    def l3s(x, y, z):
        v = vsum([L.jac(I0[x], I0[y], I0[z]),
                  L.act(I0[x], i2(y, z)), L.act(I0[y], i2(z, x)), L.act(I0[z], i2(x, y)),
                  vneg(i2(sbr(x, y), z)), vneg(i2(sbr(y, z), x)), vneg(i2(sbr(z, x), y))],
                 n1)
        if not is_zero(L.d(v)):
            raise ArithmeticError("transferred l3 leaves ker d")
        return p1(v)

    sl3 = MultiTensor.from_function(b3, Hm1, l3s)
    S = Lie2Algebra(H0, Hm1, LinMap.zero(Hm1, H0), sbr, sact, sl3,
                    name=f"skel({L.name})" if L.name else "skel")

    def p2f(x, y):
        ex, ey = unit(n0, x), unit(n0, y)
        px, py = i0(p0(ex)), i0(p0(ey))
        v = vsum([vneg(h(L.br(x, y))), h(L.br(px, py)),
                  L.act(px, h(ey)), vneg(L.act(y, h(ex)))], n1)
        return p1(v)

    p2 = MultiTensor.from_function([alt(L.g0, 2)], Hm1, p2f)
    to = Hom2(L, S, p0, p1, p2)
    back = Hom2(S, L, i0, i1, i2)
    h1 = TwoMorphism(compose(to, back), Hom2.identity(S), LinMap.zero(H0, Hm1))
    h2 = TwoMorphism(compose(back, to), Hom2.identity(L), h)
    out = Skeletalization(S, to, back, h1, h2, h)
    if check:
        for what, r in (("skeleton", verify_l2a(S)), ("to", verify_hom(to)),
                        ("from", verify_hom(back)), ("h1", verify_2mor(h1)),
                        ("h2", verify_2mor(h2))):
            if not r.passed:
                raise AxiomError(r, f"skeletalization {what}")
    return out


# ------------------------------------------------------ invariants

@dataclass
class EquivalenceInvariants:
    dim_h0: int
    dim_hm1: int
    bracket: dict
    action: dict
    derived_dim: int
    center_dim: int
    module_invariants_dim: int
    module_image_dim: int
    l3_class_zero: bool
    skeleton: Lie2Algebra = None

    def key(self):
        """Data compared when certifying inequivalence."""
        return (self.dim_h0, self.dim_hm1, self.derived_dim, self.center_dim,
                self.module_invariants_dim, self.module_image_dim, self.l3_class_zero)


def equivalence_invariants(L: Lie2Algebra) -> EquivalenceInvariants:
    from .cohomology import classical_is_coboundary
    from .exactlin import rank_of

    S = skeletalize(L).skeleton
    n, m = S.dims
    bracket = {k: v for k, v in S.l2_00.items()}
    action = {k: v for k, v in S.l2_01.items()}
    derived = rank_of([S.br(x, y) for x in range(n) for y in range(x + 1, n)], n)
    # center: x with [x, y] = 0 for all y
    rows = []
    for y in range(n):
        cols = [S.br(x, y) for x in range(n)]
        rows.extend([c[i] for c in cols] for i in range(n))
    center = n - rank_of(rows, n)
    # invariants of the module: a with [x, a] = 0 for all x
    rows = []
    for x in range(n):
        cols = [S.act(x, a) for a in range(m)]
        rows.extend([c[i] for c in cols] for i in range(m))
    inv = m - rank_of(rows, m)
    img = rank_of([S.act(x, a) for x in range(n) for a in range(m)], m)
    zero_class = classical_is_coboundary(S.l2_00, S.l2_01, S.l3)
    return EquivalenceInvariants(n, m, bracket, action, derived, center, inv, img,
                                 zero_class, S)


def certify_inequivalent(L1: Lie2Algebra, L2: Lie2Algebra) -> bool:
    """True when the computed invariants differ (so L1, L2 are not equivalent)."""
    return equivalence_invariants(L1).key() != equivalence_invariants(L2).key()
