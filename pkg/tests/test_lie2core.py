import random

import pytest

from lie2kit.cohomology import Complex2, CochainSpace, coboundary, trivial_rep
from lie2kit.constructions import gl_of_complex, skeletal_from_quadruple, sl2, string
from lie2kit.exactlin import (DimensionError, FinSpace, LinMap, MultiTensor, Q, ZERO, alt, plain,
                              image, kernel, random_matrix)
from lie2kit.lie2core import (AxiomError, Hom2, Lie2Algebra, TwoMorphism, compose,
                              equivalence_invariants, invert, skeletalize, verify_2mor,
                              verify_hom, verify_l2a)
from lie2kit.randgen import random_hom, random_l2a, with_acyclic

S = string(sl2())


def _scaled_l3(L, c):
    l3 = MultiTensor.from_function(L.l3.blocks, L.gm1,
                                   lambda x, y, z: tuple(c * v for v in L.jac(x, y, z)))
    return Lie2Algebra(L.g0, L.gm1, L.d, L.l2_00, L.l2_01, l3, L.name)


def test_abelian_passes_for_any_d():
    rng = random.Random(1)
    g0, gm1 = FinSpace.std("g", 2, "x"), FinSpace.std("m", 3, "a")
    for _ in range(5):
        d = LinMap(gm1, g0, random_matrix(rng, 2, 3))
        assert verify_l2a(Lie2Algebra.abelian(g0, gm1, d)).passed


def test_string_passes():
    assert verify_l2a(S).passed
    assert S.jac(0, 1, 2) == (8,)


def test_l3_perturbation_on_string_is_invisible():
    # on a 3-dim g0 with d = 0 every 3-form satisfies axioms (2)-(4)
    bumped = Lie2Algebra(S.g0, S.gm1, S.d, S.l2_00, S.l2_01,
                         S.l3 + MultiTensor.from_function(S.l3.blocks, S.gm1,
                                                          lambda x, y, z: (Q(1),)))
    assert verify_l2a(bumped).passed


def test_l3_perturbation_caught_with_witness():
    from lie2kit import l2a
    import os
    path = os.path.join(os.path.dirname(l2a.__file__), "data", "broken_jacobiator.l2a")
    L = l2a.loads(open(path).read())
    rp = verify_l2a(L)
    assert rp.axioms_failed() == ["4"]
    assert rp.failures[0][1] == ("e", "f", "h", "z")
    assert rp.failures[0][2] != (0,)


def test_shape_mismatch_raises():
    g0, gm1 = FinSpace.std("g", 2, "x"), FinSpace.std("m", 1, "a")
    with pytest.raises(DimensionError):
        Lie2Algebra(g0, gm1, LinMap.zero(g0, g0), S.l2_00, S.l2_01, S.l3)


def test_homomorphism_examples():
    assert verify_hom(Hom2.identity(S)).passed
    A = Lie2Algebra.abelian(FinSpace.std("b", 2, "y"), FinSpace.std("n", 1, "c"))
    z = Hom2(S, A, LinMap.zero(S.g0, A.g0), LinMap.zero(S.gm1, A.gm1),
             MultiTensor([alt(S.g0, 2)], A.gm1))
    assert verify_hom(z).passed
    S2 = _scaled_l3(S, 2)
    bad = Hom2(S, S2, LinMap.identity(S.g0), LinMap.identity(S.gm1),
               MultiTensor([alt(S.g0, 2)], S.gm1))
    assert verify_hom(bad).axioms_failed() == ["h3"]


def test_compose_and_invert():
    rng = random.Random(2)
    I = Hom2.identity(S)
    assert invert(I).same_maps(I)
    for _ in range(15):
        L = random_l2a(rng, 3)
        phi = random_hom(rng, L)
        assert verify_hom(phi).passed
        assert compose(Hom2.identity(phi.target), phi).same_maps(phi)
        inv = invert(phi)
        assert verify_hom(inv).passed
        assert compose(inv, phi).same_maps(Hom2.identity(L))
        assert compose(phi, inv).same_maps(Hom2.identity(phi.target))


def test_strict_compose_and_permutation_inverse():
    # Chevalley involution e<->f, h->-h preserves the Killing form
    P = LinMap(S.g0, S.g0, ((0, 1, 0), (1, 0, 0), (0, 0, -1)))
    phi = Hom2.strict(S, S, P, LinMap.identity(S.gm1))
    assert verify_hom(phi).passed
    inv = invert(phi)
    assert inv.is_strict() and inv.phi0.matrix == P.matrix
    assert compose(phi, phi).is_strict()


def test_two_morphisms():
    I = Hom2.identity(S)
    assert verify_2mor(TwoMorphism(I, I, LinMap.zero(S.g0, S.gm1))).passed
    tau = LinMap(S.g0, S.gm1, ((1, 0, 0),))
    # d = 0 so (id, id, 0) => (id, id, 0) satisfies the first laws but not the bracket law
    rp = verify_2mor(TwoMorphism(I, I, tau))
    assert rp.axioms_failed() == ["t2"]


def test_skeletalize_fixed_point():
    sk = skeletalize(S)
    assert sk.skeleton.same_constants(S)
    assert sk.to.same_maps(Hom2.identity(S)) and sk.back.same_maps(Hom2.identity(S))
    assert sk.contraction.is_zero()


def test_skeletalize_acyclic_and_gl():
    one = FinSpace("Q", ("x",))
    acyc = Lie2Algebra.abelian(one, FinSpace("Qm", ("a",)),
                               LinMap(FinSpace("Qm", ("a",)), one, ((1,),)))
    assert skeletalize(acyc).skeleton.dims == (0, 0)
    V = Complex2(one, FinSpace("Qm", ("a",)), LinMap(FinSpace("Qm", ("a",)), one, ((1,),)))
    G = gl_of_complex(V)
    d = G.d
    want = (G.g0.dim - image(d).dim, kernel(d).dim)
    assert skeletalize(G).skeleton.dims == want


def test_skeletalize_random_is_equivalence():
    rng = random.Random(3)
    for _ in range(12):
        L = random_l2a(rng, 3)
        sk = skeletalize(L)   # raises AxiomError on any failed law
        assert sk.skeleton.is_skeletal()


def test_invariants():
    assert equivalence_invariants(S).l3_class_zero is False
    A = Lie2Algebra.abelian(FinSpace.std("b", 2, "y"), FinSpace.std("n", 1, "c"))
    inv = equivalence_invariants(A)
    assert inv.l3_class_zero and inv.derived_dim == 0 and inv.module_image_dim == 0


def test_invariants_coboundary_class():
    from lie2kit.randgen import lie_catalog
    g = [h for h in lie_catalog(3) if h.name == "r3b"][0]   # tr ad_x = 2, so B^3 != 0
    V = FinSpace.std("V", 1, "v")
    rho = MultiTensor.from_function([plain(g.space), plain(V)], V, lambda x, u: (ZERO,))
    from lie2kit.cohomology import classical_apply
    b = MultiTensor.from_function([alt(g.space, 2)], V, lambda x, y: (Q(x + 2 * y),))
    c3 = classical_apply(g.bracket, rho, b)
    assert not c3.is_zero()
    L = skeletal_from_quadruple(g, V, rho, c3)
    assert equivalence_invariants(L).l3_class_zero is True
