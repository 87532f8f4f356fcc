import random

import pytest

from lie2kit.cohomology import Complex2, Rep2, adjoint_rep, classical_apply, verify_rep
from lie2kit.constructions import (LeibnizAlgebra, LieAlgebra, canonical_action,
                                   crossed_product, crossed_product_maps, crossed_to_strict,
                                   gl_of_complex, killing_form, omni_leibniz, omni_lie,
                                   rep_uth, semidirect, skeletal_from_quadruple,
                                   skew_symmetrize_leibniz, sl2, strict_to_crossed, string)
from lie2kit.exactlin import (FinSpace, LinMap, MultiTensor, Q, ZERO, alt, plain, unit, vzero)
from lie2kit.lie2core import (AxiomError, Lie2Algebra, equivalence_invariants, verify_hom,
                              verify_l2a)


def test_gl_degenerate_complex():
    V = Complex2.concentrated(FinSpace.std("V", 2, "v"))
    G = gl_of_complex(V)
    assert G.dims == (4, 0) and G.is_strict()
    assert verify_l2a(G).passed


def test_gl_identity_complex():
    one, onem = FinSpace("Q", ("u",)), FinSpace("Qm", ("m",))
    G = gl_of_complex(Complex2(one, onem, LinMap(onem, one, ((1,),))))
    assert G.dims == (1, 1)
    assert G.is_strict() and verify_l2a(G).passed


def test_killing_form_values():
    K = killing_form(sl2())
    assert K[2][2] == 8 and K[0][1] == 4 and K[0][0] == 0


def test_string_examples():
    S = string(sl2())
    assert S.jac(0, 1, 2) == (8,)      # kappa(e, [f, h]) = kappa(e, 2f)
    ab = string(LieAlgebra.abelian(2), form=((1, 0), (0, 1)))
    assert ab.l3.is_zero()


def test_string_rejects_non_invariant_form():
    with pytest.raises(AxiomError):
        string(sl2(), form=((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_quadruple_cartan_form_is_string():
    g = sl2()
    R = FinSpace("R", ("c",))
    rho = MultiTensor([plain(g.space), plain(R)], R)
    S = string(g)
    c3 = MultiTensor(S.l3.blocks, R, dict(S.l3.data))
    L = skeletal_from_quadruple(g, R, rho, c3)
    assert L.same_constants(S)
    zero = skeletal_from_quadruple(g, R, rho, MultiTensor(S.l3.blocks, R))
    assert zero.is_strict() and zero.is_skeletal()


def test_quadruple_coboundary_equivalent_to_zero():
    from lie2kit.randgen import lie_catalog
    g = [h for h in lie_catalog(3) if h.name == "r3b"][0]
    V = FinSpace("V", ("v",))
    rho = MultiTensor([plain(g.space), plain(V)], V)
    b = MultiTensor.from_function([alt(g.space, 2)], V, lambda x, y: (Q(x - y),))
    c3 = classical_apply(g.bracket, rho, b)
    L1 = skeletal_from_quadruple(g, V, rho, c3)
    L0 = skeletal_from_quadruple(g, V, rho, MultiTensor(c3.blocks, V))
    assert not L1.is_strict()
    assert equivalence_invariants(L1).key() == equivalence_invariants(L0).key()


def test_lie_as_leibniz():
    g = sl2()
    Lb = LeibnizAlgebra(g.space, MultiTensor.from_function(
        [plain(g.space), plain(g.space)], g.space, g.br))
    L = skew_symmetrize_leibniz(Lb)
    assert L.gm1.dim == 0 and L.l3.is_zero()


def test_two_dim_leibniz():
    sp = FinSpace("k", ("e1", "e2"))
    Lb = LeibnizAlgebra.from_function(sp, lambda x, y: (ZERO, Q(1)) if x == y == 0
                                      else (ZERO, ZERO))
    assert Lb.verify().passed
    assert Lb.left_center() == [(0, 1)]
    L = skew_symmetrize_leibniz(Lb)
    assert L.gm1.labels == ("e2",)
    assert L.l2_00.is_zero() and L.l3.is_zero()
    assert verify_l2a(L).passed


def test_omni_examples():
    o1 = omni_lie(1)
    assert o1.l3.is_zero() and verify_l2a(o1).passed
    o2 = omni_lie(2)
    lab = o2.g0.labels
    got = o2.br(lab.index("E12"), lab.index("E21"))
    want = [0] * 6
    want[lab.index("E11")], want[lab.index("E22")] = 1, -1
    assert list(got) == want
    assert omni_leibniz(2).left_center() == [unit(6, 4), unit(6, 5)]
    for n in (1, 2, 3):
        assert skew_symmetrize_leibniz(omni_leibniz(n)) == omni_lie(n)


def test_semidirect_trivial_and_adjoint():
    g = sl2()
    V = Complex2.concentrated(FinSpace.std("V", 2, "v"))
    triv = rep_uth(g, V, lambda x, u: vzero(2), lambda x, m: (), lambda x, y, u: ())
    L = semidirect(triv)
    assert L.l3.is_zero() and L.dims == (5, 0)
    assert L.br(0, 3) == vzero(5)
    ad = Complex2.concentrated(g.space)
    L2 = semidirect(rep_uth(g, ad, lambda x, u: g.br(x, u), lambda x, m: (),
                            lambda x, y, u: ()))
    assert verify_l2a(L2).passed and L2.is_strict()


def test_crossed_product_direct_sum():
    g = sl2().as_lie2()
    m = Lie2Algebra.abelian(FinSpace.std("m0", 1, "p"), FinSpace.std("m1", 1, "q"))
    from lie2kit.constructions import ActionByDerivations
    act = ActionByDerivations.from_functions(
        g, m, lambda x, u: (ZERO,), lambda x, a: (ZERO,), lambda a, u: (ZERO,),
        lambda x, y, u: (ZERO,), lambda x, u, v: (ZERO,))
    L = crossed_product(g, m, act)
    assert L.dims == (4, 1) and verify_l2a(L).passed
    assert L.br(0, 3) == vzero(4)
    p, i = crossed_product_maps(g, m, L)
    assert verify_hom(p).passed and verify_hom(i).passed


def test_crossed_product_canonical_action_of_der():
    S = string(sl2())
    D, act = canonical_action(S)
    assert act.verify().passed
    L = crossed_product(D.algebra, S, act)
    assert L.dims == (9, 4)
    assert verify_l2a(L).passed


def test_strict_crossed_round_trip():
    G = gl_of_complex(Complex2(FinSpace("Q", ("u",)), FinSpace("Qm", ("m",)),
                               LinMap(FinSpace("Qm", ("m",)), FinSpace("Q", ("u",)), ((1,),))))
    cm = strict_to_crossed(G)
    assert cm.verify().passed
    assert crossed_to_strict(cm).same_constants(G)
    with pytest.raises(ValueError):
        strict_to_crossed(string(sl2()))
