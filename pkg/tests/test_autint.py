import random

import pytest

from lie2kit.autint import (AutSampler, Nil2, StarElement, aut_action, aut_crossed_module,
                            differentiate_aut, heisenberg_crossed_module, hom_equal,
                            is_automorphism, is_unit, partial_map, star, star_zero,
                            two_group_ops, verify_group_cm, verify_two_group)
from lie2kit.constructions import sl2, string
from lie2kit.exactlin import FinSpace, LinMap, Q
from lie2kit.lie2core import Hom2, Lie2Algebra, verify_hom
from lie2kit.randgen import random_l2a

S = string(sl2())


def _tau(L, rows):
    return StarElement(L, LinMap(L.g0, L.gm1, [[Q(c) for c in r] for r in rows]))


def _line(d):
    V, W = FinSpace(1, ("x",)), FinSpace(1, ("a",))
    return Lie2Algebra.abelian(V, W, LinMap(W, V, [[Q(d)]]))


def test_star_zero_is_two_sided_unit():
    rng = random.Random(3)
    for _ in range(10):
        L = random_l2a(rng)
        t = AutSampler(L, rng.randint(0, 99)).tau()
        z = star_zero(L)
        assert star(z, t) == t and star(t, z) == t


def test_star_is_addition_when_d_vanishes():
    L = _line(0)
    t1, t2 = _tau(L, [[2]]), _tau(L, [[5]])
    assert star(t1, t2) == _tau(L, [[7]])
    ok, inv = is_unit(t1)
    assert ok and inv == _tau(L, [[-2]])


def test_non_unit_detected():
    L = _line(1)
    ok, inv = is_unit(_tau(L, [[-1]]))
    assert not ok and inv is None
    with pytest.raises(ValueError):
        partial_map(_tau(L, [[-1]]))
    assert star(_tau(L, [[2]]), _tau(L, [[3]])) == _tau(L, [[11]])


def test_star_associative_random():
    rng = random.Random(11)
    for _ in range(15):
        L = random_l2a(rng)
        S_ = AutSampler(L, rng.randint(0, 999))
        a, b, c = S_.tau(), S_.tau(), S_.tau()
        assert star(star(a, b), c) == star(a, star(b, c))


def test_partial_of_zero_is_identity():
    for L in (S, _line(1)):
        assert hom_equal(partial_map(star_zero(L)), Hom2.identity(L))


def test_partial_is_homomorphism_and_automorphism():
    rng = random.Random(5)
    for _ in range(10):
        L = random_l2a(rng)
        t = AutSampler(L, rng.randint(0, 999)).unit()
        P = partial_map(t)
        assert verify_hom(P).passed
        assert is_automorphism(P)


def test_abelian_zero_differential_gives_identity():
    V, W = FinSpace(2, ("x", "y")), FinSpace(2, ("a", "b"))
    L = Lie2Algebra.abelian(V, W)
    t = _tau(L, [[1, 2], [3, 4]])
    assert hom_equal(partial_map(t), Hom2.identity(L))


def test_string_partial_shape():
    t = AutSampler(S, 1).tau()
    P = partial_map(t)
    assert P.phi0.matrix == LinMap.identity(S.g0).matrix
    assert P.phi1.matrix == LinMap.identity(S.gm1).matrix
    assert verify_hom(P).passed


def test_action_identity_and_scalars():
    rng = random.Random(9)
    L = random_l2a(rng)
    t = AutSampler(L, 2).tau()
    assert aut_action(Hom2.identity(L), t) == t
    c = Q(3)
    A = Hom2(L, L, LinMap.identity(L.g0).scale(c), LinMap.identity(L.gm1).scale(c),
             Hom2.identity(L).phi2)
    assert aut_action(A, t) == t


def test_aut_crossed_module_string():
    rp = verify_group_cm(aut_crossed_module(S, seed=4), samples=6)
    assert rp.passed, rp.axioms_failed()


def test_aut_crossed_module_random():
    rng = random.Random(21)
    for k in range(3):
        L = random_l2a(rng)
        rp = verify_group_cm(aut_crossed_module(L, seed=k), samples=4)
        assert rp.passed, (L.name, rp.axioms_failed())


def test_two_group_string():
    rp = verify_two_group(two_group_ops(aut_crossed_module(S, seed=7)), samples=4)
    assert rp.passed, rp.axioms_failed()


def test_heisenberg():
    ops = heisenberg_crossed_module([[0, 1], [-1, 0]], seed=1)
    assert verify_group_cm(ops, samples=20).passed
    assert verify_two_group(two_group_ops(ops), samples=10).passed


def test_heisenberg_symmetric_form_fails():
    ops = heisenberg_crossed_module([[1, 0], [0, 1]], seed=1)
    assert not verify_group_cm(ops, samples=10).passed


def test_nil2_arithmetic():
    lam, mu = Nil2(0, 1), Nil2(0, 0, 1)
    assert lam * lam == 0 and mu * mu == 0
    assert lam * mu == Nil2(0, 0, 0, 1)
    assert (1 + lam) * (1 - lam) == 1
    assert (Nil2(2, 3) - 2) == Nil2(0, 3)


def test_differentiate_string():
    r = differentiate_aut(S)
    assert r.dbar_ok and r.action_ok and r.bracket_ok and r.derivations_are_tangent


def test_differentiate_random():
    rng = random.Random(31)
    for _ in range(3):
        L = random_l2a(rng, max_dim=2)
        r = differentiate_aut(L)
        assert r.report.passed, (L.name, r.report.axioms_failed())
