import random

from lie2kit.constructions import omni_lie, sl2, string
from lie2kit.exactlin import FinSpace, LinMap, Q
from lie2kit.hpoisson import (build_courant, build_quasi_poisson, check_generators,
                              check_homotopy_jacobi, check_leibniz, check_pi_table,
                              extend_brackets, function_ring, quasi_poisson_identity)
from lie2kit.lie2core import Lie2Algebra
from lie2kit.randgen import random_l2a

S = string(sl2())


def _abelian(n0, n1):
    V = FinSpace(n0, tuple(f"x{i}" for i in range(n0)))
    W = FinSpace(n1, tuple(f"a{i}" for i in range(n1)))
    return Lie2Algebra.abelian(V, W)


def test_function_ring_degrees():
    R = function_ring(S)
    assert R.labels == ("c", "e", "f", "h")
    assert R.degrees == (0, 1, 1, 1)


def test_abelian_brackets_vanish():
    L = _abelian(2, 2)
    B = extend_brackets(L)
    R = B.ring
    gens = [R.gen(i) for i in range(R.n)]
    for f in gens:
        assert B.l1(f).is_zero()
        for g in gens:
            assert B.l2(f, g).is_zero()
            assert B.l2(f * g, g).is_zero()


def test_string_l3_on_generators():
    B = extend_brackets(S)
    R = B.ring
    X = [R.gen(B.x(j)) for j in range(3)]
    assert B.l3(*X) == R.gen(B.a(0)).scale(Q(8))
    assert B.l3(X[1], X[0], X[2]) == R.gen(B.a(0)).scale(Q(-8))


def test_linear_inputs_give_linear_outputs():
    rng = random.Random(2)
    for _ in range(8):
        L = random_l2a(rng)
        B = extend_brackets(L)
        R = B.ring
        gens = [R.gen(i) for i in range(R.n)]
        for f in gens:
            assert B.l1(f).poly_degree() <= 1
            for g in gens:
                assert B.l2(f, g).poly_degree() <= 1


def test_generators_and_jacobi_string():
    B = extend_brackets(S)
    assert check_generators(B).passed
    assert check_homotopy_jacobi(B).passed


def test_generators_and_jacobi_random():
    rng = random.Random(17)
    for _ in range(6):
        L = random_l2a(rng, max_dim=2)
        B = extend_brackets(L)
        assert check_generators(B).passed
        rp = check_homotopy_jacobi(B)
        assert rp.passed, (L.name, rp.axioms_failed())
        assert check_leibniz(B, rng, samples=10).passed


def test_sign_changes_in_jacobi():
    # l_k -> (-1)^(k-1) l_k is a symmetry; flipping only l1 or only l3 is not
    rng = random.Random(12)
    L = next(L for L in (random_l2a(rng, max_dim=3) for _ in range(40))
             if not L.d.is_zero() and not L.l3.is_zero())
    assert check_homotopy_jacobi(extend_brackets(L, (1, -1, 1))).passed
    assert not check_homotopy_jacobi(extend_brackets(L, (-1, 1, 1))).passed
    assert not check_homotopy_jacobi(extend_brackets(L, (1, 1, -1))).passed


def test_courant_string():
    C = build_courant(S)
    assert C.report.passed, C.report.axioms_failed()


def test_courant_constant_sections_omni():
    C = build_courant(omni_lie(2), linear=False)
    assert C.report.passed, C.report.axioms_failed()


def test_courant_random():
    rng = random.Random(8)
    for _ in range(4):
        L = random_l2a(rng, max_dim=2)
        C = build_courant(L)
        assert C.report.passed, (L.name, C.report.axioms_failed())


def test_pi_table_and_skew():
    rng = random.Random(4)
    for L in [S, omni_lie(2)] + [random_l2a(rng) for _ in range(5)]:
        Qd = build_quasi_poisson(L)
        assert Qd.skew.passed
        assert check_pi_table(Qd).passed


def test_abelian_pi_zero():
    Qd = build_quasi_poisson(_abelian(2, 1))
    assert all(p.is_zero() for p in Qd.Pi.values())
    assert all(p.is_zero() for p in Qd.phi.values())


def test_strict_phi_zero():
    L = omni_lie(1)
    Qd = build_quasi_poisson(L)
    assert all(p.is_zero() for p in Qd.phi.values())


def test_quasi_poisson_verdicts():
    verdict, _ = quasi_poisson_identity(build_quasi_poisson(S))
    assert verdict == "holds"
    rng = random.Random(6)
    for _ in range(5):
        v, results = quasi_poisson_identity(build_quasi_poisson(random_l2a(rng)))
        assert v in ("holds", "indeterminate")
        assert any(results.values())


def test_quasi_poisson_tampered_fails():
    Qd = build_quasi_poisson(S)
    R = Qd.ring
    Qd.Pi[(0, 1)] = Qd.Pi[(0, 1)] + R.gen(0)
    Qd.Pi[(1, 0)] = Qd.Pi[(1, 0)] - R.gen(0)
    assert quasi_poisson_identity(Qd)[0] == "fails"
