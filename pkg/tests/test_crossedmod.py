import random

import pytest

from lie2kit.cohomology import classical_cohomology_dims
from lie2kit.constructions import ActionByDerivations, LieAlgebra, sl2, string
from lie2kit.crossedmod import (build_cm2, canonical_cm, derivation_crossed_module, four_term,
                                gerstenhaber_class, ideal_crossed_module,
                                random_lie_crossed_module, random_yoneda_crossed_module,
                                trivial_crossed_module, verify_cm2)
from lie2kit.exactlin import (FinSpace, LinMap, MultiTensor, ZERO, kernel, plain, unit, vadd)
from lie2kit.lie2core import Lie2Algebra
from lie2kit.randgen import lie_catalog, random_l2a

S = string(sl2())


def _strict_cm2(cm):
    """A Lie algebra crossed module viewed as a crossed module of Lie 2-algebras."""
    m, g = cm.m.as_lie2(), cm.g.as_lie2()
    act = ActionByDerivations.from_functions(
        g, m, lambda x, u: cm.act(x, u), lambda x, a: (), lambda a, u: (),
        lambda x, y, u: (), lambda x, u, v: ())
    zero = LinMap.zero(m.gm1, g.gm1)
    return build_cm2(m, g, act, cm.varphi.with_spaces(m.g0, g.g0), zero, lambda x, a: ())


def test_ideal_inclusion_is_strong():
    g = [h for h in lie_catalog(3) if h.name == "r3b"][0]
    cm = _strict_cm2(ideal_crossed_module(g, [unit(3, 1), unit(3, 2)]))
    rp = verify_cm2(cm)
    assert rp.passed and rp.notes["strong"]


def test_canonical_string_not_strong():
    cm = canonical_cm(S)
    rp = verify_cm2(cm)
    assert rp.passed and rp.notes["strong"] is False


def test_canonical_abelian():
    # varphi vanishes; sigma = -l_X(x, .) is zero only when alt^2 g0 = 0
    A1 = Lie2Algebra.abelian(FinSpace.std("g", 1, "x"), FinSpace.std("m", 1, "a"))
    cm = canonical_cm(A1)
    assert verify_cm2(cm).passed and cm.is_strong()
    A2 = Lie2Algebra.abelian(FinSpace.std("g", 2, "x"), FinSpace.std("m", 1, "a"))
    cm = canonical_cm(A2)
    phi0, phi1 = cm.varphi()
    assert phi0.is_zero() and phi1.is_zero()
    assert verify_cm2(cm).passed and not cm.is_strong()


def test_canonical_strict_can_be_non_strong():
    rng = random.Random(1)
    seen = False
    for _ in range(30):
        L = random_l2a(rng, 3)
        if L.is_strict() and L.gm1.dim:
            cm = canonical_cm(L)
            assert verify_cm2(cm).passed
            seen |= not cm.is_strong()
    assert seen


def test_sigma_tampering_detected():
    cm = canonical_cm(S)
    n1 = cm.g.gm1.dim
    sig = lambda X, x: vadd(cm.sigma(X, x), unit(n1, 0)) if (X, x) == (0, 0) else cm.sigma(X, x)
    bad = build_cm2(cm.m, cm.g, cm.action, *cm.varphi(), sig)
    rp = verify_cm2(bad)
    assert "iv" in rp.axioms_failed()
    assert any(f[0] == "iv" and f[1] for f in rp.failures)


def test_four_term_iso_and_zero():
    g = sl2()
    iso = _strict_cm2(ideal_crossed_module(g, [unit(3, i) for i in range(3)]))
    seq = four_term(iso)
    assert seq.exact.passed
    assert (seq.V.V0.dim, seq.V.Vm1.dim, seq.h.V0.dim, seq.h.Vm1.dim) == (0, 0, 0, 0)
    V = FinSpace.std("V", 2, "v")
    zero = _strict_cm2(trivial_crossed_module(g, MultiTensor([plain(g.space), plain(V)], V)))
    seq = four_term(zero)
    assert seq.exact.passed
    assert (seq.V.V0.dim, seq.h.V0.dim) == (2, 3)
    assert seq.h_algebra is not None and seq.V_rep is not None


def test_four_term_canonical_string():
    cm = canonical_cm(S)
    seq = four_term(cm)
    phi0, phi1 = cm.varphi()
    assert seq.exact.passed
    assert seq.V.V0.dim == kernel(phi0).dim and seq.V.Vm1.dim == kernel(phi1).dim
    assert seq.h.V0.dim == cm.g.g0.dim - phi0.rank()
    assert seq.h.Vm1.dim == cm.g.gm1.dim - phi1.rank()


def test_gerstenhaber_split_is_zero():
    g = sl2()
    V = FinSpace.std("V", 1, "v")
    G = gerstenhaber_class(trivial_crossed_module(g, MultiTensor([plain(g.space), plain(V)], V)))
    assert G.certified and G.cocycle.is_zero()


def test_gerstenhaber_sl2_trivial_coefficients():
    # ad: sl2 -> Der(sl2) is an isomorphism, so both kernel and cokernel vanish
    G = gerstenhaber_class(derivation_crossed_module(sl2()))
    assert G.certified and G.h.dim == 0
    # central extension type: V = Q trivial over h = sl2, H^3 is one-dimensional
    V = FinSpace.std("V", 1, "v")
    triv = MultiTensor([plain(sl2().space), plain(V)], V)
    assert classical_cohomology_dims(sl2().bracket, triv, 3)[2] == 1


def test_gerstenhaber_random_certified():
    rng = random.Random(31)
    for i in range(10):
        cm = random_lie_crossed_module(rng) if i % 2 else random_yoneda_crossed_module(rng)
        G = gerstenhaber_class(cm, seed=i)
        assert G.closed and G.section_independent
