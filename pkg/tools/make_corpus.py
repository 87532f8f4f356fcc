"""Regenerate the bundled L2A corpus in src/lie2kit/data and its manifest.

Run from the repository root:  python3 tools/make_corpus.py
"""
import itertools
import os
import sys

from lie2kit import l2a
from lie2kit.cohomology import CochainSpace, adjoint_rep, coboundary_span, cocycle_basis
from lie2kit.constructions import LieAlgebra, omni_leibniz, omni_lie, sl2, string
from lie2kit.crossedmod import canonical_cm
from lie2kit.exactlin import FinSpace, LinMap, MultiTensor, ZERO, Q, alt, vzero
from lie2kit.lie2core import Hom2, Lie2Algebra, verify_l2a

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "src", "lie2kit", "data")


def sl2_plus_character(perturb):
    """d = 0 on R -> sl2 + Q z, z acting on R by 1, l3 = perturbation only."""
    g = sl2()
    g0 = FinSpace("gl2", ("e", "f", "h", "z"))
    R = FinSpace("R", ("c",))

    def br(x, y):
        if 3 in (x, y):
            return vzero(4)
        return tuple(g.br(x, y)) + (ZERO,)

    def jac(x, y, z):
        return (perturb.get((x, y, z), ZERO),)

    return Lie2Algebra.from_functions(g0, R, LinMap.zero(R, g0), br,
                                      lambda x, a: (Q(1) if x == 3 else ZERO,), jac, "broken")


def broken_jacobiator():
    # scan single-entry perturbations until only axiom (4) fails
    for key in itertools.combinations(range(4), 3):
        L = sl2_plus_character({key: Q(1)})
        rp = verify_l2a(L)
        if not rp.passed and set(rp.axioms_failed()) == {"4"}:
            return L
    raise SystemExit("no perturbation isolates axiom (4)")


def main():
    os.makedirs(DATA, exist_ok=True)
    files = {}
    S = string(sl2())
    files["string_sl2.l2a"] = l2a.dumps(S)
    files["sl2.lie"] = l2a.dumps(sl2())
    files["sl2_as_lie2.l2a"] = l2a.dumps(sl2().as_lie2())
    Bk = FinSpace("k2", ("x1", "x2"))
    Bm = FinSpace("m2", ("a1", "a2"))
    files["abelian.l2a"] = l2a.dumps(Lie2Algebra.abelian(
        Bk, Bm, None, "abelian"))
    one, one_m = FinSpace("Q", ("x",)), FinSpace("Qm", ("a",))
    files["acyclic.l2a"] = l2a.dumps(Lie2Algebra.abelian(
        one, one_m, LinMap.identity(one).with_spaces(one_m, one), "acyclic"))
    files["broken_jacobiator.l2a"] = l2a.dumps(broken_jacobiator())
    files["omni2.l2a"] = l2a.dumps(omni_lie(2))
    files["omni_leibniz2.l2a"] = l2a.dumps(omni_leibniz(2))
    files["identity_string_sl2.l2a"] = l2a.dumps(Hom2.identity(S), name="identity")
    files["adjoint_string_sl2.l2a"] = l2a.dumps(adjoint_rep(S), name="adjoint")
    files["canonical_cm_string_sl2.l2a"] = l2a.dumps(canonical_cm(S), name="canonical")

    # a strict map that is not a homomorphism: phi0 scales by 2
    two = LinMap(S.g0, S.g0, tuple(tuple(Q(2) if i == j else ZERO for j in range(3))
                                   for i in range(3)))
    files["broken_hom.l2a"] = l2a.dumps(Hom2.strict(S, S, two, LinMap.identity(S.gm1)),
                                        name="doubling")

    # 2-cochains of the adjoint representation of String(sl2)
    ad = adjoint_rep(S)
    sp = CochainSpace(ad, 2)
    zero = sp.unflatten((ZERO,) * sp.dim)
    files["c2_zero.l2a"] = l2a.dumps(zero, rep=ad, name="zero")
    B = coboundary_span(ad, 2)
    cob = [sum(col) for col in zip(*B)] if B else [ZERO] * sp.dim
    files["c2_coboundary.l2a"] = l2a.dumps(sp.unflatten(tuple(cob)), rep=ad, name="coboundary")
    Z, _ = cocycle_basis(ad, 2)
    pert = list(cob)
    for i in range(sp.dim):
        e = [ZERO] * sp.dim
        e[i] = Q(1)
        from lie2kit.exactlin import solve
        rows = [tuple(z[r] for z in Z) for r in range(sp.dim)]
        if solve(rows, tuple(e), len(Z)) is None:
            pert[i] += 1
            break
    files["c2_noncocycle.l2a"] = l2a.dumps(sp.unflatten(tuple(pert)), rep=ad, name="perturbed")

    files["empty.l2a"] = ""
    files["float_entry.l2a"] = files["string_sl2.l2a"].replace("c=8", "c=8.0")
    files["wrong_signature.l2a"] = files["string_sl2.l2a"].replace(
        "tensor l3 alt3(g0) -> gm1", "tensor l3 alt3(g0) -> g0")

    manifest = [
        ("verify string_sl2.l2a", 0),
        ("verify broken_jacobiator.l2a", 1),
        ("verify empty.l2a", 2),
        ("verify float_entry.l2a", 2),
        ("verify wrong_signature.l2a", 3),
        ("verify sl2.lie", 0),
        ("verify sl2_as_lie2.l2a", 0),
        ("verify abelian.l2a", 0),
        ("verify acyclic.l2a", 0),
        ("verify omni2.l2a", 0),
        ("verify omni_leibniz2.l2a", 0),
        ("verify identity_string_sl2.l2a", 0),
        ("verify broken_hom.l2a", 1),
        ("verify adjoint_string_sl2.l2a", 0),
        ("verify canonical_cm_string_sl2.l2a", 0),
        ("verify --kind hom string_sl2.l2a", 3),
        ("cohomology sl2_as_lie2.l2a --rep trivial --degree 3", 0),
        ("cohomology abelian.l2a --rep adjoint --degree 1", 0),
        ("cohomology string_sl2.l2a --rep adjoint --degree 9", 3),
        ("deform string_sl2.l2a c2_zero.l2a", 0),
        ("deform string_sl2.l2a c2_coboundary.l2a", 0),
        ("deform string_sl2.l2a c2_noncocycle.l2a", 1),
        ("extend string_sl2.l2a c2_zero.l2a", 0),
        ("extend string_sl2.l2a c2_coboundary.l2a", 0),
        ("extend string_sl2.l2a c2_noncocycle.l2a", 1),
        ("deform sl2_as_lie2.l2a c2_zero.l2a", 3),
    ]
    for name, text in files.items():
        with open(os.path.join(DATA, name), "w", encoding="utf-8") as fh:
            fh.write(text)
    with open(os.path.join(DATA, "MANIFEST"), "w", encoding="utf-8") as fh:
        fh.write("# command (paths relative to this directory) <TAB> expected exit code\n")
        for cmd, code in manifest:
            fh.write(f"{cmd}\t{code}\n")
    print(f"wrote {len(files)} files to {os.path.normpath(DATA)}", file=sys.stderr)


if __name__ == "__main__":
    main()
