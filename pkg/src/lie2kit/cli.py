"""Command-line interface: ``lie2kit {verify,cohomology,construct,deform,extend}``.

Exit codes: 0 pass, 1 mathematical failure, 2 parse error, 3 shape or usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import l2a
from .cohomology import (K_MAX, Cochain, Complex2, CochainSpace, Rep2, adjoint_rep,
                         coboundary, cohomology, verify_rep)
from .constructions import LeibnizAlgebra, LieAlgebra, crossed_product, canonical_action
from .exactlin import DimensionError, FinSpace, LinMap, fmt, random_matrix
from .lie2core import Hom2, Lie2Algebra, TwoMorphism, verify_2mor, verify_hom, verify_l2a

EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_SHAPE = 0, 1, 2, 3
MAX_LISTED = 20


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ reports

@dataclass
class Report:
    command: str
    source: str = ""
    status: int = EXIT_PASS
    machine: list = field(default_factory=list)   # [(key, value)]
    human: list = field(default_factory=list)
    documents: list = field(default_factory=list)  # [(title, text)]

    def kv(self, key, value):
        self.machine.append((key, value))

    def fail(self, code, msg):
        self.status = max(self.status, code)
        self.kv("error", msg)
        self.human.append(f"error: {msg}")

    def axioms(self, rp, prefix=""):
        self.kv(prefix + "passed", str(rp.passed).lower())
        self.kv(prefix + "failures", len(rp.failures))
        self.kv(prefix + "failed_axioms", ",".join(sorted(rp.axioms_failed())))
        for i, (ax, wit, vec) in enumerate(rp.failures[:MAX_LISTED]):
            w = " ".join(str(x) for x in wit)
            self.kv(f"{prefix}failure.{i}", f"axiom={ax} witness={w} defect=" +
                    ",".join(_num(c) for c in vec))
        if not rp.passed:
            self.status = max(self.status, EXIT_FAIL)
            rows = [(ax, " ".join(map(str, wit)), ",".join(_num(c) for c in vec))
                    for ax, wit, vec in rp.failures[:MAX_LISTED]]
            self.human.extend(_table(("axiom", "witness", "defect"), rows))

    def render(self, as_json=False, color=False):
        self.machine.insert(0, ("exit", self.status))
        self.machine.insert(0, ("status", "pass" if self.status == 0 else "fail"))
        self.machine.insert(0, ("command", self.command))
        if self.source:
            self.machine.insert(1, ("file", self.source))
        if as_json:
            return json.dumps({k: v for k, v in self.machine} |
                              {"documents": {t: d for t, d in self.documents}},
                              sort_keys=False)
        out = ["[machine]"] + [f"{k}={v}" for k, v in self.machine]
        verdict = "PASS" if self.status == 0 else ("FAIL" if self.status == 1 else "ERROR")
        if color:
            verdict = ("\033[32m" if self.status == 0 else "\033[31m") + verdict + "\033[0m"
        out.append("[human]")
        out.append(f"{self.source or self.command}: {verdict}")
        out.extend(self.human)
        for title, text in self.documents:
            out.append(f"[document {title}]")
            out.append(text.rstrip("\n"))
        return "\n".join(out)


def _num(c):
    """Exact scalar as text; dual numbers print as a+b*lam."""
    if hasattr(c, "a") and hasattr(c, "b"):
        if c.b == 0:
            return fmt(c.a)
        lam = f"{fmt(c.b)}*lam"
        return lam if c.a == 0 else f"{fmt(c.a)}{'+' if c.b > 0 else ''}{lam}"
    return fmt(c)


def _table(header, rows):
    widths = [max(len(str(r[i])) for r in (header,) + tuple(rows)) for i in range(len(header))]
    line = lambda r: "  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip()
    return [line(header), line(tuple("-" * w for w in widths))] + [line(r) for r in rows]


def _use_color(stream):
    v = os.environ.get("L2A_COLOR", "auto").lower()
    if v in ("1", "always", "yes", "on"):
        return True
    if v in ("0", "never", "no", "off"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


# ----------------------------------------------------------------- loading

def _load(path, strict=True):
    return l2a.read_file(path, strict)


def _object(doc, strict=True):
    return l2a.to_object(doc, strict)


def _guarded(command, source, fn):
    """Run fn(report), mapping exceptions onto exit codes."""
    rp = Report(command, source)
    try:
        fn(rp)
    except l2a.ParseError as e:
        rp.fail(EXIT_PARSE, str(e))
    except FileNotFoundError as e:
        rp.fail(EXIT_SHAPE, f"no such file: {e.filename}")
    except (DimensionError, UsageError) as e:
        rp.fail(EXIT_SHAPE, str(e))
    return rp


# ------------------------------------------------------------------ verify

VERIFY_KINDS = {"l2a": "l2a", "hom": "hom", "2mor": "2mor", "cm2": "cm2",
                "leibniz": "leibniz", "rep": "rep", "lie": "lie"}


def _verify_object(obj, rp: Report):
    from .crossedmod import CrossedModule2, verify_cm2
    if isinstance(obj, Lie2Algebra):
        rp.kv("dims", f"{obj.g0.dim},{obj.gm1.dim}")
        rp.axioms(verify_l2a(obj))
    elif isinstance(obj, Hom2):
        rp.axioms(verify_l2a(obj.source), "source.")
        rp.axioms(verify_l2a(obj.target), "target.")
        rp.axioms(verify_hom(obj))
    elif isinstance(obj, TwoMorphism):
        for nm, h in (("phi.", obj.from_hom), ("psi.", obj.to_hom)):
            rp.axioms(verify_hom(h), nm)
        rp.axioms(verify_2mor(obj))
    elif isinstance(obj, Rep2):
        rp.axioms(verify_l2a(obj.g), "algebra.")
        rp.axioms(verify_rep(obj))
    elif isinstance(obj, CrossedModule2):
        r = verify_cm2(obj)
        rp.kv("strong", str(obj.is_strong()).lower())
        rp.axioms(r)
    elif isinstance(obj, (LieAlgebra, LeibnizAlgebra)):
        rp.axioms(obj.verify())
    else:
        raise UsageError(f"nothing to verify for {type(obj).__name__}")


def run_verify(path, kind=None, strict=True):
    def body(rp):
        doc = _load(path, strict)
        if kind and doc.kind != VERIFY_KINDS[kind]:
            raise UsageError(f"--kind {kind} does not match file kind {doc.kind}")
        rp.kv("kind", doc.kind)
        _verify_object(_object(doc, strict), rp)
    return _guarded("verify", str(path), body)


# -------------------------------------------------------------- cohomology

def trivial_module(L: Lie2Algebra) -> Rep2:
    V = Complex2.concentrated(FinSpace("k", ("u",)))
    return Rep2.trivial(L, V)


def _rep_for(doc, rep_kind, strict):
    obj = _object(doc, strict)
    if rep_kind == "file":
        if not isinstance(obj, Rep2):
            raise UsageError("--rep file needs a representation document")
        return obj
    if not isinstance(obj, Lie2Algebra):
        raise UsageError(f"--rep {rep_kind} needs a Lie 2-algebra document")
    return adjoint_rep(obj) if rep_kind == "adjoint" else trivial_module(obj)


def run_cohomology(path, rep_kind="adjoint", degree=1, strict=True):
    def body(rp):
        if not (-1 <= degree <= K_MAX):
            raise UsageError(f"degree {degree} outside [-1, {K_MAX}]")
        doc = _load(path, strict)
        rep = _rep_for(doc, rep_kind, strict)
        res = cohomology(rep, degree)
        rp.kv("rep", rep_kind)
        rp.kv("degree", degree)
        rp.kv("dim_C", res.dim_C)
        rp.kv("dim_Z", res.dim_Z)
        rp.kv("dim_B", res.dim_B)
        rp.kv("dim_H", res.dim_H)
        rp.human.extend(_table(("k", "dim C", "dim Z", "dim B", "dim H"),
                               [(degree, res.dim_C, res.dim_Z, res.dim_B, res.dim_H)]))
        for i, c in enumerate(res.representatives):
            rp.documents.append((f"representative.{i}", l2a.dumps(c, rep=rep,
                                                                  name=f"H{degree}.{i}")))
    return _guarded("cohomology", str(path), body)


# --------------------------------------------------------------- construct

RECIPES = ("string", "omni", "gl", "semidirect", "crossed_product", "skeletalize", "Der",
           "DER", "courant", "quasi_poisson", "aut_sample")


def _need_input(args):
    if not args.input:
        raise UsageError(f"--recipe {args.recipe} needs --input")
    return _object(_load(args.input, not args.lax), not args.lax)


def _need_l2a(args):
    obj = _need_input(args)
    if not isinstance(obj, Lie2Algebra):
        raise UsageError(f"--recipe {args.recipe} needs a Lie 2-algebra input")
    return obj


def _construct(args, rp: Report):
    from .constructions import gl_of_complex, omni_lie, semidirect, string
    r = args.recipe
    out = None
    if r == "string":
        g = _need_input(args)
        if not isinstance(g, LieAlgebra):
            raise UsageError("--recipe string needs a Lie algebra (kind lie) input")
        out = string(g)
    elif r == "omni":
        if args.n is None or args.n < 1:
            raise UsageError("--recipe omni needs --n >= 1")
        out = omni_lie(args.n)
    elif r == "gl":
        if args.n0 is None or args.n1 is None or args.n0 < 0 or args.n1 < 0:
            raise UsageError("--recipe gl needs --n0 and --n1")
        rng = random.Random(args.seed)
        V0, V1 = FinSpace.std("V0", args.n0, "v"), FinSpace.std("V-1", args.n1, "m")
        out = gl_of_complex(Complex2(V0, V1, LinMap(V1, V0, random_matrix(
            rng, args.n0, args.n1, -2, 2, 0.6))))
    elif r == "semidirect":
        rep = _need_input(args)
        if not isinstance(rep, Rep2):
            raise UsageError("--recipe semidirect needs a representation input")
        out = semidirect(rep)
    elif r == "crossed_product":
        m = _need_l2a(args)
        D, act = canonical_action(m)
        out = crossed_product(D.algebra, m, act, name="DerXm")
    elif r == "skeletalize":
        from .lie2core import skeletalize
        out = skeletalize(_need_l2a(args)).skeleton
    elif r == "Der":
        from .derdef import build_Der
        out = build_Der(_need_l2a(args)).algebra
    elif r == "DER":
        from .derdef import build_DER, verify_lie3
        A = build_DER(_need_l2a(args), check=False)
        rp.kv("dims", ",".join(str(A.dim(k)) for k in (0, -1, -2)))
        rp.axioms(verify_lie3(A))
    elif r == "courant":
        from .hpoisson import build_courant
        C = build_courant(_need_l2a(args), linear=args.linear)
        rp.kv("sections", 2 * C.n0)
        rp.axioms(C.report)
    elif r == "quasi_poisson":
        from .hpoisson import build_quasi_poisson, check_pi_table, quasi_poisson_identity
        Qd = build_quasi_poisson(_need_l2a(args))
        rp.axioms(Qd.skew, "skew.")
        rp.axioms(check_pi_table(Qd), "table.")
        verdict, _ = quasi_poisson_identity(Qd)
        rp.kv("identity", verdict)
        for (j, k, l), p in sorted(Qd.phi.items()):
            if not p.is_zero():
                rp.human.append(f"phi({Qd.ring.labels[j]},{Qd.ring.labels[k]},"
                                f"{Qd.ring.labels[l]}) = {p}")
    elif r == "aut_sample":
        from .autint import AutSampler, is_automorphism
        L = _need_l2a(args)
        A = AutSampler(L, args.seed).aut()
        rp.kv("automorphism", str(is_automorphism(A)).lower())
        if not is_automorphism(A):
            rp.status = max(rp.status, EXIT_FAIL)
        out = A
    if out is not None:
        if isinstance(out, Lie2Algebra):
            rp.kv("dims", f"{out.g0.dim},{out.gm1.dim}")
            rp.axioms(verify_l2a(out))
        elif isinstance(out, Hom2):
            rp.axioms(verify_hom(out))
        text = l2a.dumps(out)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
            rp.kv("written", args.out)
        else:
            rp.documents.append((r, text))


def run_construct(args):
    def body(rp):
        rp.kv("recipe", args.recipe)
        rp.kv("seed", args.seed)
        try:
            _construct(args, rp)
        except ValueError as e:
            if isinstance(e, (l2a.ParseError, DimensionError)):
                raise
            from .lie2core import AxiomError
            if isinstance(e, AxiomError):
                rp.axioms(e.report, "input.")
            else:
                raise UsageError(str(e)) from None
    return _guarded("construct", args.recipe, body)


# ---------------------------------------------------------- deform, extend

def _cochain_for(rep, cpath, strict):
    doc = _load(cpath, strict)
    c = _object(doc, strict)
    if not isinstance(c, Cochain):
        raise UsageError("second argument must be a cochain document")
    if c.degree != 2:
        raise UsageError("deformation and extension data are 2-cochains")
    c = l2a.cochain_matches(c, doc, rep)
    CochainSpace(rep, 2).flatten(c)
    return c


def _defect(rp, rep, c):
    dc = coboundary(rep, c)
    rp.kv("cocycle", str(dc.is_zero()).lower())
    if not dc.is_zero():
        sp = CochainSpace(rep, 3)
        flat = sp.flatten(dc)
        rows = []
        for i, v in enumerate(flat):
            if v != 0 and len(rows) < MAX_LISTED:
                comp, key, o = sp.basis_label(i)
                p = comp[0]
                labs = [rep.g.g0.labels[j] for j in key[:p]] + \
                    [rep.g.gm1.labels[j] for j in key[p:]]
                out = rep.V.V0 if comp[2] == 0 else rep.V.Vm1
                rows.append((l2a.cochain_tensor_name(comp), " ".join(labs), out.labels[o], fmt(v)))
        for i, (cn, key, o, v) in enumerate(rows):
            rp.kv(f"defect.{i}", f"component={cn} key={key} output={o} value={v}")
        rp.human.append("coboundary of the input is nonzero:")
        rp.human.extend(_table(("component", "key", "output", "value"), rows))


def run_deform(path, cpath, strict=True, out=None):
    def body(rp):
        from .derdef import deform
        L = _object(_load(path, strict), strict)
        if not isinstance(L, Lie2Algebra):
            raise UsageError("deform needs a Lie 2-algebra document")
        rep = adjoint_rep(L)
        c = _cochain_for(rep, cpath, strict)
        res = deform(L, c)
        rp.kv("deformation_passed", str(res.report.passed).lower())
        _defect(rp, rep, c)
        if not res.report.passed:
            rp.axioms(res.report, "deformed.")
        triv = res.trivialization is not None
        rp.kv("trivial", str(triv).lower())
        if triv:
            rp.axioms(res.trivialization_report, "trivialization.")
            text = l2a.dumps(res.c1, rep=rep, name="phi")
            rp.human.append("trivializing equivalence Id + lambda*phi, phi below")
            if out:
                with open(out, "w", encoding="utf-8") as fh:
                    fh.write(text)
                rp.kv("written", out)
            else:
                rp.documents.append(("trivialization", text))
    return _guarded("deform", str(path), body)


def run_extend(path, cpath, rep_kind="adjoint", strict=True, out=None):
    def body(rp):
        from .derdef import abelian_extension
        rep = _rep_for(_load(path, strict), rep_kind, strict)
        c = _cochain_for(rep, cpath, strict)
        _defect(rp, rep, c)
        E = abelian_extension(rep, c)
        rp.kv("dims", f"{E.algebra.g0.dim},{E.algebra.gm1.dim}")
        rp.axioms(E.report)
        rp.axioms(E.exact, "exact.")
        if E.report.passed:
            text = l2a.dumps(E.algebra)
            if out:
                with open(out, "w", encoding="utf-8") as fh:
                    fh.write(text)
                rp.kv("written", out)
            else:
                rp.documents.append(("extension", text))
    return _guarded("extend", str(path), body)


# --------------------------------------------------------------------- main

def _parser():
    p = argparse.ArgumentParser(prog="lie2kit", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="print the machine section as JSON")
    p.add_argument("--jobs", type=int, default=1, help="files processed concurrently")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lax", action="store_true", help="keep unknown statements instead of failing")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="check the axioms of the objects in L2A files")
    v.add_argument("paths", nargs="+")
    v.add_argument("--kind", choices=sorted(VERIFY_KINDS))

    c = sub.add_parser("cohomology", help="cohomology of a Lie 2-algebra")
    c.add_argument("path")
    c.add_argument("--rep", choices=("adjoint", "trivial", "file"), default="adjoint")
    c.add_argument("--degree", type=int, required=True)

    k = sub.add_parser("construct", help="build an object from a recipe")
    k.add_argument("--recipe", choices=RECIPES, required=True)
    k.add_argument("--input")
    k.add_argument("--n", type=int)
    k.add_argument("--n0", type=int)
    k.add_argument("--n1", type=int)
    k.add_argument("--out")
    k.add_argument("--linear", action="store_true",
                   help="courant: also test linear-coefficient sections")

    d = sub.add_parser("deform", help="infinitesimal deformation by a 2-cochain")
    d.add_argument("path")
    d.add_argument("cochain")
    d.add_argument("--out")

    e = sub.add_parser("extend", help="abelian extension by a 2-cochain")
    e.add_argument("path")
    e.add_argument("cochain")
    e.add_argument("--rep", choices=("adjoint", "trivial", "file"), default="adjoint")
    e.add_argument("--out")
    return p


def _verify_job(job):
    path, kind, strict = job
    return run_verify(path, kind, strict)


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_SHAPE if e.code else EXIT_PASS
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_SHAPE
    strict = not args.lax
    if args.cmd == "verify":
        jobs = [(p, args.kind, strict) for p in args.paths]
        if args.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                reports = list(ex.map(_verify_job, jobs))
        else:
            reports = [_verify_job(j) for j in jobs]
    elif args.cmd == "cohomology":
        reports = [run_cohomology(args.path, args.rep, args.degree, strict)]
    elif args.cmd == "construct":
        reports = [run_construct(args)]
    elif args.cmd == "deform":
        reports = [run_deform(args.path, args.cochain, strict, args.out)]
    else:
        reports = [run_extend(args.path, args.cochain, args.rep, strict, args.out)]
    color = _use_color(stdout) and not args.json
    for r in reports:
        print(r.render(args.json, color), file=stdout)
    return max(r.status for r in reports)


if __name__ == "__main__":
    sys.exit(main())
