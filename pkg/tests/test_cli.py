import io
import json
import os
import shlex
import subprocess
import sys

import pytest

from lie2kit.cli import main
from lie2kit.l2a import loads

DATA = os.path.normpath(os.path.join(os.path.dirname(__file__), os.pardir, "src", "lie2kit", "data"))


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), stdout=buf)
    return code, buf.getvalue()


def machine(out):
    lines = out.split("[human]")[0].splitlines()[1:]
    return dict(l.split("=", 1) for l in lines if "=" in l)


def p(name):
    return os.path.join(DATA, name)


def _manifest():
    with open(p("MANIFEST"), encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            cmd, code = line.rstrip("\n").split("\t")
            yield cmd, int(code)


@pytest.mark.parametrize("cmd,code", list(_manifest()))
def test_manifest(cmd, code):
    argv = [a if a.startswith("-") or not (a.endswith(".l2a") or a.endswith(".lie")) else p(a)
            for a in shlex.split(cmd)]
    got, out = run(*argv)
    assert got == code, out


def test_verify_report_contents():
    code, out = run("verify", p("broken_jacobiator.l2a"))
    m = machine(out)
    assert code == 1 and m["failed_axioms"] == "4" and m["status"] == "fail"
    assert m["failure.0"] == "axiom=4 witness=e f h z defect=1"
    assert "[human]" in out


def test_cohomology_report():
    code, out = run("cohomology", p("sl2_as_lie2.l2a"), "--rep", "trivial", "--degree", "3")
    m = machine(out)
    assert code == 0 and m["dim_H"] == "1" and m["dim_B"] == "0"
    assert "[document representative.0]" in out


def test_deform_report():
    code, out = run("deform", p("string_sl2.l2a"), p("c2_noncocycle.l2a"))
    m = machine(out)
    assert code == 1 and m["deformation_passed"] == "false" and m["cocycle"] == "false"
    code, out = run("deform", p("string_sl2.l2a"), p("c2_coboundary.l2a"))
    assert code == 0 and machine(out)["deformation_passed"] == "true"


def test_construct_omni_and_skeleton():
    code, out = run("construct", "--recipe", "omni", "--n", "2")
    assert code == 0 and machine(out)["dims"] == "6,2"
    L = loads(out.split("[document omni]\n", 1)[1])
    assert L.dims == (6, 2)
    code, out = run("construct", "--recipe", "skeletalize", "--input", p("acyclic.l2a"))
    assert code == 0 and machine(out)["dims"] == "0,0"


def test_construct_string_from_lie(tmp_path):
    dest = tmp_path / "s.l2a"
    code, out = run("construct", "--recipe", "string", "--input", p("sl2.lie"), "--out", str(dest))
    assert code == 0 and machine(out)["written"] == str(dest)
    with open(p("string_sl2.l2a"), encoding="utf-8") as fh:
        assert dest.read_text(encoding="utf-8") == fh.read()


def test_construct_other_recipes():
    for argv, key, val in [
        (("--recipe", "Der", "--input", p("string_sl2.l2a")), "dims", "6,3"),
        (("--recipe", "DER", "--input", p("abelian.l2a")), "passed", "true"),
        (("--recipe", "courant", "--input", p("string_sl2.l2a")), "passed", "true"),
        (("--recipe", "quasi_poisson", "--input", p("string_sl2.l2a")), "identity", "holds"),
        (("--recipe", "aut_sample", "--input", p("string_sl2.l2a")), "automorphism", "true"),
        (("--recipe", "gl", "--n0", "2", "--n1", "1"), "passed", "true"),
        (("--recipe", "crossed_product", "--input", p("sl2_as_lie2.l2a")), "passed", "true"),
    ]:
        code, out = run("construct", *argv)
        assert code == 0, out
        assert machine(out)[key] == val, (argv, out)


def test_usage_errors():
    assert run("construct", "--recipe", "omni")[0] == 3
    assert run("construct", "--recipe", "string", "--input", p("string_sl2.l2a"))[0] == 3
    assert run("frobnicate")[0] == 3
    assert run("--jobs", "0", "verify", p("string_sl2.l2a"))[0] == 3
    assert run("verify", p("does_not_exist.l2a"))[0] != 0


def test_json_output():
    code, out = run("--json", "verify", p("string_sl2.l2a"))
    d = json.loads(out)
    assert code == 0 and d["status"] == "pass" and d["dims"] == "3,1"


def test_jobs_and_worst_exit():
    files = [p("string_sl2.l2a"), p("broken_jacobiator.l2a"), p("abelian.l2a")]
    code, out = run("--jobs", "2", "verify", *files)
    assert code == 1 and out.count("[machine]") == 3
    code, out = run("verify", p("string_sl2.l2a"), p("empty.l2a"))
    assert code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lie2kit", "verify", p("string_sl2.l2a")],
                       capture_output=True, text=True,
                       env=dict(os.environ, PYTHONPATH=os.path.join(DATA, os.pardir, os.pardir)))
    assert r.returncode == 0 and "status=pass" in r.stdout


def test_construct_semidirect(tmp_path):
    from lie2kit.cohomology import adjoint_rep
    from lie2kit.constructions import sl2
    from lie2kit.l2a import dumps
    f = tmp_path / "ad.l2a"
    f.write_text(dumps(adjoint_rep(sl2().as_lie2())), encoding="utf-8")
    code, out = run("construct", "--recipe", "semidirect", "--input", str(f))
    assert code == 0 and machine(out)["dims"] == "6,0"
    code, out = run("construct", "--recipe", "semidirect", "--input", p("adjoint_string_sl2.l2a"))
    assert code == 3
