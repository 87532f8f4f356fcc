import os
import random

import pytest

from lie2kit.cohomology import adjoint_rep
from lie2kit.constructions import omni_lie, sl2, string
from lie2kit.exactlin import Q
from lie2kit.l2a import (ParseError, ShapeError, cochain_matches, dumps, emit, from_object,
                         loads, parse, read_file, to_object)
from lie2kit.lie2core import Lie2Algebra, verify_l2a
from lie2kit.randgen import random_l2a

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "src", "lie2kit", "data")
S = string(sl2())

HEAD = "l2a 1\nkind l2a\nname t\nspace g0 g : x y\nspace gm1 V : a\nmap d gm1 -> g0\n"


def _same(A: Lie2Algebra, B: Lie2Algebra):
    return (A.dims == B.dims and A.d.matrix == B.d.matrix
            and (A.l2_00 - B.l2_00).is_zero() and (A.l2_01 - B.l2_01).is_zero()
            and (A.l3 - B.l3).is_zero())


def test_round_trip_string():
    text = dumps(S)
    T = loads(text)
    assert _same(S, T)
    assert T.g0.labels == ("e", "f", "h") and T.name == "String(sl2)"
    assert dumps(T) == text


def test_round_trip_random():
    rng = random.Random(1)
    for _ in range(25):
        L = random_l2a(rng)
        assert _same(L, loads(dumps(L)))


def test_round_trip_omni():
    L = omni_lie(2)
    assert _same(L, loads(dumps(L)))


def test_document_round_trip_is_stable():
    doc = read_file(os.path.join(DATA, "canonical_cm_string_sl2.l2a"))
    assert emit(parse(emit(doc))) == emit(doc)


def test_fractions_and_comments():
    text = HEAD + "entry a : x=-3/6   # comment\ntensor l2_00 alt2(g0) -> g0\n" \
        "tensor l2_01 g0 gm1 -> gm1\ntensor l3 alt3(g0) -> gm1\n"
    L = loads(text)
    assert L.d.matrix[0][0] == Q("-1/2")


@pytest.mark.parametrize("body,fragment", [
    ("entry a : x=0.5\n", "exact rational"),
    ("entry a : x=1/0\n", "zero denominator"),
    ("entry a : x=1 x=2\n", "repeated"),
    ("entry a : x=1\nentry a : y=1\n", "repeated"),
    ("frobnicate\n", "unknown statement"),
    ("entry a x=1\n", "usage"),
])
def test_parse_errors(body, fragment):
    with pytest.raises(ParseError) as e:
        parse(HEAD + body)
    assert fragment in str(e.value)
    assert ":7:" in str(e.value) or ":8:" in str(e.value)


def test_structural_parse_errors():
    with pytest.raises(ParseError, match="empty"):
        parse("")
    with pytest.raises(ParseError, match="start with"):
        parse("kind l2a\n")
    with pytest.raises(ParseError, match="missing 'kind'"):
        parse("l2a 1\nname x\n")
    with pytest.raises(ParseError, match="version"):
        parse("l2a 2\nkind l2a\n")
    with pytest.raises(ParseError, match="unterminated"):
        parse("l2a 1\nkind hom\nbegin source\nkind l2a\n")
    with pytest.raises(ParseError, match="duplicate labels"):
        parse("l2a 1\nkind l2a\nspace g0 g : x x\n")


def test_lax_mode_keeps_unknown_lines():
    doc = parse(HEAD + "frobnicate 3\n", strict=False)
    assert doc.extra == ["frobnicate 3"]


def test_shape_errors():
    with pytest.raises(ShapeError):
        to_object(read_file(os.path.join(DATA, "wrong_signature.l2a")))
    with pytest.raises(ShapeError):
        loads(HEAD + "entry a : z=1\ntensor l2_00 alt2(g0) -> g0\n"
              "tensor l2_01 g0 gm1 -> gm1\ntensor l3 alt3(g0) -> gm1\n")


def test_corpus_files():
    assert verify_l2a(to_object(read_file(os.path.join(DATA, "string_sl2.l2a")))).passed
    with pytest.raises(ParseError):
        read_file(os.path.join(DATA, "float_entry.l2a"))
    with pytest.raises(ParseError):
        read_file(os.path.join(DATA, "empty.l2a"))


def test_cochain_round_trip():
    rep = adjoint_rep(S)
    for f in ("c2_zero.l2a", "c2_coboundary.l2a", "c2_noncocycle.l2a"):
        doc = read_file(os.path.join(DATA, f))
        c = cochain_matches(to_object(doc), doc, rep)
        assert c.degree == 2
        back = cochain_matches(loads(dumps(c, rep=rep)), doc, rep)
        assert all((back.components[k] - c.components[k]).is_zero() for k in c.components)


def test_cochain_shape_mismatch():
    doc = read_file(os.path.join(DATA, "c2_zero.l2a"))
    with pytest.raises(ShapeError):
        cochain_matches(to_object(doc), doc, adjoint_rep(omni_lie(1)))


def test_alternating_keys_any_order():
    text = dumps(S).replace("entry e f : h=1", "entry f e : h=-1")
    assert _same(S, loads(text))
    bad = dumps(S).replace("entry e f : h=1", "entry e f : h=1\nentry f e : h=-1")
    with pytest.raises(ShapeError, match="duplicates"):
        loads(bad)
