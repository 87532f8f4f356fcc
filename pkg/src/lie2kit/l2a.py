"""The L2A interchange format: a line-oriented text file holding finite
dimensional spaces, linear maps and multilinear tensors with exact rational
entries.  See ``docs/l2a-format.md`` for the grammar.

Parsing returns a :class:`Document`; ``to_object`` and ``from_object`` convert
between documents and the algebraic objects of the package.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .cohomology import Cochain, Complex2, Rep2, comp_blocks, components
from .constructions import ActionByDerivations, LeibnizAlgebra, LieAlgebra
from .exactlin import (DimensionError, FinSpace, LinMap, MultiTensor, ZERO, alt, fmt,
                       plain, sym)
from .lie2core import Hom2, Lie2Algebra, TwoMorphism

VERSION = 1
_LABEL = re.compile(r"^[A-Za-z0-9_.+\-\[\]()'*^<>|/,]+$")
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_BLOCK = re.compile(r"^(alt|sym|plain)(\d+)\(([A-Za-z0-9_.]+)\)$")


class ParseError(ValueError):
    def __init__(self, msg, line=None, path=None):
        self.msg, self.line, self.path = msg, line, path
        loc = f"{path or '<input>'}:{line}" if line is not None else (path or "<input>")
        super().__init__(f"{loc}: {msg}")


class ShapeError(DimensionError):
    pass


# ------------------------------------------------------------- documents

@dataclass
class MapDecl:
    source: str
    target: str
    entries: dict = field(default_factory=dict)   # source label -> {target label: Fraction}


@dataclass
class TensorDecl:
    blocks: list            # [(kind, arity, space ref)]
    output: str
    entries: dict = field(default_factory=dict)   # tuple of labels -> {label: Fraction}


@dataclass
class Document:
    kind: str = ""
    version: int = VERSION
    name: str = ""
    degree: int | None = None
    meta: list = field(default_factory=list)        # [(key, text)]
    spaces: dict = field(default_factory=dict)      # role -> FinSpace
    maps: dict = field(default_factory=dict)
    tensors: dict = field(default_factory=dict)
    children: dict = field(default_factory=dict)
    extra: list = field(default_factory=list)       # unknown lines kept in lax mode

    def space(self, ref: str) -> FinSpace:
        head, _, rest = ref.partition(".")
        if rest and head in self.children:
            return self.children[head].space(rest)
        if ref in self.spaces:
            return self.spaces[ref]
        raise ShapeError(f"unknown space '{ref}'")


# ----------------------------------------------------------------- schemas

_T = lambda *blocks, out: (tuple(blocks), out)
SCHEMAS = {
    "l2a": dict(spaces=("g0", "gm1"), children=(), maps={"d": ("gm1", "g0")},
                tensors={"l2_00": _T(("alt", 2, "g0"), out="g0"),
                         "l2_01": _T(("plain", 1, "g0"), ("plain", 1, "gm1"), out="gm1"),
                         "l3": _T(("alt", 3, "g0"), out="gm1")}),
    "lie": dict(spaces=("g",), children=(), maps={},
                tensors={"bracket": _T(("alt", 2, "g"), out="g")}),
    "leibniz": dict(spaces=("g",), children=(), maps={},
                    tensors={"leibniz": _T(("plain", 1, "g"), ("plain", 1, "g"), out="g")}),
    "hom": dict(spaces=(), children=("source", "target"),
                maps={"phi0": ("source.g0", "target.g0"), "phi1": ("source.gm1", "target.gm1")},
                tensors={"phi2": _T(("alt", 2, "source.g0"), out="target.gm1")}),
    "2mor": dict(spaces=(), children=("source", "target"),
                 maps={"phi0": ("source.g0", "target.g0"), "phi1": ("source.gm1", "target.gm1"),
                       "psi0": ("source.g0", "target.g0"), "psi1": ("source.gm1", "target.gm1"),
                       "tau": ("source.g0", "target.gm1")},
                 tensors={"phi2": _T(("alt", 2, "source.g0"), out="target.gm1"),
                          "psi2": _T(("alt", 2, "source.g0"), out="target.gm1")}),
    "rep": dict(spaces=("V0", "Vm1"), children=("algebra",), maps={"partial": ("Vm1", "V0")},
                tensors={"a0": _T(("plain", 1, "algebra.g0"), ("plain", 1, "V0"), out="V0"),
                         "a1": _T(("plain", 1, "algebra.g0"), ("plain", 1, "Vm1"), out="Vm1"),
                         "b": _T(("plain", 1, "algebra.gm1"), ("plain", 1, "V0"), out="Vm1"),
                         "c": _T(("alt", 2, "algebra.g0"), ("plain", 1, "V0"), out="Vm1")}),
    "cm2": dict(spaces=(), children=("m", "g"),
                maps={"phi0": ("m.g0", "g.g0"), "phi1": ("m.gm1", "g.gm1")},
                tensors={"a0": _T(("plain", 1, "g.g0"), ("plain", 1, "m.g0"), out="m.g0"),
                         "a1": _T(("plain", 1, "g.g0"), ("plain", 1, "m.gm1"), out="m.gm1"),
                         "b": _T(("plain", 1, "g.gm1"), ("plain", 1, "m.g0"), out="m.gm1"),
                         "c": _T(("alt", 2, "g.g0"), ("plain", 1, "m.g0"), out="m.gm1"),
                         "lphi": _T(("plain", 1, "g.g0"), ("alt", 2, "m.g0"), out="m.gm1"),
                         "sigma": _T(("plain", 1, "g.g0"), ("plain", 1, "m.g0"), out="g.gm1")}),
    # cochain tensors are named c<p>.<q>.<s>; checked separately
    "cochain": dict(spaces=("g0", "gm1", "V0", "Vm1"), children=(), maps={}, tensors={}),
}
CHILD_KIND = {"source": "l2a", "target": "l2a", "algebra": "l2a", "m": "l2a", "g": "l2a"}


def cochain_tensor_name(comp):
    p, q, s = comp
    return f"c{p}.{q}.{s}"


def _cochain_schema(name, degree):
    m = re.fullmatch(r"c(\d+)\.(\d+)\.(0|-1)", name)
    if not m:
        return None
    p, q, s = int(m.group(1)), int(m.group(2)), int(m.group(3))
    if degree is None or (p, q, s) not in components(degree):
        return None
    blocks = (("alt", p, "g0"), ("sym", q, "gm1"))
    return blocks, ("V0" if s == 0 else "Vm1")


# ----------------------------------------------------------------- parsing

def _rational(tok, line):
    if not _RATIONAL.match(tok):
        raise ParseError(f"'{tok}' is not an exact rational (use p/q)", line)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in '{tok}'", line) from None


def _vector(tokens, line):
    out = {}
    for t in tokens:
        lab, eq, val = t.partition("=")
        if not eq or not lab:
            raise ParseError(f"expected label=value, got '{t}'", line)
        if lab in out:
            raise ParseError(f"label '{lab}' repeated in one entry", line)
        out[lab] = _rational(val, line)
    return out


def parse(text: str, strict=True, path=None) -> Document:
    lines = text.splitlines()
    try:
        doc, pos = _parse_block(lines, 0, strict, top=True)
    except ParseError as e:
        e.path = path
        raise ParseError(e.msg, e.line, path) from None
    if doc.kind == "":
        raise ParseError("missing 'kind' statement", None, path)
    return doc


def _parse_block(lines, pos, strict, top):
    doc = Document()
    current = None
    saw_header = not top
    seen_kind = False
    while pos < len(lines):
        raw = lines[pos]
        ln = pos + 1
        pos += 1
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        toks = s.split()
        kw = toks[0]
        if not saw_header:
            if kw != "l2a" or len(toks) != 2 or not toks[1].isdigit():
                raise ParseError("file must start with 'l2a <version>'", ln)
            if int(toks[1]) != VERSION:
                raise ParseError(f"unsupported format version {toks[1]}", ln)
            saw_header = True
            continue
        if kw == "end":
            if top:
                raise ParseError("'end' without 'begin'", ln)
            if not seen_kind:
                raise ParseError("nested block has no 'kind'", ln)
            return doc, pos
        if kw == "kind":
            if len(toks) != 2:
                raise ParseError("usage: kind <name>", ln)
            if seen_kind:
                raise ParseError("duplicate 'kind'", ln)
            if toks[1] not in SCHEMAS:
                if strict:
                    raise ParseError(f"unknown kind '{toks[1]}'", ln)
            doc.kind = toks[1]
            seen_kind = True
            current = None
        elif kw == "name":
            doc.name = s[len("name"):].strip()
        elif kw == "degree":
            if len(toks) != 2 or not re.fullmatch(r"-?\d+", toks[1]):
                raise ParseError("usage: degree <int>", ln)
            doc.degree = int(toks[1])
        elif kw == "meta":
            if len(toks) < 2:
                raise ParseError("usage: meta <key> <text>", ln)
            doc.meta.append((toks[1], s.split(None, 2)[2] if len(toks) > 2 else ""))
        elif kw == "space":
            # space ROLE NAME : labels...
            if len(toks) < 4 or toks[3] != ":":
                raise ParseError("usage: space <role> <name> : <labels...>", ln)
            role = toks[1]
            if role in doc.spaces:
                raise ParseError(f"space '{role}' declared twice", ln)
            labels = toks[4:]
            for l in labels:
                if not _LABEL.match(l) or "=" in l:
                    raise ParseError(f"bad label '{l}'", ln)
            if len(set(labels)) != len(labels):
                raise ParseError(f"duplicate labels in space '{role}'", ln)
            doc.spaces[role] = FinSpace(toks[2], tuple(labels))
            current = None
        elif kw == "map":
            if len(toks) != 5 or toks[3] != "->":
                raise ParseError("usage: map <name> <source> -> <target>", ln)
            if toks[1] in doc.maps or toks[1] in doc.tensors:
                raise ParseError(f"'{toks[1]}' declared twice", ln)
            current = doc.maps[toks[1]] = MapDecl(toks[2], toks[4])
        elif kw == "tensor":
            if "->" not in toks or toks.index("->") != len(toks) - 2 or len(toks) < 4:
                raise ParseError("usage: tensor <name> <block>... -> <target>", ln)
            name = toks[1]
            if name in doc.maps or name in doc.tensors:
                raise ParseError(f"'{name}' declared twice", ln)
            blocks = []
            for b in toks[2:-2]:
                m = _BLOCK.match(b)
                if m:
                    blocks.append((m.group(1), int(m.group(2)), m.group(3)))
                elif re.fullmatch(r"[A-Za-z0-9_.]+", b):
                    blocks.append(("plain", 1, b))
                else:
                    raise ParseError(f"bad block '{b}'", ln)
            current = doc.tensors[name] = TensorDecl(blocks, toks[-1])
        elif kw == "entry":
            if current is None:
                raise ParseError("'entry' outside a map or tensor", ln)
            if ":" not in toks:
                raise ParseError("usage: entry <labels...> : <label=value...>", ln)
            k = toks.index(":")
            key, vec = tuple(toks[1:k]), _vector(toks[k + 1:], ln)
            if isinstance(current, MapDecl):
                if len(key) != 1:
                    raise ParseError("map entries take exactly one source label", ln)
                key = key[0]
            if key in current.entries:
                raise ParseError(f"entry {key} repeated", ln)
            current.entries[key] = vec
        elif kw == "begin":
            if len(toks) != 2:
                raise ParseError("usage: begin <name>", ln)
            if toks[1] in doc.children:
                raise ParseError(f"block '{toks[1]}' repeated", ln)
            child, pos = _parse_block(lines, pos, strict, top=False)
            doc.children[toks[1]] = child
            current = None
        else:
            if strict:
                raise ParseError(f"unknown statement '{kw}'", ln)
            doc.extra.append(s)
    if not top:
        raise ParseError("unterminated 'begin' block", len(lines))
    if not saw_header:
        raise ParseError("empty document", 1 if not lines else len(lines))
    return doc, pos


# --------------------------------------------------------------- emission

def _emit_vec(space: FinSpace, vec):
    return " ".join(f"{space.labels[i]}={fmt(c)}" for i, c in enumerate(vec) if c != 0)


def _block_token(kind, arity, ref):
    return ref if (kind == "plain" and arity == 1) else f"{kind}{arity}({ref})"


def emit(doc: Document, _indent="") -> str:
    out = []
    I = _indent
    if not _indent:
        out.append(f"l2a {doc.version}")
    out.append(f"{I}kind {doc.kind}")
    if doc.name:
        out.append(f"{I}name {doc.name}")
    if doc.degree is not None:
        out.append(f"{I}degree {doc.degree}")
    for k, v in doc.meta:
        out.append(f"{I}meta {k} {v}".rstrip())
    for role, sp in doc.spaces.items():
        for l in sp.labels:
            if not _LABEL.match(l) or "=" in l:
                raise ShapeError(f"label '{l}' cannot be written")
        out.append(f"{I}space {role} {sp.name or role} : {' '.join(sp.labels)}".rstrip())
    for cname, child in doc.children.items():
        out.append(f"{I}begin {cname}")
        out.append(emit(child, I + "  "))
        out.append(f"{I}end")
    for name, m in doc.maps.items():
        out.append(f"{I}map {name} {m.source} -> {m.target}")
        tgt = doc.space(m.target)
        for src_label in doc.space(m.source).labels:
            vec = m.entries.get(src_label)
            if vec:
                out.append(f"{I}entry {src_label} : " + " ".join(
                    f"{l}={fmt(vec[l])}" for l in tgt.labels if vec.get(l, 0) != 0))
    for name, t in doc.tensors.items():
        sig = " ".join(_block_token(*b) for b in t.blocks)
        out.append(f"{I}tensor {name} {sig} -> {t.output}")
        tgt = doc.space(t.output)
        for key in sorted(t.entries, key=lambda k: _key_order(doc, t, k)):
            vec = t.entries[key]
            if any(vec.get(l, 0) != 0 for l in tgt.labels):
                head = f"{I}entry {' '.join(key)} :" if key else f"{I}entry :"
                out.append(head + " " + " ".join(f"{l}={fmt(vec[l])}" for l in tgt.labels
                                      if vec.get(l, 0) != 0))
    for s in doc.extra:
        out.append(f"{I}{s}")
    return "\n".join(out) + ("\n" if not _indent else "")


def _key_order(doc, t, key):
    idx = []
    pos = 0
    for kind, arity, ref in t.blocks:
        sp = doc.space(ref)
        for l in key[pos:pos + arity]:
            idx.append(sp.labels.index(l) if l in sp.labels else -1)
        pos += arity
    return tuple(idx)


# ------------------------------------------------------ doc <-> exactlin

def _map_decl(f: LinMap, src_ref, tgt_ref):
    ent = {}
    for j, lab in enumerate(f.source.labels):
        col = f.column(j)
        v = {f.target.labels[i]: c for i, c in enumerate(col) if c != 0}
        if v:
            ent[lab] = v
    return MapDecl(src_ref, tgt_ref, ent)


def _tensor_decl(t: MultiTensor, refs, out_ref):
    blocks = [(b.kind, b.arity, r) for b, r in zip(t.blocks, refs)]
    ent = {}
    slot_spaces = []
    for b in t.blocks:
        slot_spaces.extend([b.space] * b.arity)
    for key, vec in t.items():
        labs = tuple(sp.labels[i] for sp, i in zip(slot_spaces, key))
        ent[labs] = {t.output.labels[i]: c for i, c in enumerate(vec) if c != 0}
    return TensorDecl(blocks, out_ref, ent)


def _build_map(doc, name, decl_src, decl_tgt):
    decl = doc.maps.get(name)
    S, T = doc.space(decl_src), doc.space(decl_tgt)
    if decl is None:
        return LinMap.zero(S, T)
    if (decl.source, decl.target) != (decl_src, decl_tgt):
        raise ShapeError(f"map {name} must go {decl_src} -> {decl_tgt}")
    cols = []
    for lab in decl.entries:
        if lab not in S.labels:
            raise ShapeError(f"map {name}: unknown source label '{lab}'")
    for lab in S.labels:
        vec = decl.entries.get(lab, {})
        col = [ZERO] * T.dim
        for l, c in vec.items():
            if l not in T.labels:
                raise ShapeError(f"map {name}: unknown target label '{l}'")
            col[T.labels.index(l)] = c
        cols.append(tuple(col))
    return LinMap.from_columns(S, T, cols)


_MK = {"alt": alt, "sym": sym, "plain": plain}


def _build_tensor(doc, name, blocks_spec, out_ref):
    blocks = [_MK[k](doc.space(r), a) if k != "plain" or a != 1 else plain(doc.space(r))
              for k, a, r in blocks_spec]
    out = doc.space(out_ref)
    decl = doc.tensors.get(name)
    t = MultiTensor(blocks, out)
    if decl is None:
        return t
    if ([(k, a, r) for k, a, r in decl.blocks] != list(blocks_spec) or decl.output != out_ref):
        sig = " ".join(_block_token(*b) for b in blocks_spec)
        raise ShapeError(f"tensor {name} must have signature {sig} -> {out_ref}")
    slot_spaces = []
    for b in blocks:
        slot_spaces.extend([b.space] * b.arity)
    data = {}
    for key, vec in decl.entries.items():
        if len(key) != len(slot_spaces):
            raise ShapeError(f"tensor {name}: entry {key} has the wrong number of indices")
        idx = []
        for sp, l in zip(slot_spaces, key):
            if l not in sp.labels:
                raise ShapeError(f"tensor {name}: unknown label '{l}'")
            idx.append(sp.labels.index(l))
        sign, ck = t.canonical(tuple(idx))
        v = [ZERO] * out.dim
        for l, c in vec.items():
            if l not in out.labels:
                raise ShapeError(f"tensor {name}: unknown output label '{l}'")
            v[out.labels.index(l)] = c
        if sign == 0:
            if any(v):
                raise ShapeError(f"tensor {name}: nonzero value on degenerate key {key}")
            continue
        if ck in data:
            raise ShapeError(f"tensor {name}: entry {key} duplicates an equivalent key")
        data[ck] = tuple(sign * c for c in v)
    return MultiTensor(blocks, out, data)


def _check_schema(doc: Document, strict=True):
    if doc.kind not in SCHEMAS:
        raise ShapeError(f"cannot build an object of kind '{doc.kind}'")
    sch = SCHEMAS[doc.kind]
    for c in sch["children"]:
        if c not in doc.children:
            raise ShapeError(f"{doc.kind} document needs a 'begin {c}' block")
        if doc.children[c].kind != CHILD_KIND[c]:
            raise ShapeError(f"block '{c}' must have kind {CHILD_KIND[c]}")
    for r in sch["spaces"]:
        if r not in doc.spaces:
            raise ShapeError(f"{doc.kind} document needs 'space {r}'")
    if strict:
        for n in doc.maps:
            if n not in sch["maps"]:
                raise ShapeError(f"unknown map '{n}' for kind {doc.kind}")
        for n in doc.tensors:
            if n not in sch["tensors"] and not (doc.kind == "cochain"
                                                and _cochain_schema(n, doc.degree)):
                raise ShapeError(f"unknown tensor '{n}' for kind {doc.kind}")
        for c in doc.children:
            if c not in sch["children"]:
                raise ShapeError(f"unknown block '{c}' for kind {doc.kind}")


def to_object(doc: Document, strict=True):
    """Build the object described by ``doc``.  Shape problems raise ShapeError."""
    _check_schema(doc, strict)
    k = doc.kind
    sch = SCHEMAS[k]
    M = lambda n: _build_map(doc, n, *sch["maps"][n])
    T = lambda n: _build_tensor(doc, n, *sch["tensors"][n])
    try:
        if k == "l2a":
            return Lie2Algebra(doc.space("g0"), doc.space("gm1"), M("d"), T("l2_00"),
                               T("l2_01"), T("l3"), doc.name)
        if k == "lie":
            return LieAlgebra(doc.space("g"), T("bracket"), doc.name)
        if k == "leibniz":
            return LeibnizAlgebra(doc.space("g"), T("leibniz"), doc.name)
        if k in ("hom", "2mor"):
            s = to_object(doc.children["source"], strict)
            t = to_object(doc.children["target"], strict)
            phi = Hom2(s, t, M("phi0"), M("phi1"), T("phi2"))
            if k == "hom":
                return phi
            psi = Hom2(s, t, M("psi0"), M("psi1"), T("psi2"))
            return TwoMorphism(phi, psi, M("tau"))
        if k == "rep":
            g = to_object(doc.children["algebra"], strict)
            V = Complex2(doc.space("V0"), doc.space("Vm1"), M("partial"))
            return Rep2(g, V, T("a0"), T("a1"), T("b"), T("c"))
        if k == "cm2":
            from .crossedmod import build_cm2
            m = to_object(doc.children["m"], strict)
            g = to_object(doc.children["g"], strict)
            act = ActionByDerivations(g, m, T("a0"), T("a1"), T("b"), T("c"), T("lphi"))
            sig = T("sigma")
            return build_cm2(m, g, act, M("phi0"), M("phi1"),
                             lambda x, a: sig(x, a), doc.name or "cm2")
        if k == "cochain":
            if doc.degree is None:
                raise ShapeError("cochain document needs 'degree'")
            comps = {}
            for comp in components(doc.degree):
                nm = cochain_tensor_name(comp)
                blocks, out = _cochain_schema(nm, doc.degree)
                comps[comp] = _build_tensor(doc, nm, blocks, out)
            return Cochain(doc.degree, comps)
    except DimensionError as e:
        if isinstance(e, ShapeError):
            raise
        raise ShapeError(str(e)) from None
    raise ShapeError(f"unsupported kind '{k}'")


def cochain_matches(c: Cochain, doc: Document, rep: Rep2):
    """Shape check of a cochain document against a representation."""
    pairs = (("g0", rep.g.g0), ("gm1", rep.g.gm1), ("V0", rep.V.V0), ("Vm1", rep.V.Vm1))
    for role, sp in pairs:
        if doc.space(role).dim != sp.dim:
            raise ShapeError(f"cochain space {role} has dim {doc.space(role).dim}, "
                             f"expected {sp.dim}")
    comps = {}
    for comp, t in c.components.items():
        blocks, out = comp_blocks(rep, comp)
        comps[comp] = MultiTensor(blocks, out, dict(t.data))
    return Cochain(c.degree, comps)


def from_object(obj, name=None, rep: Rep2 = None) -> Document:
    """Document for a Lie2Algebra, LieAlgebra, LeibnizAlgebra, Hom2,
    TwoMorphism, Rep2, CrossedModule2 or (with ``rep``) a Cochain."""
    from .crossedmod import CrossedModule2
    if isinstance(obj, Lie2Algebra):
        d = Document("l2a", name=name if name is not None else obj.name)
        d.spaces = {"g0": obj.g0, "gm1": obj.gm1}
        d.maps = {"d": _map_decl(obj.d, "gm1", "g0")}
        d.tensors = {"l2_00": _tensor_decl(obj.l2_00, ["g0"], "g0"),
                     "l2_01": _tensor_decl(obj.l2_01, ["g0", "gm1"], "gm1"),
                     "l3": _tensor_decl(obj.l3, ["g0"], "gm1")}
        return d
    if isinstance(obj, LieAlgebra):
        d = Document("lie", name=name if name is not None else obj.name)
        d.spaces = {"g": obj.space}
        d.tensors = {"bracket": _tensor_decl(obj.bracket, ["g"], "g")}
        return d
    if isinstance(obj, LeibnizAlgebra):
        d = Document("leibniz", name=name if name is not None else obj.name)
        d.spaces = {"g": obj.space}
        d.tensors = {"leibniz": _tensor_decl(obj.bracket, ["g", "g"], "g")}
        return d
    if isinstance(obj, (Hom2, TwoMorphism)):
        phi = obj if isinstance(obj, Hom2) else obj.from_hom
        d = Document("hom" if isinstance(obj, Hom2) else "2mor", name=name or "")
        d.children = {"source": from_object(phi.source), "target": from_object(phi.target)}
        homs = [("phi", phi)] + ([("psi", obj.to_hom)] if isinstance(obj, TwoMorphism) else [])
        for p, h in homs:
            d.maps[p + "0"] = _map_decl(h.phi0, "source.g0", "target.g0")
            d.maps[p + "1"] = _map_decl(h.phi1, "source.gm1", "target.gm1")
            d.tensors[p + "2"] = _tensor_decl(h.phi2, ["source.g0"], "target.gm1")
        if isinstance(obj, TwoMorphism):
            d.maps["tau"] = _map_decl(obj.tau, "source.g0", "target.gm1")
        return d
    if isinstance(obj, Rep2):
        d = Document("rep", name=name or "")
        d.children = {"algebra": from_object(obj.g)}
        d.spaces = {"V0": obj.V.V0, "Vm1": obj.V.Vm1}
        d.maps = {"partial": _map_decl(obj.V.partial, "Vm1", "V0")}
        d.tensors = {"a0": _tensor_decl(obj.a0, ["algebra.g0", "V0"], "V0"),
                     "a1": _tensor_decl(obj.a1, ["algebra.g0", "Vm1"], "Vm1"),
                     "b": _tensor_decl(obj.b, ["algebra.gm1", "V0"], "Vm1"),
                     "c": _tensor_decl(obj.c, ["algebra.g0", "V0"], "Vm1")}
        return d
    if isinstance(obj, CrossedModule2):
        d = Document("cm2", name=name or "")
        d.children = {"m": from_object(obj.m), "g": from_object(obj.g)}
        phi0, phi1 = obj.varphi()
        d.maps = {"phi0": _map_decl(phi0, "m.g0", "g.g0"),
                  "phi1": _map_decl(phi1, "m.gm1", "g.gm1")}
        r = obj.action.rep
        sig = MultiTensor.from_function([plain(obj.g.g0), plain(obj.m.g0)], obj.g.gm1,
                                        obj.sigma)
        d.tensors = {"a0": _tensor_decl(r.a0, ["g.g0", "m.g0"], "m.g0"),
                     "a1": _tensor_decl(r.a1, ["g.g0", "m.gm1"], "m.gm1"),
                     "b": _tensor_decl(r.b, ["g.gm1", "m.g0"], "m.gm1"),
                     "c": _tensor_decl(r.c, ["g.g0", "m.g0"], "m.gm1"),
                     "lphi": _tensor_decl(obj.action.lphi, ["g.g0", "m.g0"], "m.gm1"),
                     "sigma": _tensor_decl(sig, ["g.g0", "m.g0"], "g.gm1")}
        return d
    if isinstance(obj, Cochain):
        if rep is None:
            raise ValueError("a cochain needs its representation")
        d = Document("cochain", name=name or "", degree=obj.degree)
        d.spaces = {"g0": rep.g.g0, "gm1": rep.g.gm1, "V0": rep.V.V0, "Vm1": rep.V.Vm1}
        for comp in components(obj.degree):
            t = obj.get(rep, comp)
            out = "V0" if comp[2] == 0 else "Vm1"
            d.tensors[cochain_tensor_name(comp)] = _tensor_decl(t, ["g0", "gm1"], out)
        return d
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, **kw) -> str:
    return emit(from_object(obj, **kw))


def loads(text: str, strict=True, path=None):
    return to_object(parse(text, strict, path), strict)


def read_file(path, strict=True) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), strict, str(path))
