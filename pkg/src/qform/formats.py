"""Text formats ``rg1``, ``nt1`` and ``chain1``, DOT export and JSON helpers.

All three formats are line oriented::

    format rg1
    # comment
    vertex v1 genus=0 euler=-3
    vertex v3 genus=0 euler=-1 mult=6
    edge v1 v3
    arrow a1 v3 mult=1

    format nt1
    vertex a genus=30
    edge p1 a b screw=1 orbit=C index=0
    arrow dl a screw=1

    format chain1
    chain s6 = -d_l + p_1 + d_r

Forward references are allowed; dangling ones are reported at the line that
makes them.
"""

import json
import re
from fractions import Fraction

from .errors import GraphError, ParseError, UnknownEdge
from .graph import (
    Arrow,
    NTArrow,
    NTEdge,
    NTGraph,
    OneChain,
    Piece,
    ResolutionGraph,
    Vertex,
)

ID_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.:]*\Z")
INT_RE = re.compile(r"[+-]?\d+\Z")
FORMATS = ("rg1", "nt1", "chain1")


def _lines(text):
    """Yield (lineno, tokens-with-columns) for non-blank lines."""
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if toks:
            yield no, toks


class _Reader:
    def __init__(self, text, fmt, file=None):
        self.file = file
        self.fmt = fmt
        self.lines = list(_lines(text))
        if not self.lines:
            raise ParseError(f"empty input, expected 'format {fmt}'", 1, file=file)
        no, toks = self.lines[0]
        words = [t for t, _ in toks]
        if words[:1] != ["format"] or len(words) != 2:
            raise ParseError(f"first line must be 'format {fmt}'", no, toks[0][1], toks[0][0], file)
        if words[1] != fmt:
            raise ParseError(f"expected format {fmt}, got {words[1]}", no, toks[1][1], words[1], file)

    def body(self):
        return self.lines[1:]

    def error(self, msg, no, tok=None):
        if tok is None:
            return ParseError(msg, no, 1, None, self.file)
        return ParseError(msg, no, tok[1], tok[0], self.file)

    def ident(self, no, tok):
        if not ID_RE.match(tok[0]):
            raise self.error("invalid identifier", no, tok)
        return tok[0]

    def options(self, no, toks, allowed):
        out = {}
        for tok in toks:
            key, eq, val = tok[0].partition("=")
            if not eq:
                raise self.error("expected key=value", no, tok)
            if key not in allowed:
                raise self.error(f"unknown decoration {key!r}", no, tok)
            if key in out:
                raise self.error(f"duplicate decoration {key!r}", no, tok)
            if allowed[key] is int:
                if not INT_RE.match(val):
                    raise self.error(f"{key} must be an integer", no, tok)
                out[key] = (int(val), tok)
            else:
                if not ID_RE.match(val):
                    raise self.error(f"{key} must be an identifier", no, tok)
                out[key] = (val, tok)
        return out


def _positive(reader, no, opts, key):
    val, tok = opts[key]
    if val <= 0:
        raise reader.error(f"{key} must be positive", no, tok)
    return val


def _nonneg(reader, no, opts, key):
    val, tok = opts[key]
    if val < 0:
        raise reader.error(f"{key} must be nonnegative", no, tok)
    return val


def detect_format(text, file=None):
    for no, toks in _lines(text):
        words = [t for t, _ in toks]
        if words[0] == "format" and len(words) == 2 and words[1] in FORMATS:
            return words[1]
        raise ParseError("missing 'format rg1|nt1|chain1' header", no, toks[0][1], toks[0][0], file)
    raise ParseError("empty input", 1, file=file)


# ---------------------------------------------------------------------------
# rg1
# ---------------------------------------------------------------------------


def parse_resolution(text, file=None):
    r = _Reader(text, "rg1", file)
    vertices, edges, arrows = [], [], []
    where = {}  # id -> (lineno, token)
    edge_lines = []
    for no, toks in r.body():
        kw = toks[0][0]
        if kw == "vertex":
            if len(toks) < 2:
                raise r.error("vertex needs an id", no, toks[0])
            vid = r.ident(no, toks[1])
            if vid in where:
                raise r.error(f"duplicate id {vid!r}", no, toks[1])
            opts = r.options(no, toks[2:], {"genus": int, "euler": int, "mult": int})
            if "genus" not in opts:
                raise r.error("vertex needs genus=<int>", no, toks[1])
            genus = _nonneg(r, no, opts, "genus")
            euler = opts["euler"][0] if "euler" in opts else None
            mult = _positive(r, no, opts, "mult") if "mult" in opts else None
            vertices.append(Vertex(vid, genus, euler, mult))
            where[vid] = (no, toks[1])
        elif kw == "edge":
            if len(toks) != 3:
                raise r.error("edge takes exactly two vertex ids", no, toks[0])
            u, w = r.ident(no, toks[1]), r.ident(no, toks[2])
            edges.append((u, w))
            edge_lines.append((no, toks))
        elif kw == "arrow":
            if len(toks) < 3:
                raise r.error("arrow needs an id and a vertex id", no, toks[0])
            aid = r.ident(no, toks[1])
            if aid in where:
                raise r.error(f"duplicate id {aid!r}", no, toks[1])
            vid = r.ident(no, toks[2])
            opts = r.options(no, toks[3:], {"mult": int})
            mult = _positive(r, no, opts, "mult") if "mult" in opts else 1
            arrows.append(Arrow(aid, vid, mult))
            where[aid] = (no, toks[1])
            edge_lines.append((no, toks))
        else:
            raise r.error(f"unknown keyword {kw!r}", no, toks[0])

    vids = {v.id for v in vertices}
    for no, toks in edge_lines:
        ends = toks[1:3] if toks[0][0] == "edge" else toks[2:3]
        for tok in ends:
            if tok[0] not in vids:
                raise r.error(f"undeclared vertex {tok[0]!r}", no, tok)
    if not vertices:
        raise r.error("no vertices declared", r.lines[0][0])
    has_e = [v.euler is not None for v in vertices]
    has_m = [v.mult is not None for v in vertices]
    if not (all(has_e) or all(has_m)):
        # point at the first vertex that breaks whichever decoration is more complete
        flags = has_e if sum(has_e) >= sum(has_m) else has_m
        bad = vertices[flags.index(False)].id
        name = "euler" if flags is has_e else "mult"
        no, tok = where[bad]
        raise r.error(f"mixed decorations: vertex lacks {name}= while others carry it", no, tok)
    try:
        return ResolutionGraph(vertices, edges, arrows)
    except GraphError as exc:
        no, tok = where.get(exc.item, (r.lines[0][0], None))
        raise r.error(str(exc), no, tok) from None


def serialize_resolution(graph):
    out = ["format rg1"]
    for v in graph.vertices:
        parts = [f"vertex {v.id} genus={v.genus}"]
        if v.euler is not None:
            parts.append(f"euler={v.euler}")
        if v.mult is not None:
            parts.append(f"mult={v.mult}")
        out.append(" ".join(parts))
    for u, w in graph.edges:
        out.append(f"edge {u} {w}")
    for a in graph.arrows:
        out.append(f"arrow {a.id} {a.vertex} mult={a.mult}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# nt1
# ---------------------------------------------------------------------------


def _orbit(r, no, opts, head):
    if ("orbit" in opts) != ("index" in opts):
        raise r.error("orbit= and index= must be given together", no, head)
    if "orbit" not in opts:
        return None, 0
    return opts["orbit"][0], _nonneg(r, no, opts, "index")


def parse_ntgraph(text, file=None):
    r = _Reader(text, "nt1", file)
    pieces, edges, arrows = [], [], []
    where = {}
    refs = []
    for no, toks in r.body():
        kw = toks[0][0]
        if kw == "vertex":
            if len(toks) < 2:
                raise r.error("vertex needs an id", no, toks[0])
            pid = r.ident(no, toks[1])
            opts = r.options(no, toks[2:], {"genus": int, "orbit": str, "index": int})
            if "genus" not in opts:
                raise r.error("vertex needs genus=<int>", no, toks[1])
            orbit, index = _orbit(r, no, opts, toks[1])
            item = Piece(pid, _nonneg(r, no, opts, "genus"), orbit, index)
            pieces.append(item)
        elif kw == "edge":
            if len(toks) < 4:
                raise r.error("edge needs an id and two vertex ids", no, toks[0])
            eid = r.ident(no, toks[1])
            u, v = r.ident(no, toks[2]), r.ident(no, toks[3])
            opts = r.options(no, toks[4:], {"screw": int, "orbit": str, "index": int})
            if "screw" not in opts:
                raise r.error("edge needs screw=<posint>", no, toks[1])
            orbit, index = _orbit(r, no, opts, toks[1])
            item = NTEdge(eid, u, v, _positive(r, no, opts, "screw"), orbit, index)
            edges.append(item)
            refs.append((no, toks[2:4]))
        elif kw == "arrow":
            if len(toks) < 3:
                raise r.error("arrow needs an id and a vertex id", no, toks[0])
            aid = r.ident(no, toks[1])
            p = r.ident(no, toks[2])
            opts = r.options(no, toks[3:], {"screw": int, "orbit": str, "index": int})
            if "screw" not in opts:
                raise r.error("arrow needs screw=<posint>", no, toks[1])
            orbit, index = _orbit(r, no, opts, toks[1])
            item = NTArrow(aid, p, _positive(r, no, opts, "screw"), orbit, index)
            arrows.append(item)
            refs.append((no, toks[2:3]))
        else:
            raise r.error(f"unknown keyword {kw!r}", no, toks[0])
        if item.id in where:
            raise r.error(f"duplicate id {item.id!r}", no, toks[1])
        where[item.id] = (no, toks[1])

    pids = {p.id for p in pieces}
    for no, ends in refs:
        for tok in ends:
            if tok[0] not in pids:
                raise r.error(f"undeclared vertex {tok[0]!r}", no, tok)
    if not pieces:
        raise r.error("no vertices declared", r.lines[0][0])
    try:
        return NTGraph(pieces, edges, arrows)
    except GraphError as exc:
        no, tok = where.get(exc.item, (r.lines[0][0], None))
        raise r.error(str(exc), no, tok) from None


def _orbit_suffix(x):
    if x.orbit is None:
        return ""
    return f" orbit={x.orbit} index={x.index}"


def serialize_ntgraph(nt):
    out = ["format nt1"]
    for p in nt.pieces:
        out.append(f"vertex {p.id} genus={p.genus}{_orbit_suffix(p)}")
    for e in nt.edges:
        out.append(f"edge {e.id} {e.u} {e.v} screw={e.screw}{_orbit_suffix(e)}")
    for a in nt.arrows:
        out.append(f"arrow {a.id} {a.piece} screw={a.screw}{_orbit_suffix(a)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# chain1
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"\s*([+-])?\s*([A-Za-z0-9_][A-Za-z0-9_.:]*)")


def _parse_body(r, no, raw, offset):
    coeffs = []
    pos = 0
    first = True
    while pos < len(raw):
        if raw[pos:].strip() == "":
            break
        m = _TERM_RE.match(raw, pos)
        col = offset + pos + 1
        if not m or (m.group(1) is None and not first):
            bad = raw[pos:].split()[0]
            raise ParseError("expected '+ <id>' or '- <id>'", no, col, bad, r.file)
        sign = -1 if m.group(1) == "-" else 1
        coeffs.append((m.group(2), sign, offset + m.start(2) + 1))
        pos = m.end()
        first = False
    return coeffs


def parse_chains(text, graph=None, file=None):
    """Parse named chains; with ``graph`` given, ids are checked against
    its edges and arrows (``UnknownEdge`` otherwise).

    Returns a list of ``(name, OneChain)`` in file order.
    """
    r = _Reader(text, "chain1", file)
    known = set(graph.chain_ids()) if graph is not None else None
    out = []
    names = set()
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip() or no == r.lines[0][0]:
            continue
        m = re.match(r"\s*chain\s+(\S+)\s*=", line)
        if not m:
            first = line.split()[0]
            raise ParseError(
                "expected 'chain <name> = ...'", no, line.index(first) + 1, first, r.file
            )
        name = m.group(1)
        if not ID_RE.match(name):
            raise ParseError("invalid chain name", no, m.start(1) + 1, name, r.file)
        if name in names:
            raise ParseError(f"duplicate chain {name!r}", no, m.start(1) + 1, name, r.file)
        names.add(name)
        terms = _parse_body(r, no, line[m.end():], m.end())
        if known is not None:
            for cid, _, col in terms:
                if cid not in known:
                    where = f"{file or '<input>'}:{no}:{col}"
                    raise UnknownEdge(f"{where}: unknown edge or arrow {cid!r} in chain {name!r}")
        out.append((name, OneChain([(cid, s) for cid, s, _ in terms])))
    return out


def format_chain(chain):
    terms = []
    for cid, c in chain.coefficients:
        sign = "-" if c < 0 else "+"
        terms.extend([(sign, cid)] * abs(c))
    if not terms:
        return ""
    first_sign, first_id = terms[0]
    body = ("-" if first_sign == "-" else "") + first_id
    for sign, cid in terms[1:]:
        body += f" {sign} {cid}"
    return body


def serialize_chains(chains):
    out = ["format chain1"]
    for name, chain in chains:
        body = format_chain(chain)
        out.append(f"chain {name} = {body}".rstrip())
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# DOT
# ---------------------------------------------------------------------------


def _q(s):
    return '"' + str(s).replace('"', r"\"") + '"'


def to_dot(graph, multiplicities=None, name="G"):
    """Undirected DOT text; ids sorted lexicographically for stable output."""
    out = [f"graph {name} {{"]
    if isinstance(graph, NTGraph):
        for p in sorted(graph.pieces, key=lambda x: x.id):
            out.append(f"  {_q(p.id)} [label={_q(f'{p.id}:g={p.genus}')}];")
        for a in sorted(graph.arrows, key=lambda x: x.id):
            out.append(f"  {_q(a.id)} [shape=point];")
        for e in sorted(graph.edges, key=lambda x: x.id):
            out.append(f"  {_q(e.u)} -- {_q(e.v)} [label={_q(f's={e.screw}')}];")
        for a in sorted(graph.arrows, key=lambda x: x.id):
            out.append(f"  {_q(a.piece)} -- {_q(a.id)} [dir=forward, label={_q(f's={a.screw}')}];")
    else:
        mult = dict(graph.given_multiplicities())
        mult.update(multiplicities or {})
        for v in sorted(graph.vertices, key=lambda x: x.id):
            label = f"{v.id}:g={v.genus}"
            if v.id in mult:
                label += f",m={mult[v.id]}"
            out.append(f"  {_q(v.id)} [label={_q(label)}];")
        for a in sorted(graph.arrows, key=lambda x: x.id):
            out.append(f"  {_q(a.id)} [shape=point];")
        for u, w in sorted(tuple(sorted(e)) for e in graph.edges):
            out.append(f"  {_q(u)} -- {_q(w)};")
        for a in sorted(graph.arrows, key=lambda x: x.id):
            out.append(f"  {_q(a.vertex)} -- {_q(a.id)} [dir=forward];")
    out.append("}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

SAFE_INT = 2**53


def jsonable(obj):
    """Recursively convert to JSON-safe values: Fractions become ``"p/q"``
    strings and integers beyond 53 bits become decimal strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) < SAFE_INT else str(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj):
    return json.dumps(jsonable(obj), indent=2) + "\n"
