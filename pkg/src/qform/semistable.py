"""Semistable reduction graph (Nielsen-Thurston graph) from a resolution graph.

Each node ``v`` contributes ``d_v`` periodic pieces, where ``d_v`` is the gcd
of ``m_v`` with the multiplicities of all its neighbours (arrows included).
Dead branches are folded into their node's pieces. Each bamboo ``b`` with
common gcd ``d_b`` contributes ``d_b`` annuli; annulus ``j`` joins piece
``j mod d_v`` to piece ``j mod d_w``, which is the cyclic gluing compatible
with the monodromy acting by ``j -> j + 1``.
"""

from collections import defaultdict
from dataclasses import dataclass
from math import gcd

from .errors import (
    AmbiguousLoopAttachment,
    DisconnectedSemistable,
    GraphError,
    InconsistentPiece,
)
from .graph import NTArrow, NTEdge, NTGraph, Piece, classify, decompose
from .multiplicity import multiplicities
from .screw import screws as compute_screws


@dataclass(frozen=True)
class PieceData:
    node: str
    d: int  # number of pieces over the node
    chi_total: int
    chi: int  # per piece
    r: int  # boundary circles per piece
    genus: int


def _node_gcd(graph, v, mults):
    d = mults[v]
    for w in graph.neighbors(v):
        d = gcd(d, mults[w])
    for a in graph.arrows_at(v):
        d = gcd(d, a.mult)
    return d


def piece_data(graph, mults, bamboos, dead, screw_entries):
    cls = classify(graph)
    dmap = {x.bamboo: x.d for x in screw_entries}
    out = {}
    for v in graph.vertex_ids:
        if not cls[v].is_node:
            continue
        dv = _node_gcd(graph, v, mults)
        chi_total = mults[v] * cls[v].chi
        for br in dead:
            if br.node == v:
                chi_total += sum(mults[u] * cls[u].chi for u in br.vertices)
        r_sum = 0
        for b in bamboos:
            ends = [b.start] + ([b.end] if b.kind != "boundary" else [])
            k = ends.count(v)
            if k:
                if dmap[b.id] % dv:
                    raise InconsistentPiece(
                        f"node {v!r}: d_v={dv} does not divide d={dmap[b.id]} of bamboo {b.id}"
                    )
                r_sum += k * dmap[b.id]
        if chi_total % dv or r_sum % dv:
            raise InconsistentPiece(
                f"node {v!r}: Euler characteristic {chi_total} or boundary count {r_sum} "
                f"not divisible by the number of pieces {dv}"
            )
        chi, r = chi_total // dv, r_sum // dv
        twice_g = 2 - chi - r
        if twice_g < 0 or twice_g % 2:
            raise InconsistentPiece(f"node {v!r}: pieces would have genus {twice_g}/2")
        out[v] = PieceData(v, dv, chi_total, chi, r, twice_g // 2)
    return out


def _on_cycle(bamboos):
    """Nodes lying on a cycle of the node-level graph (bamboos as edges)."""
    links = [(b.start, b.end, b.id) for b in bamboos if b.kind != "boundary"]
    out = set()
    for u, w, bid in links:
        if u == w:
            out.add(u)
            continue
        adj = defaultdict(set)
        for a, c, other in links:
            if other != bid:
                adj[a].add(c)
                adj[c].add(a)
        seen, todo = {u}, [u]
        while todo:
            x = todo.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        if w in seen:
            out.update((u, w))
    return out


def _piece_id(v, j, dv):
    return v if dv == 1 else f"{v}.{j}"


def build_ntgraph(graph, mults=None, screws=None):
    """Nielsen-Thurston graph of the monodromy of ``graph``.

    ``mults`` and ``screws`` are computed when not supplied.
    """
    if mults is None:
        mults = multiplicities(graph)
    bamboos, dead = decompose(graph)
    if screws is None:
        screws = compute_screws(graph, mults, bamboos)
    entries = screws.by_bamboo()
    data = piece_data(graph, mults, bamboos, dead, screws.entries)

    cyclic = _on_cycle(bamboos)
    for v, pd in data.items():
        if pd.d > 1 and v in cyclic:
            raise AmbiguousLoopAttachment(
                f"node {v!r} has {pd.d} pieces and lies on a cycle of the graph; "
                "the gluing of pieces around the cycle is not determined"
            )

    pieces = []
    for v in graph.vertex_ids:
        if v in data:
            dv = data[v].d
            for j in range(dv):
                pieces.append(
                    Piece(_piece_id(v, j, dv), data[v].genus, v if dv > 1 else None, j, source=v)
                )
    edges, arrows = [], []
    for b in bamboos:
        bs = entries[b.id]
        db = bs.d
        dv = data[b.start].d
        for j in range(db):
            orbit = b.id if db > 1 else None
            u = _piece_id(b.start, j % dv, dv)
            if b.kind == "boundary":
                aid = b.end if db == 1 else f"{b.end}.{j}"
                arrows.append(NTArrow(aid, u, bs.s, b.end if db > 1 else None, j))
            else:
                dw = data[b.end].d
                eid = b.id if db == 1 else f"{b.id}.{j}"
                w = _piece_id(b.end, j % dw, dw)
                edges.append(NTEdge(eid, u, w, bs.s, orbit, j))
    try:
        return NTGraph(pieces, edges, arrows)
    except GraphError as exc:
        if "disconnected" in str(exc):
            raise DisconnectedSemistable(str(exc)) from None
        raise


@dataclass(frozen=True)
class Quotient:
    vertices: tuple  # piece-orbit keys
    edges: tuple  # (edge-orbit key, vertex key, vertex key)
    arrows: tuple  # (arrow-orbit key, vertex key)


def quotient_graph(nt):
    def okey(x):
        return x.orbit if x.orbit is not None else x.id

    porb = {p.id: okey(p) for p in nt.pieces}
    verts = tuple(dict.fromkeys(okey(p) for p in nt.pieces))
    edges = tuple((k, porb[items[0].u], porb[items[0].v]) for k, items in nt.edge_orbits().items())
    arrows = tuple((k, porb[items[0].piece]) for k, items in nt.arrow_orbits().items())
    return Quotient(verts, edges, arrows)


def is_quotient_tree(nt):
    q = quotient_graph(nt)
    if len(q.edges) != len(q.vertices) - 1:
        return False
    adj = defaultdict(set)
    for _, a, b in q.edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, todo = {q.vertices[0]}, [q.vertices[0]]
    while todo:
        x = todo.pop()
        for y in adj[x] - seen:
            seen.add(y)
            todo.append(y)
    return len(seen) == len(q.vertices)
