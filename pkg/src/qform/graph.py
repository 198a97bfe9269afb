"""Data model for decorated resolution graphs and Nielsen-Thurston graphs.

Everything here is an immutable value. Validation happens at construction
time, so holding a ``ResolutionGraph`` or ``NTGraph`` means holding a
structurally valid one.
"""

import re
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import GraphError, NoNode


# ---------------------------------------------------------------------------
# Resolution graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Vertex:
    id: str
    genus: int = 0
    euler: Optional[int] = None
    mult: Optional[int] = None


@dataclass(frozen=True)
class Arrow:
    id: str
    vertex: str
    mult: int = 1


@dataclass(frozen=True)
class ResolutionGraph:
    """Decorated dual graph of the total transform.

    ``edges`` is a tuple of unordered vertex pairs (stored in declaration
    order); loops and parallel edges are allowed. Arrowheads are endpoints
    of their own, never vertices.
    """

    vertices: tuple
    edges: tuple = ()
    arrows: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        _validate_resolution(self)

    @property
    def vertex_ids(self):
        return [v.id for v in self.vertices]

    def vertex(self, vid):
        return self._index[vid]

    @property
    def _index(self):
        return {v.id: v for v in self.vertices}

    @property
    def has_euler(self):
        return all(v.euler is not None for v in self.vertices)

    @property
    def has_mult(self):
        return all(v.mult is not None for v in self.vertices)

    def given_multiplicities(self):
        return {v.id: v.mult for v in self.vertices if v.mult is not None}

    def arrows_at(self, vid):
        return [a for a in self.arrows if a.vertex == vid]

    def neighbors(self, vid):
        """Vertex neighbours with repetition; a loop lists ``vid`` twice."""
        out = []
        for u, w in self.edges:
            if u == vid:
                out.append(w)
            if w == vid:
                out.append(u)
        return out

    def loops_at(self, vid):
        return sum(1 for u, w in self.edges if u == w == vid)


def _validate_resolution(g):
    ids = Counter([v.id for v in g.vertices] + [a.id for a in g.arrows])
    dup = sorted(i for i, c in ids.items() if c > 1)
    if dup:
        raise GraphError(f"duplicate id {dup[0]!r}", item=dup[0])
    if not g.vertices:
        raise GraphError("graph has no vertices")
    vids = {v.id for v in g.vertices}
    for v in g.vertices:
        if v.genus < 0:
            raise GraphError(f"vertex {v.id!r} has negative genus", item=v.id)
        if v.mult is not None and v.mult <= 0:
            raise GraphError(f"vertex {v.id!r} has non-positive multiplicity", item=v.id)
    for u, w in g.edges:
        for x in (u, w):
            if x not in vids:
                raise GraphError(f"edge endpoint {x!r} is not a vertex", item=x)
    for a in g.arrows:
        if a.vertex not in vids:
            raise GraphError(f"arrow {a.id!r} attached to unknown vertex {a.vertex!r}", item=a.id)
        if a.mult <= 0:
            raise GraphError(f"arrow {a.id!r} has non-positive multiplicity", item=a.id)
    if not (g.has_euler or g.has_mult):
        lacking = next(v.id for v in g.vertices if v.euler is None)
        raise GraphError(
            "every vertex must carry euler=, or every vertex must carry mult=", item=lacking
        )
    unreached = unreachable_vertices(g)
    if unreached:
        raise GraphError(f"graph is disconnected: {unreached[0]!r} is unreachable", item=unreached[0])


def unreachable_vertices(g):
    """Vertices not connected to the first declared vertex (arrows attach
    to a single vertex, so they never connect anything)."""
    adj = defaultdict(set)
    for u, w in g.edges:
        adj[u].add(w)
        adj[w].add(u)
    start = g.vertices[0].id
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return [v.id for v in g.vertices if v.id not in seen]


@dataclass(frozen=True)
class VertexClass:
    valency: int
    chi: int

    @property
    def is_node(self):
        return self.chi < 0


def classify(graph):
    """Valency and Euler characteristic ``2 - 2g - valency`` per vertex.

    Arrows count toward the valency, loops count twice.
    """
    val = Counter()
    for u, w in graph.edges:
        val[u] += 1
        val[w] += 1
    for a in graph.arrows:
        val[a.vertex] += 1
    return {
        v.id: VertexClass(val[v.id], 2 - 2 * v.genus - val[v.id]) for v in graph.vertices
    }


def nodes(graph):
    cls = classify(graph)
    return [vid for vid in graph.vertex_ids if cls[vid].is_node]


@dataclass(frozen=True)
class Bamboo:
    """Maximal chain of valency-2 genus-0 vertices between two ends.

    ``vertices`` runs from ``start`` (always a node) to the last vertex
    before ``end``; for node-to-node bamboos it includes both nodes. ``end``
    is a node id or, for ``kind == "boundary"``, an arrow id.
    """

    id: str
    start: str
    end: str
    kind: str  # interior | boundary | loop
    vertices: tuple
    edges: tuple  # indices into graph.edges

    @property
    def interior(self):
        if self.kind == "boundary":
            return self.vertices[1:]
        return self.vertices[1:-1]


@dataclass(frozen=True)
class DeadBranch:
    node: str
    vertices: tuple  # from the node's neighbour out to the leaf
    edges: tuple


def _half_edges(graph):
    """Map vertex -> list of (edge index, far endpoint). Loops appear twice."""
    out = defaultdict(list)
    for i, (u, w) in enumerate(graph.edges):
        out[u].append((i, w))
        out[w].append((i, u))
    return out


def decompose(graph):
    """Split the edges of ``graph`` into bamboos and dead branches.

    Returns ``(bamboos, dead_branches)``. Every edge lands in exactly one
    of them. Raises ``NoNode`` when no vertex has negative Euler
    characteristic.
    """
    cls = classify(graph)
    node_ids = [vid for vid in graph.vertex_ids if cls[vid].is_node]
    if not node_ids:
        raise NoNode("graph has no node (no vertex with 2 - 2g - valency < 0)")
    order = {vid: i for i, vid in enumerate(graph.vertex_ids)}
    half = _half_edges(graph)
    arrows_at = defaultdict(list)
    for a in graph.arrows:
        arrows_at[a.vertex].append(a)

    used = set()
    bamboos = []
    dead = []
    for n in node_ids:
        for a in arrows_at[n]:
            bamboos.append(("boundary", n, a.id, (n,), ()))
        for ei, far in half[n]:
            if ei in used:
                continue
            used.add(ei)
            chain = [n]
            edges = [ei]
            prev_edge = ei
            cur = far
            while True:
                if cls[cur].is_node:
                    chain.append(cur)
                    kind = "loop" if cur == n else "interior"
                    bamboos.append((kind, n, cur, tuple(chain), tuple(edges)))
                    break
                chain.append(cur)
                if cls[cur].valency == 1:
                    dead.append(DeadBranch(n, tuple(chain[1:]), tuple(edges)))
                    break
                # valency 2, genus 0: continue through the other half-edge
                nxt = [(i, w) for i, w in half[cur] if i != prev_edge]
                if not nxt:
                    # second half-edge is an arrow
                    arrow = arrows_at[cur][0]
                    bamboos.append(("boundary", n, arrow.id, tuple(chain), tuple(edges)))
                    break
                prev_edge, cur = nxt[0]
                used.add(prev_edge)
                edges.append(prev_edge)

    bamboos.sort(key=lambda b: (order[b[1]], b[4][:1] or (-1,), b[2]))
    prefix = _fresh_prefix(graph, "b")
    out = []
    for k, (kind, start, end, chain, edges) in enumerate(bamboos, 1):
        out.append(Bamboo(f"{prefix}{k}", start, end, kind, chain, edges))
    return out, dead


def _fresh_prefix(graph, prefix):
    """A prefix p such that no vertex or arrow id looks like p<digits>..."""
    taken = [v.id for v in graph.vertices] + [a.id for a in graph.arrows]
    while any(re.match(re.escape(prefix) + r"\d", t) for t in taken):
        prefix += prefix[0]
    return prefix


def bamboos(graph):
    return decompose(graph)[0]


def dead_branches(graph, node=None):
    dead = decompose(graph)[1]
    if node is None:
        return dead
    return [d for d in dead if d.node == node]


# ---------------------------------------------------------------------------
# Nielsen-Thurston graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    id: str
    genus: int
    orbit: Optional[str] = None
    index: int = 0
    source: Optional[str] = field(default=None, compare=False)  # originating node


@dataclass(frozen=True)
class NTEdge:
    """Annulus-orbit curve. Reference orientation runs ``u -> v``."""

    id: str
    u: str
    v: str
    screw: int
    orbit: Optional[str] = None
    index: int = 0


@dataclass(frozen=True)
class NTArrow:
    """Boundary annulus; oriented from its piece outward."""

    id: str
    piece: str
    screw: int
    orbit: Optional[str] = None
    index: int = 0


def _orbit_key(item):
    return item.orbit if item.orbit is not None else item.id


@dataclass(frozen=True)
class NTGraph:
    pieces: tuple
    edges: tuple = ()
    arrows: tuple = ()
    _lookup: dict = field(default=None, init=False, compare=False, repr=False)
    _members: dict = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        lookup = {}
        for x in self.pieces + self.edges + self.arrows:
            if x.id in lookup:
                raise GraphError(f"duplicate id {x.id!r}", item=x.id)
            lookup[x.id] = x
        object.__setattr__(self, "_lookup", lookup)
        members = {}
        for kind in (self.pieces, self.edges, self.arrows):
            for key, items in _orbits(kind).items():
                members[key, type(items[0])] = [i.id for i in items]
        object.__setattr__(self, "_members", members)
        _validate_nt(self)

    def __getitem__(self, key):
        return self._lookup[key]

    def __contains__(self, key):
        return key in self._lookup

    @property
    def piece_ids(self):
        return [p.id for p in self.pieces]

    def chain_ids(self):
        """Ids that may carry chain coefficients: edges then arrows."""
        return [e.id for e in self.edges] + [a.id for a in self.arrows]

    def screw(self, cid):
        return self._lookup[cid].screw

    def piece_orbits(self):
        return _orbits(self.pieces)

    def edge_orbits(self):
        return _orbits(self.edges)

    def arrow_orbits(self):
        return _orbits(self.arrows)

    def act(self, item_id):
        """Image under the induced automorphism: index ``j -> j + 1``."""
        x = self._lookup[item_id]
        members = self._members[_orbit_key(x), type(x)]
        return members[(x.index + 1) % len(members)]

    def betti1(self):
        return len(self.edges) - len(self.pieces) + 1


def _orbits(items):
    groups = defaultdict(list)
    for x in items:
        groups[_orbit_key(x)].append(x)
    return {k: sorted(v, key=lambda x: x.index) for k, v in groups.items()}


def _validate_nt(g):
    if not g.pieces:
        raise GraphError("Nielsen-Thurston graph has no vertices")
    pids = {p.id for p in g.pieces}
    for p in g.pieces:
        if p.genus < 0:
            raise GraphError(f"piece {p.id!r} has negative genus", item=p.id)
    for e in g.edges:
        for x in (e.u, e.v):
            if x not in pids:
                raise GraphError(f"edge {e.id!r} endpoint {x!r} is not a vertex", item=e.id)
        if e.screw <= 0:
            raise GraphError(f"edge {e.id!r} needs a positive screw weight", item=e.id)
    for a in g.arrows:
        if a.piece not in pids:
            raise GraphError(f"arrow {a.id!r} attached to unknown vertex {a.piece!r}", item=a.id)
        if a.screw <= 0:
            raise GraphError(f"arrow {a.id!r} needs a positive screw weight", item=a.id)

    for kind in (g.pieces, g.edges, g.arrows):
        for key, items in _orbits(kind).items():
            if [x.index for x in items] != list(range(len(items))):
                raise GraphError(f"orbit {key!r} must use indices 0..{len(items) - 1} once each", item=items[0].id)
            if hasattr(items[0], "screw") and len({x.screw for x in items}) > 1:
                raise GraphError(f"screw weight is not constant on orbit {key!r}", item=items[0].id)

    def h(pid):
        return g.act(pid)

    for key, items in _orbits(g.edges).items():
        n = len(items)
        for j, e in enumerate(items):
            img = items[(j + 1) % n]
            if (h(e.u), h(e.v)) != (img.u, img.v):
                raise GraphError(f"edge orbit {key!r} is not compatible with the vertex action", item=e.id)
    for key, items in _orbits(g.arrows).items():
        n = len(items)
        for j, a in enumerate(items):
            if h(a.piece) != items[(j + 1) % n].piece:
                raise GraphError(f"arrow orbit {key!r} is not compatible with the vertex action", item=a.id)

    adj = defaultdict(set)
    for e in g.edges:
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    start = g.pieces[0].id
    seen = {start}
    todo = deque([start])
    while todo:
        x = todo.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    missing = [p for p in g.piece_ids if p not in seen]
    if missing:
        raise GraphError(f"Nielsen-Thurston graph is disconnected: {missing[0]!r} is unreachable", item=missing[0])


# ---------------------------------------------------------------------------
# Chains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OneChain:
    """Integer 1-chain on edges and arrows, relative to their reference
    orientations. Zero coefficients are dropped."""

    coefficients: tuple = ()  # sorted (id, coeff) pairs

    def __init__(self, coefficients=None):
        acc = Counter()
        items = coefficients.items() if isinstance(coefficients, dict) else (coefficients or ())
        for k, c in items:
            acc[k] += c
        object.__setattr__(self, "coefficients", tuple(sorted((k, c) for k, c in acc.items() if c)))

    def __getitem__(self, key):
        return dict(self.coefficients).get(key, 0)

    def as_dict(self):
        return dict(self.coefficients)

    def support(self):
        return [k for k, _ in self.coefficients]

    def __bool__(self):
        return bool(self.coefficients)

    def __add__(self, other):
        return OneChain(list(self.coefficients) + list(other.coefficients))

    def __neg__(self):
        return OneChain({k: -c for k, c in self.coefficients})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return OneChain({i: k * c for i, c in self.coefficients})
