"""Multiplicity system of the total transform from the intersection matrix."""

from dataclasses import dataclass

from . import linalg
from .errors import (
    DecorationMismatch,
    InvariantError,
    MissingEuler,
    NonIntegralSolution,
    NonPositiveSolution,
    NotNegativeDefinite,
)


@dataclass(frozen=True)
class IntersectionMatrix:
    order: tuple  # vertex ids, row/column order
    matrix: tuple  # tuple of tuples
    load: tuple  # summed arrow multiplicities per vertex

    def rows(self):
        return [list(r) for r in self.matrix]


def intersection_matrix(graph):
    """Self-intersections on the diagonal (``euler + 2 * loops``), edge
    counts off the diagonal, and the arrow load vector."""
    missing = [v.id for v in graph.vertices if v.euler is None]
    if missing:
        raise MissingEuler(f"vertex {missing[0]!r} has no euler= decoration")
    order = graph.vertex_ids
    pos = {vid: i for i, vid in enumerate(order)}
    n = len(order)
    m = [[0] * n for _ in range(n)]
    for v in graph.vertices:
        m[pos[v.id]][pos[v.id]] = v.euler
    for u, w in graph.edges:
        i, j = pos[u], pos[w]
        if i == j:
            m[i][i] += 2
        else:
            m[i][j] += 1
            m[j][i] += 1
    load = [0] * n
    for a in graph.arrows:
        load[pos[a.vertex]] += a.mult
    return IntersectionMatrix(tuple(order), tuple(map(tuple, m)), tuple(load))


def is_negative_definite(m):
    if isinstance(m, IntersectionMatrix):
        m = m.rows()
    return linalg.is_negative_definite([list(r) for r in m])


def solve_multiplicities(graph):
    """Solve ``M m = -a`` exactly and check the result is a positive integer
    vector (and agrees with any ``mult=`` decorations)."""
    im = intersection_matrix(graph)
    rows = im.rows()
    if not linalg.is_negative_definite(rows):
        raise NotNegativeDefinite("intersection matrix is not negative definite")
    sol = linalg.solve(rows, [-a for a in im.load])
    out = {}
    for vid, x in zip(im.order, sol):
        if x.denominator != 1:
            raise NonIntegralSolution(f"multiplicity of {vid!r} is {x}, not an integer")
        if x <= 0:
            raise NonPositiveSolution(f"multiplicity of {vid!r} is {x}, not positive")
        out[vid] = int(x)
    # residual re-check: M m + a = 0
    vec = [out[v] for v in im.order]
    for vid, row, a in zip(im.order, rows, im.load):
        if sum(c * x for c, x in zip(row, vec)) + a:
            raise InvariantError(f"residual of the multiplicity system is nonzero at {vid!r}")
    for vid, given in graph.given_multiplicities().items():
        if given != out[vid]:
            raise DecorationMismatch(
                f"vertex {vid!r}: mult={given} given but the intersection matrix gives {out[vid]}"
            )
    return out


def multiplicities(graph):
    """Multiplicities from Euler numbers when present, otherwise the
    ``mult=`` decorations as given."""
    if graph.has_euler:
        return solve_multiplicities(graph)
    return {v.id: v.mult for v in graph.vertices}
