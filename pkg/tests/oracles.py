"""Independent reference implementations and input generators for the tests.

Nothing here reuses the package's linear algebra: determinants come from
memoised cofactor expansion, linear solves from Cramer's rule on top of it,
Smith forms from sympy, and Gram entries from a direct double sum.
"""

import random
from fractions import Fraction
from functools import lru_cache
from math import gcd
from pathlib import Path

from qform.graph import Arrow, OneChain, ResolutionGraph, Vertex

DATA = Path(__file__).parent / "data"


def data(name):
    return DATA / name


def read(name):
    return data(name).read_text(encoding="utf-8")


# -- determinants and solves -------------------------------------------------


def cofactor_det(m):
    """Laplace expansion along the first remaining row, memoised on the set
    of columns still available. Exact for any entries supporting * and +."""
    m = [list(r) for r in m]
    n = len(m)
    if n == 0:
        return 1

    @lru_cache(maxsize=None)
    def go(row, cols):
        if row == n:
            return 1
        total = 0
        sign = 1
        for c in cols:
            if m[row][c]:
                rest = tuple(x for x in cols if x != c)
                total += sign * m[row][c] * go(row + 1, rest)
            sign = -sign
        return total

    return go(0, tuple(range(n)))


def cramer_solve(m, b):
    d = cofactor_det(m)
    if d == 0:
        raise ZeroDivisionError("singular")
    out = []
    for i in range(len(m)):
        mi = [list(r) for r in m]
        for r in range(len(m)):
            mi[r][i] = b[r]
        out.append(Fraction(cofactor_det(mi), d))
    return out


def leading_minors(m):
    return [cofactor_det([r[:k] for r in m[:k]]) for k in range(1, len(m) + 1)]


def oracle_intersection(graph):
    """Intersection matrix and arrow load built straight from the decorations."""
    ids = graph.vertex_ids
    pos = {v: i for i, v in enumerate(ids)}
    n = len(ids)
    mat = [[0] * n for _ in range(n)]
    for v in graph.vertices:
        mat[pos[v.id]][pos[v.id]] += v.euler
    for u, w in graph.edges:
        if u == w:
            mat[pos[u]][pos[u]] += 2
        else:
            mat[pos[u]][pos[w]] += 1
            mat[pos[w]][pos[u]] += 1
    load = [0] * n
    for a in graph.arrows:
        load[pos[a.vertex]] += a.mult
    return ids, mat, load


def oracle_multiplicities(graph):
    ids, mat, load = oracle_intersection(graph)
    sol = cramer_solve(mat, [-x for x in load])
    return dict(zip(ids, sol))


# -- Smith normal form --------------------------------------------------------


def sympy_snf(m):
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    n = len(m)
    if n == 0:
        return []
    s = smith_normal_form(Matrix(m), domain=ZZ)
    diag = [abs(int(s[i, i])) for i in range(min(s.shape))]
    nz = sorted(x for x in diag if x)
    return nz + [0] * (len(diag) - len(nz))


# -- Gram entries -------------------------------------------------------------


def double_sum_gram(nt, chains):
    """Q(v, w) = sum over curves of s * c(v) * c(w), one entry at a time."""
    weights = {e.id: e.screw for e in nt.edges}
    weights.update({a.id: a.screw for a in nt.arrows})
    coeffs = [c.as_dict() for c in chains]
    out = []
    for cv in coeffs:
        row = []
        for cw in coeffs:
            row.append(sum(s * cv.get(k, 0) * cw.get(k, 0) for k, s in weights.items()))
        out.append(row)
    return out


# -- random unimodular changes of basis --------------------------------------


def random_unimodular(rng, absolute, spread=2):
    """Unimodular U that maps absolute basis vectors into the absolute span.

    In an ordering with absolute vectors first, U is block upper triangular
    with unimodular diagonal blocks built from elementary operations.
    """
    n = len(absolute)
    abs_idx = [i for i in range(n) if absolute[i]]
    rel_idx = [i for i in range(n) if not absolute[i]]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_col(dst, src, k):
        for r in range(n):
            u[r][dst] += k * u[r][src]

    for _ in range(3 * n):
        kind = rng.random()
        if kind < 0.15:
            j = rng.randrange(n)
            for r in range(n):
                u[r][j] = -u[r][j]
            continue
        dst = rng.randrange(n)
        # absolute columns may only absorb absolute columns
        pool = abs_idx if absolute[dst] else abs_idx + rel_idx
        pool = [p for p in pool if p != dst]
        if not pool:
            continue
        add_col(dst, rng.choice(pool), rng.choice([k for k in range(-spread, spread + 1) if k]))
    return u


def transform_chains(chains, u):
    """Column j of U gives the new j-th chain as a combination of the old ones."""
    n = len(chains)
    coeffs = [c.as_dict() for c in chains]
    out = []
    for j in range(n):
        acc = {}
        for i in range(n):
            k = u[i][j]
            if k:
                for cid, c in coeffs[i].items():
                    acc[cid] = acc.get(cid, 0) + k * c
        out.append(OneChain(acc))
    return out


def congruent(q, u):
    n = len(q)
    qu = [[sum(q[i][k] * u[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[sum(u[k][i] * qu[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


# -- resolution graph generators ---------------------------------------------


def blowup_graph(rng, steps, arrows, arrow_mults=(1,)):
    """Dual graph of a random sequence of point blow-ups of a smooth
    surface germ, with curvettas (arrows) at random exceptional curves.

    Each step blows up either a free point of some exceptional curve or an
    intersection point of two of them, so the graph is a tree, the
    intersection form is unimodular and negative definite, and the
    multiplicities are positive integers. Arrows of multiplicity > 1 give
    non-reduced germs, whose Milnor fibre may be disconnected.
    """
    euler = {"E1": -1}
    edges = []
    for k in range(2, steps + 2):
        new = f"E{k}"
        if edges and rng.random() < 0.5:
            i = rng.randrange(len(edges))
            u, w = edges.pop(i)
            edges.extend([(u, new), (new, w)])
            euler[u] -= 1
            euler[w] -= 1
        else:
            u = rng.choice(sorted(euler))
            edges.append((u, new))
            euler[u] -= 1
        euler[new] = -1
    verts = [Vertex(v, 0, e) for v, e in sorted(euler.items(), key=lambda x: int(x[0][1:]))]
    arr = []
    for j in range(arrows):
        arr.append(Arrow(f"a{j + 1}", rng.choice(sorted(euler)), rng.choice(arrow_mults)))
    return ResolutionGraph(verts, edges, arr)


def dbm_resolution(a, b):
    """Resolution graph of the Du Bois-Michel curve C_{a,b} (a, b odd).

    Chain: arrow - N1(2A) - A-1, A-3, ..., 30 - N5(28) - 12 - 8 - N8(20)
    - 22, 24, ..., B-1 - N12(2B) - arrow, with leaves A, 14, 10, B on the
    four nodes, where A = a + 28 and B = b + 20. Euler numbers are forced
    by the multiplicities, which is how the graph is written down here.
    """
    big_a, big_b = a + 28, b + 20
    chain = [2 * big_a] + list(range(big_a - 1, 29, -2)) + [28, 12, 8, 20]
    chain += list(range(22, big_b, 2)) + [2 * big_b]
    ids = [f"c{i}" for i in range(len(chain))]
    mult = dict(zip(ids, chain))
    leaves = {ids[0]: big_a, ids[chain.index(28)]: 14, ids[chain.index(20)]: 10, ids[-1]: big_b}
    edges = list(zip(ids, ids[1:]))
    for k, (v, m) in enumerate(leaves.items()):
        mult[f"leaf{k}"] = m
        edges.append((v, f"leaf{k}"))
    arrows = [Arrow("a_l", ids[0]), Arrow("a_r", ids[-1])]
    nbr = {v: 0 for v in mult}
    for u, w in edges:
        nbr[u] += mult[w]
        nbr[w] += mult[u]
    for ar in arrows:
        nbr[ar.vertex] += ar.mult
    verts = []
    for v, m in mult.items():
        assert nbr[v] % m == 0
        verts.append(Vertex(v, 0, -nbr[v] // m, m))
    return ResolutionGraph(verts, edges, arrows)


# -- NT graph helpers ---------------------------------------------------------


def nt_to_nx(nt):
    """Multigraph with genus/screw labels; arrows become labelled leaves."""
    import networkx as nx

    g = nx.MultiGraph()
    for p in nt.pieces:
        g.add_node(p.id, kind="piece", genus=p.genus)
    for e in nt.edges:
        g.add_edge(e.u, e.v, screw=e.screw)
    for a in nt.arrows:
        g.add_node(("arrow", a.id), kind="arrow", genus=-1)
        g.add_edge(a.piece, ("arrow", a.id), screw=a.screw)
    return g


def nt_isomorphic(x, y):
    import networkx as nx
    from networkx.algorithms.isomorphism import categorical_multiedge_match, categorical_node_match

    return nx.is_isomorphic(
        nt_to_nx(x),
        nt_to_nx(y),
        node_match=categorical_node_match(["kind", "genus"], [None, None]),
        edge_match=categorical_multiedge_match("screw", None),
    )


def lcm(*xs):
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def rng_for(*key):
    return random.Random(repr(key))
