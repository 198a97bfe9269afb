"""Chain bases of the semistable graph and the Gram matrix of the form.

The form pairs two relative 1-chains ``v, w`` of the Nielsen-Thurston graph
as ``sum_C s_C * c_C(v) * c_C(w)`` over annulus curves ``C`` (edges and
boundary arrows), i.e. ``B^T diag(s) B`` for the incidence matrix ``B`` of
the basis.
"""

from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property

from . import linalg
from .errors import DependentBasis, InvalidChain, UnknownEdge
from .graph import OneChain


def boundary(nt, chain):
    """Boundary at pieces; arrow far ends are arrowheads and are ignored."""
    out = defaultdict(int)
    for cid, c in chain.coefficients:
        x = nt[cid]
        if hasattr(x, "u"):
            out[x.v] += c
            out[x.u] -= c
        else:
            out[x.piece] -= c
    return {k: v for k, v in out.items() if v}


def is_absolute(nt, chain):
    arrows = {a.id for a in nt.arrows}
    return not any(cid in arrows for cid in chain.support())


def _check_chain(nt, name, chain):
    known = set(nt.chain_ids())
    for cid in chain.support():
        if cid not in known:
            raise UnknownEdge(f"chain {name!r}: unknown edge or arrow {cid!r}")
    bd = boundary(nt, chain)
    if bd:
        p = sorted(bd)[0]
        raise InvalidChain(f"chain {name!r} is not closed: boundary {bd[p]:+d} at vertex {p!r}")


@dataclass(frozen=True)
class ChainBasis:
    names: tuple
    chains: tuple
    absolute: tuple  # bool per chain
    rows: tuple  # row labels of the incidence matrix (edge ids then arrow ids)
    matrix: tuple  # incidence matrix B, rows x chains

    def __len__(self):
        return len(self.chains)

    @property
    def absolute_rank(self):
        return sum(self.absolute)


def make_basis(nt, named_chains, check_independent=True):
    """Validate ``[(name, OneChain), ...]`` against ``nt`` and build B."""
    named_chains = list(named_chains)
    names = [n for n, _ in named_chains]
    chains = [c for _, c in named_chains]
    for n, c in named_chains:
        _check_chain(nt, n, c)
    rows = nt.chain_ids()
    b = [[c[r] for c in chains] for r in rows]
    if check_independent and chains and linalg.rank(b) < len(chains):
        raise DependentBasis("basis chains are linearly dependent")
    return ChainBasis(
        tuple(names),
        tuple(chains),
        tuple(is_absolute(nt, c) for c in chains),
        tuple(rows),
        tuple(map(tuple, b)),
    )


def spanning_tree(nt):
    """BFS tree from the least piece id, edges tried in id order.

    Returns ``(root, parent)`` where ``parent[x] = (edge id, sign)`` and
    ``sign`` is +1 when the edge is oriented from the parent to ``x``.
    """
    inc = defaultdict(list)
    for e in sorted(nt.edges, key=lambda e: e.id):
        inc[e.u].append(e)
        if e.v != e.u:
            inc[e.v].append(e)
    root = min(nt.piece_ids)
    parent = {root: None}
    todo = deque([root])
    while todo:
        x = todo.popleft()
        for e in inc[x]:
            y, sign = (e.v, 1) if e.u == x else (e.u, -1)
            if y not in parent:
                parent[y] = (e.id, sign)
                todo.append(y)
    return root, parent


def _root_path(nt, parent, x):
    coeffs = {}
    while parent[x] is not None:
        eid, sign = parent[x]
        coeffs[eid] = sign
        e = nt[eid]
        x = e.u if sign == 1 else e.v
    return OneChain(coeffs)


def tree_path(nt, parent, a, b):
    """Tree chain from piece ``a`` to piece ``b``."""
    return _root_path(nt, parent, b) - _root_path(nt, parent, a)


def default_basis(nt):
    """Fundamental cycles of a BFS spanning tree, then relative chains
    ``-a0 + path + a_i`` joining the least arrow to each other arrow."""
    _, parent = spanning_tree(nt)
    tree = {p[0] for p in parent.values() if p is not None}
    named = []
    k = 0
    for e in sorted(nt.edges, key=lambda e: e.id):
        if e.id in tree:
            continue
        k += 1
        named.append((f"z{k}", OneChain({e.id: 1}) + tree_path(nt, parent, e.v, e.u)))
    arrows = sorted(nt.arrows, key=lambda a: a.id)
    for k, a in enumerate(arrows[1:], 1):
        a0 = arrows[0]
        chain = OneChain({a0.id: -1, a.id: 1}) + tree_path(nt, parent, a0.piece, a.piece)
        named.append((f"r{k}", chain))
    return make_basis(nt, named)


@dataclass(frozen=True)
class GramForm:
    names: tuple
    matrix: tuple
    absolute: tuple

    def rows(self):
        return [list(r) for r in self.matrix]

    def __len__(self):
        return len(self.matrix)

    @cached_property
    def det(self):
        return linalg.det(self.rows())

    @cached_property
    def rank(self):
        return linalg.rank(self.rows())

    @cached_property
    def snf(self):
        return linalg.smith_normal_form(self.rows())

    @cached_property
    def positive_definite(self):
        return linalg.is_positive_definite(self.rows())

    @cached_property
    def even_absolute(self):
        return all(self.matrix[i][i] % 2 == 0 for i, a in enumerate(self.absolute) if a)

    @cached_property
    def even(self):
        return all(self.matrix[i][i] % 2 == 0 for i in range(len(self.matrix)))

    def absolute_block(self):
        idx = [i for i, a in enumerate(self.absolute) if a]
        return GramForm(
            tuple(self.names[i] for i in idx),
            tuple(tuple(self.matrix[i][j] for j in idx) for i in idx),
            tuple(True for _ in idx),
        )

    def invariants(self):
        return {
            "rank": self.rank,
            "det": self.det,
            "det_mod_squares": linalg.squarefree_part(self.det),
            "snf": self.snf,
            "positive_definite": self.positive_definite,
            "even": self.even,
            "even_absolute": self.even_absolute,
        }


def gram(nt, basis):
    """Gram matrix ``B^T diag(s) B``; ``basis`` is a ChainBasis or a list of
    ``(name, OneChain)``."""
    if not isinstance(basis, ChainBasis):
        basis = make_basis(nt, basis, check_independent=False)
    n = len(basis.chains)
    q = [[0] * n for _ in range(n)]
    for r, row in zip(basis.rows, basis.matrix):
        s = nt.screw(r)
        nz = [(i, x) for i, x in enumerate(row) if x]
        for i, x in nz:
            for j, y in nz:
                q[i][j] += s * x * y
    return GramForm(basis.names, tuple(map(tuple, q)), basis.absolute)


def nilpotent_image(nt, chain):
    """Image of a chain under N: coefficient ``s_C * c_C`` on each curve."""
    known = set(nt.chain_ids())
    out = {}
    for cid, c in chain.coefficients:
        if cid not in known:
            raise UnknownEdge(f"unknown edge or arrow {cid!r}")
        out[cid] = nt.screw(cid) * c
    return out


def is_positive_definite(form):
    return form.positive_definite


def is_even_absolute(form):
    return form.even_absolute


def det(form):
    return form.det


def smith_normal_form(form):
    return form.snf


def compare(a, b):
    """Invariant-level comparison of two forms.

    Never decides integral equivalence: a verdict of ``not_distinguished``
    only says none of the computed invariants differ.
    """
    report = {}
    blocks = [("", a, b), ("absolute_", a.absolute_block(), b.absolute_block())]
    for prefix, x, y in blocks:
        ix, iy = x.invariants(), y.invariants()
        for key in ("rank", "det", "det_mod_squares", "snf", "positive_definite", "even"):
            if prefix and key == "even":
                continue
            report[prefix + key] = {"left": ix[key], "right": iy[key], "equal": ix[key] == iy[key]}
    report["even_absolute"] = {
        "left": a.even_absolute,
        "right": b.even_absolute,
        "equal": a.even_absolute == b.even_absolute,
    }
    if a.det and b.det:
        ratio_square = linalg.squarefree_part(a.det) == linalg.squarefree_part(b.det)
        report["det_ratio_is_square"] = ratio_square
    ax, bx = a.absolute_block(), b.absolute_block()
    if ax.det and bx.det:
        report["absolute_det_ratio_is_square"] = linalg.squarefree_part(
            ax.det
        ) == linalg.squarefree_part(bx.det)
    differ = [k for k, v in report.items() if isinstance(v, dict) and not v["equal"]]
    report["distinguished_by"] = differ
    report["verdict"] = "distinguished" if differ else "not_distinguished"
    return report
