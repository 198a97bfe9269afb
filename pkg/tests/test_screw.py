from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qform.errors import NonConstantGcd, NonIntegralScrew, NoNode
from qform.graph import ResolutionGraph, Vertex
from qform.multiplicity import multiplicities
from qform.screw import bamboo_gcd, exponent_e, screw_of_bamboo, screws, twist
from golden import EXPONENT_E
from oracles import blowup_graph, dbm_resolution, rng_for


def by_shape(graph, assignment):
    """Map (sorted end ids, kind) -> entry, for bamboo-id independent checks."""
    from qform.graph import bamboos

    out = {}
    for b in bamboos(graph):
        out.setdefault((b.kind, tuple(sorted((b.start, b.end)))), []).append(assignment.by_bamboo()[b.id])
    return out


@pytest.mark.parametrize("stem, e", sorted(EXPONENT_E.items()))
def test_exponent(rg, stem, e):
    g = rg(stem)
    assert exponent_e(g, multiplicities(g)) == e


def test_exponent_needs_node():
    g = ResolutionGraph([Vertex("v", 0, None, 1)], [], [])
    with pytest.raises(NoNode):
        exponent_e(g, {"v": 1})


def test_acampo1_central():
    x = screw_of_bamboo([78, 12, 78], 78)
    assert (x.d, x.scn, x.s) == (6, Fraction(1, 13), 1)


def test_acampo2_boundary_and_central():
    x = screw_of_bamboo([42, 1], 420, kind="boundary")
    assert (x.d, x.scn, x.s) == (1, Fraction(1, 42), 10)
    c = screw_of_bamboo([20, 8, 20], 420)
    # 1/5 from the twist formula (see the README on known divergences)
    assert (c.d, c.scn, c.s) == (4, Fraction(1, 5), 21)


def test_loop_bamboo_superisolated():
    x = screw_of_bamboo([1, 2, 1], 1, kind="loop")
    assert (x.d, x.scn, x.s) == (1, Fraction(1), 1)


def test_graph_level_screws(rg):
    g = rg("decomp")
    sa = screws(g, multiplicities(g))
    shapes = by_shape(g, sa)
    assert [(x.scn, x.s) for x in shapes[("boundary", ("l14", "p_l"))]] == [(Fraction(1, 14), 3)]
    assert [(x.scn, x.s) for x in shapes[("boundary", ("c6", "p_cl"))]] == [(Fraction(1, 6), 7)]
    assert [(x.scn, x.s) for x in shapes[("interior", ("c6", "l14"))]] == [(Fraction(1, 21), 1)]


def test_dbm_screws():
    for (a, b), expect in {
        (5, 11): (2170, 775, 11253, 2541, 2310),
        (3, 13): (2310, 495, 11253, 2821, 2170),
    }.items():
        g = dbm_resolution(a, b)
        sa = screws(g, multiplicities(g))
        assert sa.e == 140 * (a + 28) * (b + 20)
        assert tuple(x.s for x in sa.entries) == expect


def test_non_constant_gcd():
    with pytest.raises(NonConstantGcd):
        bamboo_gcd([6, 4, 3])
    with pytest.raises(NonConstantGcd):
        screw_of_bamboo([6, 4, 3], 12)


def test_non_integral_screw():
    with pytest.raises(NonIntegralScrew):
        screw_of_bamboo([5, 3], 5)


def test_too_short():
    with pytest.raises(ValueError):
        screw_of_bamboo([5], 5)


@given(
    st.integers(1, 12),
    st.integers(1, 40),
    st.integers(1, 40),
    st.lists(st.integers(0, 50), min_size=1, max_size=6),
)
def test_blowup_subdivision_keeps_scn(d, a, b, positions):
    chain = [d * a, d * b]
    if bamboo_gcd([a, b]) != 1:
        return
    base = twist(chain)
    for pos in positions:
        i = pos % (len(chain) - 1)
        chain = chain[: i + 1] + [chain[i] + chain[i + 1]] + chain[i + 1:]
        assert bamboo_gcd(chain) == d
        assert twist(chain) == base


@given(st.integers(0, 10 ** 6))
def test_screw_identities_on_random_curves(seed):
    rng = rng_for("screw", seed)
    g = blowup_graph(rng, rng.randint(2, 9), rng.randint(1, 4))
    try:
        sa = screws(g, multiplicities(g))
    except NoNode:
        return
    for x in sa.entries:
        assert sa.e % x.d == 0
        assert x.s > 0 and x.scn > 0
        assert x.s == x.scn * sa.e / x.d
        inv = sum(Fraction(1, a * b) for a, b in zip(x.mults, x.mults[1:]))
        assert x.s * x.d == sa.e * x.d ** 2 * inv
