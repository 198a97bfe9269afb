from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qform import linalg
from oracles import cofactor_det, cramer_solve, leading_minors, sympy_snf


def square(max_n=5, lo=-6, hi=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def symmetric(max_n=5, lo=-6, hi=6):
    def build(n):
        return st.lists(st.integers(lo, hi), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
            lambda xs: _sym(n, xs)
        )

    return st.integers(1, max_n).flatmap(build)


def _sym(n, xs):
    m = [[0] * n for _ in range(n)]
    it = iter(xs)
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = next(it)
    return m


@given(square())
def test_det_matches_cofactor_oracle(m):
    assert linalg.det(m) == cofactor_det(m)


@given(square(max_n=6, lo=-3, hi=3))
def test_snf_matches_sympy(m):
    assert linalg.smith_normal_form(m) == sympy_snf(m)


@given(square(max_n=4))
def test_snf_divisibility_and_product(m):
    d = linalg.smith_normal_form(m)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert d[len(nz):] == [0] * (len(d) - len(nz))
    prod = 1
    for x in d:
        prod *= x
    assert prod == abs(linalg.det(m))


@given(square(max_n=4), st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_solve_matches_cramer(m, b):
    b = b[: len(m)]
    if cofactor_det(m) == 0:
        with pytest.raises(linalg.SingularMatrix):
            linalg.solve(m, b)
    else:
        assert linalg.solve(m, b) == cramer_solve(m, b)


@given(symmetric())
def test_positive_definite_matches_sylvester(m):
    assert linalg.is_positive_definite(m) == all(x > 0 for x in leading_minors(m))


@given(symmetric())
def test_negative_definite_matches_sylvester(m):
    minors = leading_minors(m)
    expected = all((x < 0) if k % 2 == 0 else (x > 0) for k, x in enumerate(minors))
    assert linalg.is_negative_definite(m) == expected


def test_cusp_intersection_matrix_minors():
    m = [[-3, 0, 1], [0, -2, 1], [1, 1, -1]]
    # alternating signs; the full determinant is -1 as for any blow-up graph
    assert leading_minors(m) == [-3, 6, -1]
    assert linalg.is_negative_definite(m)


def test_definiteness_degenerate():
    assert not linalg.is_negative_definite([[0]])
    assert not linalg.is_negative_definite([[1]])
    assert not linalg.is_positive_definite([[0, 0], [0, 1]])
    assert linalg.is_positive_definite([])


def test_ldl_pivots_are_fractions():
    piv = linalg.ldl_pivots([[2, 1], [1, 2]])
    assert piv == [Fraction(2), Fraction(3, 2)]


def test_positive_definite_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        linalg.is_positive_definite([[1, 2], [0, 1]])


@given(square(max_n=5, lo=-2, hi=2))
def test_rank_agrees_with_snf(m):
    assert linalg.rank(m) == sum(1 for x in linalg.smith_normal_form(m) if x)


@pytest.mark.parametrize(
    "n, part",
    [(1, 1), (4, 1), (12, 3), (-12, -3), (2 ** 8 * 3 ** 4 * 37, 37), (2 ** 11 * 5, 10), (0, 0)],
)
def test_squarefree_part(n, part):
    assert linalg.squarefree_part(n) == part


@settings(max_examples=50)
@given(st.integers(-10 ** 6, 10 ** 6))
def test_is_square(n):
    r = int(abs(n) ** 0.5)
    truth = n >= 0 and any(k * k == n for k in (r - 1, r, r + 1))
    assert linalg.is_square(n) == truth


def test_det_of_empty_matrix():
    assert linalg.det([]) == 1
