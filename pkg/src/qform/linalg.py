"""Exact integer and rational linear algebra on lists of lists.

Matrices are plain ``list[list[int]]`` (or ``Fraction``). Nothing in here
touches floating point.
"""

from fractions import Fraction
from math import gcd, isqrt

Matrix = list  # list[list[int]]


class SingularMatrix(ArithmeticError):
    pass


def copy(m):
    return [list(row) for row in m]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m):
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def is_symmetric(m):
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i)
    )


def bareiss_minors(m):
    """Leading principal minors ``D_1..D_k`` by fraction-free elimination
    without pivoting.

    Stops after the first zero minor, so the returned list is shorter than
    ``len(m)`` exactly when some leading minor vanishes.
    """
    a = copy(m)
    n = len(a)
    minors = []
    prev = 1
    for k in range(n):
        piv = a[k][k]
        minors.append(piv)
        if piv == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
        prev = piv
    return minors


def ldl_pivots(m):
    """Pivots of the symmetric LDL^T factorisation, as Fractions.

    ``pivot_k = D_k / D_{k-1}``. A zero pivot ends the list (the
    factorisation without pivoting breaks down there).
    """
    out = []
    prev = 1
    for d in bareiss_minors(m):
        out.append(Fraction(d, prev))
        if d == 0:
            break
        prev = d
    return out


def is_positive_definite(m):
    if not is_symmetric(m):
        raise ValueError("matrix is not symmetric")
    minors = bareiss_minors(m)
    return len(minors) == len(m) and all(d > 0 for d in minors)


def is_negative_definite(m):
    return is_positive_definite([[-x for x in row] for row in m])


def det(m):
    """Determinant by Bareiss elimination with row pivoting."""
    a = copy(m)
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def rank(m):
    """Rank by fraction-free elimination; rows are cleared of denominators
    and divided by their content so entries stay small."""
    a = []
    for row in m:
        if all(isinstance(x, int) for x in row):
            a.append(list(row))
            continue
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        a.append([int(x * den) for x in row])
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            if f:
                row = [x * piv - f * y for x, y in zip(a[i], a[r])]
                g = 0
                for x in row:
                    g = gcd(g, x)
                a[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == rows:
            break
    return r


def solve(m, b):
    """Solve ``m x = b`` exactly for square nonsingular integer ``m``.

    Forward elimination is fraction-free (Bareiss) on the augmented matrix;
    back substitution is done in rationals.
    """
    n = len(m)
    a = [list(row) + [rhs] for row, rhs in zip(m, b)]
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                raise SingularMatrix("matrix is singular")
            a[k], a[p] = a[p], a[k]
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = piv
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(a[i][n])
        for j in range(i + 1, n):
            acc -= a[i][j] * x[j]
        x[i] = acc / a[i][i]
    return x


def smith_normal_form(m):
    """Diagonal of the Smith normal form over the integers.

    Entries are nonnegative and each divides the next; the list has
    ``min(rows, cols)`` entries, zeros last.
    """
    a = copy(m)
    if not a or not a[0]:
        return []
    rows, cols = len(a), len(a[0])
    diag = []
    for k in range(min(rows, cols)):
        nz = [(abs(a[i][j]), i, j) for i in range(k, rows) for j in range(k, cols) if a[i][j]]
        if not nz:
            diag.extend([0] * (min(rows, cols) - k))
            break
        _, pi, pj = min(nz)
        a[k], a[pi] = a[pi], a[k]
        for row in a:
            row[k], row[pj] = row[pj], row[k]
        while True:
            # Euclid down column k, then along row k, until both are clear
            changed = True
            while changed:
                changed = False
                for i in range(k + 1, rows):
                    if a[i][k]:
                        if abs(a[i][k]) < abs(a[k][k]):
                            a[k], a[i] = a[i], a[k]
                        q = a[i][k] // a[k][k]
                        rk, ri = a[k], a[i]
                        for j in range(k, cols):
                            ri[j] -= q * rk[j]
                        changed = True
                for j in range(k + 1, cols):
                    if a[k][j]:
                        if abs(a[k][j]) < abs(a[k][k]):
                            for row in a:
                                row[k], row[j] = row[j], row[k]
                        q = a[k][j] // a[k][k]
                        for row in a[k:]:
                            row[j] -= q * row[k]
                        changed = True
            piv = a[k][k]
            bad = next(
                (i for i in range(k + 1, rows) if any(a[i][j] % piv for j in range(k + 1, cols))),
                None,
            )
            if bad is None:
                break
            for j in range(k, cols):
                a[k][j] += a[bad][j]
        diag.append(abs(a[k][k]))
    return diag


def squarefree_part(n):
    """Signed squarefree kernel of a nonzero integer (its class mod squares)."""
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            out *= p
            n //= p
        p += 1 if p == 2 else 2
    return sign * out * n


def is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n
