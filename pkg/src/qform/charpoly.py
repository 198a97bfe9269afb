"""Characteristic polynomials as products of ``(t^n - 1)^k``."""

from collections import Counter
from math import gcd

from .errors import NonPolynomialDelta2, NonRationalVertex
from .graph import classify


class FactoredCyclo:
    """``prod (t^n - 1)^{k_n}`` with integer exponents, stored canonically."""

    __slots__ = ("_exp",)

    def __init__(self, exponents=None):
        acc = Counter()
        for n, k in dict(exponents or {}).items():
            if n <= 0:
                raise ValueError("factor index must be positive")
            acc[n] += k
        self._exp = {n: k for n, k in sorted(acc.items()) if k}

    @property
    def exponents(self):
        return dict(self._exp)

    def __eq__(self, other):
        return isinstance(other, FactoredCyclo) and self._exp == other._exp

    def __hash__(self):
        return hash(tuple(self._exp.items()))

    def __mul__(self, other):
        acc = Counter(self._exp)
        acc.update(other._exp)
        return FactoredCyclo(acc)

    def __truediv__(self, other):
        acc = Counter(self._exp)
        acc.subtract(other._exp)
        return FactoredCyclo(acc)

    @property
    def degree(self):
        return sum(n * k for n, k in self._exp.items())

    def __repr__(self):
        return f"FactoredCyclo({self._exp})"

    def __str__(self):
        if not self._exp:
            return "1"
        return " ".join(f"(t^{n}-1)^{k}" for n, k in sorted(self._exp.items(), reverse=True))

    def expand(self):
        """Integer coefficients, constant term first.

        Raises ``ValueError`` if the quotient is not a polynomial.
        """
        num = [1]
        den = [1]
        for n, k in self._exp.items():
            f = [-1] + [0] * (n - 1) + [1]
            for _ in range(abs(k)):
                if k > 0:
                    num = _mul(num, f)
                else:
                    den = _mul(den, f)
        q, r = _divmod(num, den)
        if any(r):
            raise ValueError("not a polynomial")
        return q

    def is_polynomial(self):
        try:
            self.expand()
        except ValueError:
            return False
        return True


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _divmod(num, den):
    """Division by a monic-up-to-sign integer polynomial (coefficients low to high)."""
    num = list(num)
    lead = den[-1]
    if len(num) < len(den):
        return [0], num
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c, rem = divmod(num[i + len(den) - 1], lead)
        if rem:
            return q, [1]
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    return q, num[: len(den) - 1]


def format_expanded(coeffs):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c:
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = str(c)
            terms.append(f"{coef}{mono}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def delta(graph, mults):
    """Characteristic polynomial of the monodromy on the first homology of
    the Milnor fibre, for genus-zero resolution graphs."""
    bad = [v.id for v in graph.vertices if v.genus > 0]
    if bad:
        raise NonRationalVertex(f"vertex {bad[0]!r} has positive genus")
    if not graph.arrows:
        raise NonRationalVertex("graph has no arrowheads")
    d = 0
    for a in graph.arrows:
        d = gcd(d, a.mult)
    cls = classify(graph)
    exps = Counter({d: 1})
    for v in graph.vertex_ids:
        exps[mults[v]] -= cls[v].chi
    return FactoredCyclo(exps)


def milnor_number(graph, mults):
    return delta(graph, mults).degree


def delta2(nt):
    """Characteristic polynomial of the induced automorphism on H_1 of the
    semistable graph, from the orbit structure of pieces and edges."""
    exps = Counter({1: 1})
    for items in nt.edge_orbits().values():
        exps[len(items)] += 1
    for items in nt.piece_orbits().values():
        exps[len(items)] -= 1
    out = FactoredCyclo(exps)
    if not out.is_polynomial():
        raise NonPolynomialDelta2(f"{out} is not a polynomial")
    if out.degree != nt.betti1():
        raise NonPolynomialDelta2(f"degree {out.degree} differs from b1 = {nt.betti1()}")
    return out


def jordan_block_count(nt):
    return nt.betti1()
