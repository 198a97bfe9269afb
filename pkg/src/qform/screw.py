"""Screw numbers from the twist formula."""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import NonConstantGcd, NonIntegralScrew, NoNode
from .graph import classify, decompose


@dataclass(frozen=True)
class BambooScrew:
    bamboo: str
    kind: str
    mults: tuple  # m_0..m_k along the bamboo (arrow multiplicity last for boundary)
    d: int
    scn: Fraction  # screw number of h
    s: int  # screw number of h^e, the integer edge weight


@dataclass(frozen=True)
class ScrewAssignment:
    e: int
    entries: tuple

    def by_bamboo(self):
        return {x.bamboo: x for x in self.entries}


def exponent_e(graph, mults):
    cls = classify(graph)
    node_mults = [mults[v] for v in graph.vertex_ids if cls[v].is_node]
    if not node_mults:
        raise NoNode("graph has no node")
    return lcm(*node_mults)


def bamboo_gcd(ms):
    """The common gcd of consecutive multiplicities along a bamboo."""
    ds = {gcd(a, b) for a, b in zip(ms, ms[1:])}
    if len(ds) != 1:
        raise NonConstantGcd(f"gcd of consecutive multiplicities varies along {list(ms)}: {sorted(ds)}")
    return ds.pop()


def twist(ms):
    """Screw number of h along a bamboo with multiplicities ``ms``:
    ``d**2 * sum 1/(m_i m_{i+1})``."""
    d = bamboo_gcd(ms)
    return d * d * sum(Fraction(1, a * b) for a, b in zip(ms, ms[1:]))


def screw_of_bamboo(ms, e, bamboo="", kind="interior"):
    ms = tuple(ms)
    if len(ms) < 2:
        raise ValueError("a bamboo needs at least two multiplicities")
    d = bamboo_gcd(ms)
    if e % d:
        raise NonIntegralScrew(f"bamboo {bamboo}: d={d} does not divide e={e}")
    scn = twist(ms)
    s = scn * e / d
    if s.denominator != 1 or s <= 0:
        raise NonIntegralScrew(f"bamboo {bamboo}: screw number of h^e is {s}, not a positive integer")
    return BambooScrew(bamboo, kind, ms, d, scn, int(s))


def bamboo_mults(graph, bamboo, mults):
    ms = [mults[v] for v in bamboo.vertices]
    if bamboo.kind == "boundary":
        ms.append(next(a.mult for a in graph.arrows if a.id == bamboo.end))
    return ms


def screws(graph, mults, bamboos=None):
    if bamboos is None:
        bamboos = decompose(graph)[0]
    e = exponent_e(graph, mults)
    entries = tuple(
        screw_of_bamboo(bamboo_mults(graph, b, mults), e, b.id, b.kind) for b in bamboos
    )
    return ScrewAssignment(e, entries)
