"""Exact computation of the monodromy quadratic form of a plane curve germ
from its resolution graph or its Nielsen-Thurston graph."""

from .charpoly import FactoredCyclo, delta, delta2, jordan_block_count, milnor_number
from .errors import InputError, InvariantError, ParseError, QFormError
from .formats import parse_chains, parse_ntgraph, parse_resolution
from .graph import NTGraph, OneChain, ResolutionGraph, classify, decompose
from .multiplicity import intersection_matrix, multiplicities, solve_multiplicities
from .quadform import compare, default_basis, gram, make_basis
from .screw import exponent_e, screws
from .semistable import build_ntgraph, is_quotient_tree, quotient_graph

__version__ = "0.1.0"

__all__ = [
    "FactoredCyclo",
    "InputError",
    "InvariantError",
    "NTGraph",
    "OneChain",
    "ParseError",
    "QFormError",
    "ResolutionGraph",
    "build_ntgraph",
    "classify",
    "compare",
    "decompose",
    "default_basis",
    "delta",
    "delta2",
    "exponent_e",
    "gram",
    "intersection_matrix",
    "is_quotient_tree",
    "jordan_block_count",
    "make_basis",
    "milnor_number",
    "multiplicities",
    "parse_chains",
    "parse_ntgraph",
    "parse_resolution",
    "quotient_graph",
    "screws",
    "solve_multiplicities",
]
