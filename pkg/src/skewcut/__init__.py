"""Skew-symmetric multicut: a fixed-parameter branching solver and its front-ends."""

from .components import Component, IrregularSeparator, NoComponent, find_lk_component
from .instances import CnfFormula, UndirectedGraph
from .reductions import (
    almost_2sat,
    edge_bipartization,
    implication_graph,
    is_qhorn,
    oct,
    qhorn_backdoor,
    qhorn_gadget,
    quadratic_cover,
    smallest,
    two_sat_satisfiable,
)
from .separators import min_separator, separator_collection
from .skew_graph import MalformedInput, SkewGraph, build
from .solver import ExplicitOracle, SolveResult, solve, validate_multicut

__all__ = [
    "CnfFormula", "Component", "ExplicitOracle", "IrregularSeparator", "MalformedInput",
    "NoComponent", "SkewGraph", "SolveResult", "UndirectedGraph", "almost_2sat", "build",
    "edge_bipartization", "find_lk_component", "implication_graph", "is_qhorn",
    "min_separator", "oct", "qhorn_backdoor", "qhorn_gadget", "quadratic_cover",
    "separator_collection", "smallest", "solve", "two_sat_satisfiable", "validate_multicut",
]
