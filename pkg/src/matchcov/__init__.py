"""Matching covered graphs: cuts, bricks and braces, solidity, conformal minors and thin edges."""

from .graph import CapExceeded, Contraction, Cut, Graph, GraphError, contract_shore, cut_of, splice
from .io import ParseError, parse_edgelist, parse_graph6

__all__ = [
    "CapExceeded",
    "Contraction",
    "Cut",
    "Graph",
    "GraphError",
    "ParseError",
    "contract_shore",
    "cut_of",
    "parse_edgelist",
    "parse_graph6",
    "splice",
]
