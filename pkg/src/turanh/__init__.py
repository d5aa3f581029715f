"""Exact tools for Turán H-densities of small 3-graphs and oriented graphs."""

from .canon import canonical_form, canonical_key, is_isomorphic
from .density import INDUCED, SUBGRAPH, contains, density, induced_count
from .enumerate import ForbiddenFamily, enumerate_graphs
from .graph import GraphError, UniformGraph, complement, dto3_transform, format_graph, parse_graph

__version__ = "0.1.0"

__all__ = [
    "ForbiddenFamily", "GraphError", "INDUCED", "SUBGRAPH", "UniformGraph", "canonical_form",
    "canonical_key", "complement", "contains", "density", "dto3_transform", "enumerate_graphs",
    "format_graph", "induced_count", "is_isomorphic", "parse_graph",
]
