"""Exact certification of graphs determined by their generalized spectrum."""

__version__ = "0.1.0"

from .exclusion import CertificationReport, PrimeStatus, Rule, Status, Verdict, certify
from .graph import Graph, GraphFormatError, emit_graph6, parse_adjacency_text, parse_graph6
from .walk import WalkProfile, build_walk_matrix, profile

__all__ = [
    "CertificationReport", "Graph", "GraphFormatError", "PrimeStatus", "Rule", "Status",
    "Verdict", "WalkProfile", "__version__", "build_walk_matrix", "certify", "emit_graph6",
    "parse_adjacency_text", "parse_graph6", "profile",
]
