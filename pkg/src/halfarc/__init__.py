"""Symmetry analysis of tetravalent graphs: automorphism groups, half-arc-transitivity,
alternating cycles, graph families and regular covers."""

from .autgroup import are_isomorphic, automorphism_group
from .coverings import (
    VoltageAssignment, derived_graph, is_regular_covering, cover_quotient_check, quotient_graph,
)
from .families import FiniteAbelianGroup, parse_family, x_rmn
from .formats import decode_graph6, encode_graph6
from .graph import Graph, from_edge_list
from .perm import PermGroup
from .symmetry import analyze, find_hat_subgroup, orientation, transitivity_profile

__all__ = [
    "Graph", "from_edge_list", "PermGroup", "FiniteAbelianGroup", "VoltageAssignment",
    "automorphism_group", "are_isomorphic", "analyze", "transitivity_profile", "orientation",
    "find_hat_subgroup", "parse_family", "x_rmn", "derived_graph", "quotient_graph",
    "is_regular_covering", "cover_quotient_check", "encode_graph6", "decode_graph6",
]
