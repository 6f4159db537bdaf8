"""Graph representation, generation and neighbourhood structures."""

from .core import algebraic_connectivity, generate_geometric, graph_stats, laplacian, scope_laplacian
from .neighborhoods import (
    degree_match_edges,
    dhop_expansion,
    incidence,
    induced_edges,
    khop_core,
    khop_neighborhood,
    sample_disjoint_neighborhoods,
    whole_graph_scope,
    write_sets_disjoint,
)

__all__ = [
    "algebraic_connectivity",
    "degree_match_edges",
    "dhop_expansion",
    "generate_geometric",
    "graph_stats",
    "incidence",
    "induced_edges",
    "khop_core",
    "khop_neighborhood",
    "laplacian",
    "sample_disjoint_neighborhoods",
    "scope_laplacian",
    "whole_graph_scope",
    "write_sets_disjoint",
]
