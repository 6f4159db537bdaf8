"""I/O modules for file formats, caching and output."""

from .cache import BaselineCache
from .formats import (
    cost_from_dict,
    eigendiff_coefficients,
    graph_from_dict,
    graph_to_dict,
    locate_config_file,
    problem_digest,
    read_cost,
    read_graph,
    write_graph,
)
from .manifest import load_manifest
from .writer import (
    build_summary,
    write_compare,
    write_csv,
    write_curve,
    write_descent_trace,
    write_gossip_trace,
    write_json,
    write_regularization_trace,
    write_run_log,
    write_summary,
)

__all__ = [
    "BaselineCache",
    "build_summary",
    "cost_from_dict",
    "eigendiff_coefficients",
    "graph_from_dict",
    "graph_to_dict",
    "load_manifest",
    "locate_config_file",
    "problem_digest",
    "read_cost",
    "read_graph",
    "write_compare",
    "write_csv",
    "write_curve",
    "write_descent_trace",
    "write_gossip_trace",
    "write_graph",
    "write_json",
    "write_regularization_trace",
    "write_run_log",
    "write_summary",
]
