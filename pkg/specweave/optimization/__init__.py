"""Feasibility-preserving solvers and the performance ratio."""

from .descent import centralized_optimize, dopr, local_descent, projected_descent
from .projection import is_feasible, project_blocks, project_feasible, project_simplex

__all__ = [
    "centralized_optimize",
    "dopr",
    "is_feasible",
    "local_descent",
    "project_blocks",
    "project_feasible",
    "project_simplex",
    "projected_descent",
]
