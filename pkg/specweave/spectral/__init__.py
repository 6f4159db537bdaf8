"""Spectral costs, trace powers and local gradients."""

from .cost import (
    bilinear_value,
    cost_eigen_oracle,
    cost_trace_form,
    diagonal_correction,
    eigendifference_polynomial,
    expand_eigendifference,
    matrix_powers,
    pairwise_polynomial,
    trace_powers,
)
from .gradient import alignment_test, edge_perturbation_trace, gradient, local_state, z_matrix, z_vector

__all__ = [
    "alignment_test",
    "bilinear_value",
    "cost_eigen_oracle",
    "cost_trace_form",
    "diagonal_correction",
    "edge_perturbation_trace",
    "eigendifference_polynomial",
    "expand_eigendifference",
    "gradient",
    "local_state",
    "matrix_powers",
    "pairwise_polynomial",
    "trace_powers",
    "z_matrix",
    "z_vector",
]
