"""Gossip averaging, degree regularization and the degree surrogate."""

from .averaging import average_pairs, contraction_bound, disagreement, gossip_round
from .regularizer import damped_degree_match, degree_dispersion, local_degree_match, regularize
from .surrogate import series_from_eigendifference, surrogate_bound_eval, surrogate_degree_objective

__all__ = [
    "average_pairs",
    "contraction_bound",
    "damped_degree_match",
    "degree_dispersion",
    "disagreement",
    "gossip_round",
    "local_degree_match",
    "regularize",
    "series_from_eigendifference",
    "surrogate_bound_eval",
    "surrogate_degree_objective",
]
