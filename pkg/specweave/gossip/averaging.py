"""Randomized pairwise gossip averaging."""

import logging

import numpy as np

from ..graph import algebraic_connectivity
from ..models import GossipState, WeightedGraph

logger = logging.getLogger(__name__)


def average_pairs(s: np.ndarray, pairs: np.ndarray) -> np.ndarray:
    """Apply pairwise averages in sequence; each replaces both entries by their mean."""
    s = np.array(s, dtype=np.float64)
    for p, q in pairs:
        mean = (s[p] + s[q]) / 2
        s[p] = mean
        s[q] = mean
    return s


def gossip_round(state: GossipState, edges: np.ndarray, R: int) -> GossipState:
    """
    Draw R edges uniformly with replacement and average across each in turn.

    The sum of the estimates is preserved up to rounding.

    Args:
        state: Current estimates and generator
        edges: (m, 2) endpoint array
        R: Number of draws

    Returns:
        New GossipState sharing the generator
    """
    picks = state.rng.integers(0, len(edges), size=R)
    s = average_pairs(state.s, edges[picks])
    return GossipState(s=s, rng=state.rng, rounds=state.rounds + R)


def contraction_bound(g: WeightedGraph, R: int) -> float:
    """Expected decay factor (1 − λ2/(2|E|))^R of ||s − mean||² over R draws."""
    if R == 0:
        return 1.0
    rate = 1.0 - algebraic_connectivity(g) / (2 * g.num_edges)
    if rate <= 1e-12:
        return 0.0
    return float(rate**R)


def disagreement(s: np.ndarray) -> float:
    """||s − mean(s)·1||²."""
    z = s - s.mean()
    return float(z @ z)
