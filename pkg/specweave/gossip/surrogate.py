"""Quadratic degree surrogate for eigen-difference costs."""

import logging
from collections.abc import Mapping
from math import factorial

import numpy as np
from scipy.linalg import eigvalsh

from ..graph import laplacian
from ..models import SurrogateBound, SurrogateSeries, WeightedGraph
from .regularizer import degree_dispersion

logger = logging.getLogger(__name__)


def series_from_eigendifference(a: Mapping[int, float], lambda_proxy: str = "2dmax") -> SurrogateSeries:
    """Convert h(x) = Σ a_k x^k into the factorial-normalised series Σ (a_k·k!) x^k / k!."""
    return SurrogateSeries({int(k): float(ak) * factorial(int(k)) for k, ak in a.items()}, lambda_proxy)


def _lambda_max(g: WeightedGraph, series: SurrogateSeries, lam: np.ndarray) -> float:
    if series.lambda_proxy == "exact":
        return float(lam.max())
    return float(2.0 * g.degrees().max())


def _even_coefficient(series: SurrogateSeries, lam_max: float) -> float:
    """Σ_{k>=1} a_2k/(2k)!·λ_max^(2k−2)."""
    return sum(
        a * lam_max ** (k - 2) / factorial(k)
        for k, a in series.coefficients.items()
        if k >= 2 and k % 2 == 0
    )


def surrogate_bound_eval(g: WeightedGraph, series: SurrogateSeries) -> SurrogateBound:
    """
    Both sides of Σ_ij h(λ_i − λ_j) <= Σ_ij g̃(d_i, d_j).

    lhs sums over all ordered pairs, diagonal included; rhs is
    a0·n² + 2·(Σ a_2k/(2k)!·λ_max^(2k−2))·[Σ_ij (d_i − d_j)² + tr(D)²].
    Dense eigendecomposition, so test scale only.

    Returns:
        SurrogateBound(lhs, rhs, hypothesis_violated)
    """
    lam = eigvalsh(laplacian(g))
    diffs = lam[:, None] - lam[None, :]
    lhs = sum(float(np.sum(a * diffs**k)) / factorial(k) for k, a in series.coefficients.items())

    lam_max = _lambda_max(g, series, lam)
    trace_d = float(g.degrees().sum())
    a0 = series.coefficients.get(0, 0.0)
    rhs = a0 * g.n**2 + 2.0 * _even_coefficient(series, lam_max) * (degree_dispersion(g) + trace_d**2)

    violated = not series.hypothesis_holds
    if violated:
        logger.warning("Negative even-power coefficient: degree bound not guaranteed")
    return SurrogateBound(lhs=float(lhs), rhs=float(rhs), hypothesis_violated=violated)


def surrogate_degree_objective(g: WeightedGraph, series: SurrogateSeries) -> float:
    """Practical surrogate with constants dropped: (Σ a_2k/(2k)!·λ_max^(2k−2))·Σ_ij (d_i − d_j)²."""
    lam = eigvalsh(laplacian(g)) if series.lambda_proxy == "exact" else np.zeros(1)
    return _even_coefficient(series, _lambda_max(g, series, lam)) * degree_dispersion(g)
