"""Pairwise polynomial spectral costs in bilinear trace form."""

import logging
from collections.abc import Callable, Mapping
from math import comb
from typing import Optional

import numpy as np
from scipy.linalg import eigvalsh

from ..exceptions import InvalidParam
from ..graph import laplacian
from ..models import CoefficientMatrix, TracePowerVector, WeightedGraph

logger = logging.getLogger(__name__)

PairwiseFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


def expand_eigendifference(a: Mapping[int, float]) -> CoefficientMatrix:
    """
    Expand h(x − y) = Σ a_k (x − y)^k into monomial coefficients c_pq.

    Uses c_{m,k−m} += a_k·C(k,m)·(−1)^(k−m). Integer inputs accumulate as
    Python ints, so the expansion is exact before the final cast.

    Args:
        a: Map from power k to coefficient a_k

    Returns:
        CoefficientMatrix of degree max(k), at least 1
    """
    if any(k < 0 for k in a):
        raise InvalidParam(f"Negative power in {dict(a)}")
    d = max(max(a, default=0), 1)
    coeffs = [[0] * (d + 1) for _ in range(d + 1)]
    for k, ak in a.items():
        for m in range(k + 1):
            coeffs[m][k - m] += ak * comb(k, m) * (-1) ** (k - m)
    return CoefficientMatrix(np.array(coeffs, dtype=np.float64))


def matrix_powers(L: np.ndarray, d: int) -> list[np.ndarray]:
    """[L^0, L^1, ..., L^d] by repeated multiplication."""
    powers = [np.eye(L.shape[0], dtype=L.dtype)]
    for _ in range(d):
        powers.append(powers[-1] @ L)
    return powers


def trace_powers(L: np.ndarray, d: int, powers: Optional[list[np.ndarray]] = None) -> TracePowerVector:
    """
    Tr(L^p) for p = 0..d.

    Args:
        L: Symmetric PSD matrix
        d: Highest power
        powers: Precomputed matrix_powers(L, >= d), reused when given

    Returns:
        TracePowerVector with entry 0 = n and entry 1 = Tr(L)
    """
    powers = powers if powers is not None else matrix_powers(L, d)
    return TracePowerVector(np.array([np.trace(powers[p]) for p in range(d + 1)]))


def bilinear_value(v: TracePowerVector, C: CoefficientMatrix) -> float:
    """v̄ᵀ·raw·v̄."""
    return float(v.values @ C.raw @ v.values)


def cost_trace_form(
    g: WeightedGraph,
    C: CoefficientMatrix,
    weights: Optional[np.ndarray] = None,
) -> float:
    """J = Σ_pq c_pq Tr(L^p) Tr(L^q), diagonal eigenvalue pairs included."""
    v = trace_powers(laplacian(g, weights), C.degree)
    return bilinear_value(v, C)


def pairwise_polynomial(C: CoefficientMatrix) -> PairwiseFunction:
    """g(x, y) = Σ c_pq x^p y^q as a vectorised callable."""

    def gfun(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        total = np.zeros(np.broadcast(x, y).shape)
        for p, q in zip(*np.nonzero(C.raw)):
            total = total + C.raw[p, q] * x**p * y**q
        return total

    return gfun


def eigendifference_polynomial(a: Mapping[int, float]) -> PairwiseFunction:
    """g(x, y) = Σ a_k (x − y)^k as a vectorised callable."""

    def gfun(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        diff = x - y
        return sum((ak * diff**k for k, ak in a.items()), np.zeros(diff.shape))

    return gfun


def cost_eigen_oracle(g: WeightedGraph, gfun: PairwiseFunction) -> float:
    """
    Σ_{i≠j} g(λ_i, λ_j) over the full dense spectrum.

    Test oracle only: cubic in n.
    """
    lam = np.sort(eigvalsh(laplacian(g)))
    X, Y = np.meshgrid(lam, lam, indexing="ij")
    values = gfun(X, Y)
    return float(values.sum() - np.trace(values))


def diagonal_correction(g: WeightedGraph, gfun: PairwiseFunction) -> float:
    """Σ_i g(λ_i, λ_i): the gap between the trace form and the i≠j sum."""
    lam = eigvalsh(laplacian(g))
    return float(np.sum(gfun(lam, lam)))
