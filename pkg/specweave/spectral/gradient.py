"""Edge-perturbation traces, Z matrices, gradients and the alignment test."""

import logging
from typing import Optional

import numpy as np

from ..exceptions import DimensionMismatch, EmptyCore, InvalidParam
from ..graph import scope_laplacian
from ..models import AlignmentReport, CoefficientMatrix, SubgraphScope, TracePowerVector, WeightedGraph, ZMatrix
from .cost import matrix_powers, trace_powers

logger = logging.getLogger(__name__)


def edge_perturbation_trace(M: np.ndarray, a: int, b: int):
    """Tr(M·S²_ab) = M_aa + M_bb − 2·M_ab, without building S²."""
    if a == b:
        raise InvalidParam(f"Edge endpoints must differ, got ({a}, {b})")
    return M[a, a] + M[b, b] - 2 * M[a, b]


def _z_rows(powers: list[np.ndarray], a: np.ndarray, b: np.ndarray, d: int) -> np.ndarray:
    # one row per (a[i], b[i]) pair
    rows = np.zeros((len(a), d + 1), dtype=np.result_type(powers[0], np.float64))
    for p in range(1, d + 1):
        M = powers[p - 1]
        rows[:, p] = p * (M[a, a] + M[b, b] - 2 * M[a, b])
    return rows


def z_vector(L_H: np.ndarray, a: int, b: int, d: int) -> np.ndarray:
    """
    Row z̄_ab with entry p = p·Tr(S²_ab·L_H^(p−1)), entry 0 = 0.

    Entry 1 is always 2 since Tr(S²) = 2.
    """
    if a == b:
        raise InvalidParam(f"Edge endpoints must differ, got ({a}, {b})")
    return _z_rows(matrix_powers(L_H, d - 1), np.array([a]), np.array([b]), d)[0]


def local_state(
    g: WeightedGraph,
    scope: SubgraphScope,
    d: int,
    weights: Optional[np.ndarray] = None,
) -> tuple[ZMatrix, TracePowerVector]:
    """
    Z over the scope's core edges and v_H, from one set of L_H powers.

    Args:
        g: Host graph
        scope: Expanded subgraph; its core edges are the Z rows
        d: Cost degree
        weights: Full weight array (uses g.weights if None)

    Returns:
        (ZMatrix, TracePowerVector of L_H)

    Raises:
        EmptyCore: the core has no edges
    """
    if scope.is_core_empty:
        raise EmptyCore(f"Scope centered at {scope.center} has no core edges")
    L_H, local = scope_laplacian(g, scope, weights)
    powers = matrix_powers(L_H, d)
    core = g.edges[np.asarray(scope.core_edges, dtype=np.int64)]
    a = np.array([local[int(u)] for u in core[:, 0]])
    b = np.array([local[int(v)] for v in core[:, 1]])
    rows = _z_rows(powers, a, b, d)
    return ZMatrix(rows=rows, edges=scope.core_edges), trace_powers(L_H, d, powers)


def z_matrix(
    g: WeightedGraph,
    scope: SubgraphScope,
    d: int,
    weights: Optional[np.ndarray] = None,
) -> ZMatrix:
    """Stacked z rows of every core edge, computed from the expanded subgraph's Laplacian."""
    return local_state(g, scope, d, weights)[0]


def gradient(Z: ZMatrix, C: CoefficientMatrix, v: TracePowerVector) -> np.ndarray:
    """
    Gradient of the bilinear cost with respect to the Z rows' edge weights.

    Args:
        Z: Perturbation traces
        C: Cost coefficients
        v: Trace powers (v_G for the global gradient, v_H for the local one)

    Returns:
        Z·C̄·v, one component per core edge
    """
    d = C.degree
    if Z.rows.shape[1] != d + 1 or len(v.values) != d + 1:
        raise DimensionMismatch(
            f"Z has {Z.rows.shape[1]} columns, v has {len(v.values)} entries, C has degree {d}"
        )
    return Z.rows @ (C.symmetrized @ v.values)


def alignment_test(
    Z: ZMatrix,
    C: CoefficientMatrix,
    tau_dom: float = 10.0,
    tau_axis: float = 0.95,
) -> AlignmentReport:
    """
    Check that Z·C̄ is close to rank one with an axis-aligned right singular vector.

    Passes iff σ1/σ2 >= tau_dom and max_j |⟨v1, e_j⟩| >= tau_axis. A σ2 at
    numerical-rank zero (or a single singular value) counts as infinite
    dominance. An all-zero Z·C̄ fails.
    """
    M = Z.rows @ C.symmetrized
    _, sigma, vt = np.linalg.svd(M, full_matrices=False)
    edge_count = Z.rows.shape[0]

    if sigma[0] == 0.0:
        return AlignmentReport(
            sigma=sigma.tolist(), ratio=0.0, axis=0, overlap=0.0, passed=False, edge_count=edge_count
        )

    negligible = sigma[0] * max(M.shape) * np.finfo(np.float64).eps
    if len(sigma) < 2 or sigma[1] <= negligible:
        ratio = float("inf")
    else:
        ratio = float(sigma[0] / sigma[1])

    v1 = vt[0]
    axis = int(np.argmax(np.abs(v1)))
    if v1[axis] < 0:
        v1 = -v1
    overlap = float(min(abs(v1[axis]), 1.0))

    passed = ratio >= tau_dom and overlap >= tau_axis
    report = AlignmentReport(
        sigma=sigma.tolist(), ratio=ratio, axis=axis, overlap=overlap, passed=passed, edge_count=edge_count
    )
    if not passed:
        logger.debug(f"Alignment failed: ratio={ratio:.3g}, overlap={overlap:.3f} over {edge_count} edges")
    return report
