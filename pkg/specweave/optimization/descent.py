"""Projected-gradient solvers on subgraph cores and on the whole graph."""

import logging
from collections.abc import Callable
from typing import Optional

import numpy as np

from ..exceptions import DegenerateBaseline, EmptyCore
from ..graph import whole_graph_scope
from ..models import CoefficientMatrix, DescentParams, DescentRecord, DescentStep, SubgraphScope, WeightedGraph
from ..spectral import bilinear_value, gradient, local_state
from .projection import project_feasible

logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], tuple[float, np.ndarray]]


def projected_descent(
    evaluate: Evaluator,
    w0: np.ndarray,
    budget: float,
    params: DescentParams,
) -> tuple[np.ndarray, DescentRecord]:
    """
    Armijo-backtracked projected gradient descent.

    Each trial point is projected onto {Σw = budget, w >= floor}; a step is
    accepted only on strict decrease satisfying the Armijo condition along the
    projected arc, so J is non-increasing over accepted steps.

    Args:
        evaluate: Maps weights to (J, gradient)
        w0: Starting weights (projected before use)
        budget: Sum to preserve
        params: Solver settings

    Returns:
        (final weights, DescentRecord)
    """
    w = project_feasible(w0, budget, params.floor)
    J, grad = evaluate(w)
    record = DescentRecord(J0=J)

    for step in range(1, params.max_steps + 1):
        gmax = float(np.max(np.abs(grad))) if len(grad) else 0.0
        if gmax == 0.0:
            break

        t = params.step_size / gmax
        pg_norm = float(np.linalg.norm(project_feasible(w - t * grad, budget, params.floor) - w) / t)
        if pg_norm <= params.pg_tol * max(1.0, gmax):
            break

        accepted = False
        for _ in range(params.max_backtracks):
            trial = project_feasible(w - t * grad, budget, params.floor)
            J_trial, grad_trial = evaluate(trial)
            if J_trial < J and J_trial <= J + params.armijo_c1 * float(grad @ (trial - w)):
                accepted = True
                break
            t *= params.backtrack

        if not accepted:
            break

        w, J, grad = trial, J_trial, grad_trial
        record.steps.append(
            DescentStep(
                step=step,
                J=J,
                step_size=t,
                pg_norm=pg_norm,
                budget_residual=float(abs(w.sum() - budget)),
                min_weight=float(w.min()),
            )
        )

    return w, record


def local_descent(
    g: WeightedGraph,
    scope: SubgraphScope,
    C: CoefficientMatrix,
    params: DescentParams,
    weights: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, DescentRecord]:
    """
    Minimise J_H over the core-edge weights of an expanded subgraph.

    Non-core weights of H stay frozen; the core budget is the core's current
    weight sum.

    Args:
        g: Host graph
        scope: Expanded subgraph whose core edges are the variables
        C: Cost coefficients
        params: Solver settings
        weights: Snapshot of all weights (uses g.weights if None)

    Returns:
        (new core weights in core-edge order, DescentRecord of J_H)

    Raises:
        EmptyCore: the core has no edges
    """
    if scope.is_core_empty:
        raise EmptyCore(f"Scope centered at {scope.center} has no core edges")

    snapshot = np.array(g.weights if weights is None else weights, dtype=np.float64)
    core = np.asarray(scope.core_edges, dtype=np.int64)

    def evaluate(core_weights: np.ndarray) -> tuple[float, np.ndarray]:
        full = snapshot.copy()
        full[core] = core_weights
        Z, v = local_state(g, scope, C.degree, full)
        return bilinear_value(v, C), gradient(Z, C, v)

    return projected_descent(evaluate, snapshot[core], float(snapshot[core].sum()), params)


def centralized_optimize(
    g: WeightedGraph,
    C: CoefficientMatrix,
    params: DescentParams,
) -> tuple[np.ndarray, DescentRecord]:
    """
    Full-graph projected gradient descent: the baseline J*.

    Same solver as local_descent with H = H' = G and budget W.

    Returns:
        (optimized weights, DescentRecord with Jstar set to the final J)
    """
    logger.info(f"Centralized optimization on n={g.n}, |E|={g.num_edges}, up to {params.max_steps} steps")
    if g.num_edges == 0:
        return g.weights.copy(), DescentRecord(J0=0.0, Jstar=0.0)

    weights, record = local_descent(g, whole_graph_scope(g), C, params)
    record.Jstar = record.Jd
    logger.info(f"Centralized J: {record.J0:.6g} -> {record.Jd:.6g} in {len(record.steps)} steps")
    return weights, record


def dopr(J0: float, Jd: float, Jstar: float) -> float:
    """
    (J0 − Jd) / (J0 − J*): share of the centralized improvement achieved.

    Not clamped; negative values mean the distributed run increased J.

    Raises:
        DegenerateBaseline: |J0 − J*| < 1e-15·|J0|
    """
    if abs(J0 - Jstar) < 1e-15 * abs(J0) or J0 == Jstar:
        raise DegenerateBaseline(f"J0 = {J0} and J* = {Jstar} coincide")
    return (J0 - Jd) / (J0 - Jstar)
