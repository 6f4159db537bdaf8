"""Distributed degree regularization driven by gossip estimates."""

import logging
from collections.abc import Callable
from functools import partial
from typing import Optional

import numpy as np

from ..exceptions import EmptyScope, SpecweaveError
from ..graph import degree_match_edges, incidence, khop_neighborhood, sample_disjoint_neighborhoods
from ..models import GossipState, RegularizationResult, WeightedGraph
from ..optimization import is_feasible, project_blocks, project_feasible
from ..parallel import run_workers
from .averaging import contraction_bound, disagreement, gossip_round

logger = logging.getLogger(__name__)


def degree_dispersion(g: WeightedGraph, weights: Optional[np.ndarray] = None) -> float:
    """Σ over ordered pairs (d_i − d_j)² of weighted degrees."""
    d = g.degrees(weights)
    return float(2 * g.n * (d @ d) - 2 * d.sum() ** 2)


def _edge_blocks(g: WeightedGraph, edges: np.ndarray, rows: set[int], hold_boundary: bool) -> np.ndarray:
    """
    Block label of each column; every block keeps its sum during a degree match.

    With hold_boundary the N1–N2 edges are grouped by their outer endpoint, so
    every vertex outside rows keeps its degree; the inner edges form one block.
    """
    if not hold_boundary:
        return np.zeros(len(edges), dtype=np.int64)
    keys = []
    for e in edges:
        a, b = (int(x) for x in g.edges[e])
        keys.append(-1 if a in rows and b in rows else (b if a in rows else a))
    return np.unique(keys, return_inverse=True)[1].astype(np.int64)


def local_degree_match(
    g: WeightedGraph,
    center: int,
    targets: np.ndarray,
    floor: float = 0.1,
    weights: Optional[np.ndarray] = None,
    tol: float = 1e-10,
    max_iter: int = 5000,
    hold_boundary: bool = True,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Fit the degrees of {center} ∪ N1(center) to targets by moving nearby edges.

    Solves min ||B·w(E') − targets[rows]||² subject to Σw(E') unchanged and
    w >= floor, where E' holds the center–N1, N1–N1 and N1–N2 edges. With
    hold_boundary the N1–N2 edges meeting each N2 vertex also keep their sum,
    so no degree outside the rows moves. Uses accelerated projected gradient
    until the gradient-mapping norm is below tol.

    Args:
        g: Host graph
        center: Worker's center vertex
        targets: Per-vertex degree targets (full length n)
        floor: Minimum edge weight
        weights: Snapshot of all weights (uses g.weights if None)
        tol: Gradient-mapping tolerance
        max_iter: Iteration cap
        hold_boundary: Keep every N2 degree fixed

    Returns:
        (edge indices of E', new weights for them)

    Raises:
        EmptyScope: E' is empty
    """
    w_all = g.weights if weights is None else weights
    scope = khop_neighborhood(g, center, 2)
    edges = np.array(sorted(degree_match_edges(g, scope)), dtype=np.int64)
    if len(edges) == 0:
        raise EmptyScope(f"No writable edges around vertex {center}")

    rows = list(scope.core_vertices)
    B = incidence(g, rows, edges.tolist())
    b = np.asarray(targets, dtype=np.float64)[rows]
    w = np.array(w_all[edges], dtype=np.float64)
    labels = _edge_blocks(g, edges, set(rows), hold_boundary)
    budgets = np.bincount(labels, weights=w)
    lip = 2.0 * np.linalg.norm(B, 2) ** 2

    def project(x: np.ndarray) -> np.ndarray:
        return project_blocks(x, labels, budgets, floor)

    def grad(x: np.ndarray) -> np.ndarray:
        return 2.0 * B.T @ (B @ x - b)

    y, t = w.copy(), 1.0
    for it in range(1, max_iter + 1):
        g_w = grad(w)
        if np.linalg.norm(w - project(w - g_w / lip)) * lip <= tol:
            break
        w_next = project(y - grad(y) / lip)
        t_next = (1.0 + np.sqrt(1.0 + 4.0 * t * t)) / 2.0
        y = w_next + ((t - 1.0) / t_next) * (w_next - w)
        w, t = w_next, t_next
    else:
        logger.warning(f"Degree match at {center} hit {max_iter} iterations")

    return edges, w


def damped_degree_match(
    g: WeightedGraph,
    center: int,
    targets: np.ndarray,
    floor: float,
    snapshot: np.ndarray,
    hold_boundary: bool = True,
) -> tuple[np.ndarray, np.ndarray]:
    """
    local_degree_match, with the step shortened when it would grow Σd².

    The step from the snapshot to the match is scaled by the t in [0, 1] that
    keeps Σ_i d_i² from increasing (the minimiser along the segment when the
    full step overshoots). Every point of the segment is feasible.
    """
    edges, proposal = local_degree_match(g, center, targets, floor, snapshot, hold_boundary=hold_boundary)
    step = proposal - snapshot[edges]
    delta = np.zeros(g.n)
    np.add.at(delta, g.edges[edges, 0], step)
    np.add.at(delta, g.edges[edges, 1], step)
    slope = float(g.degrees(snapshot) @ delta)
    curvature = float(delta @ delta)
    if curvature == 0.0 or 2.0 * slope + curvature <= 0.0:
        return edges, proposal

    t = max(0.0, -slope / curvature)
    logger.debug(f"Degree match at {center} damped to t={t:.3g}")
    return edges, snapshot[edges] + t * step


def regularize(
    g: WeightedGraph,
    workers: int,
    gossip_rounds: int,
    iters: int,
    rng: np.random.Generator,
    floor: float = 0.1,
    reinit: bool = True,
    max_resample: int = 50,
    threads: int = 1,
    scheduling: str = "deterministic",
    hold_boundary: bool = True,
    on_iteration: Optional[Callable[[int, np.ndarray, int], None]] = None,
) -> RegularizationResult:
    """
    Warm-start pass: gossip degree estimates, then match local degrees to them.

    Each iteration runs one gossip round of R draws, samples edge-disjoint
    2-hop neighbourhoods (write sets include the N1–N2 boundary edges) and
    commits every worker's damped degree match. Total weight is conserved.

    With hold_boundary each worker moves only the degrees of its own
    {center} ∪ N1, and those sets are disjoint across workers, so the degree
    dispersion never increases beyond rounding.

    Args:
        g: Connected graph
        workers: Parallel workers m
        gossip_rounds: Draws per gossip round R
        iters: Outer iterations
        rng: Random generator
        floor: Minimum edge weight
        reinit: Re-seed the estimates from current degrees every iteration
        max_resample: Collision redraw limit
        threads: Worker pool cap
        scheduling: deterministic|free
        hold_boundary: Keep N2 degrees fixed in every worker's match
        on_iteration: Called as (iteration, weights, workers committed) after each commit

    Returns:
        RegularizationResult with the new graph and both traces
    """
    w = g.weights.copy()
    total = float(w.sum())
    bound = contraction_bound(g, gossip_rounds) if iters else 1.0
    result = RegularizationResult(graph=g)
    result.dispersion_trace.append((0, degree_dispersion(g, w), total))
    logger.info(f"Regularizing: {iters} iterations, m={workers}, R={gossip_rounds}, reinit={reinit}")

    state = GossipState(s=g.degrees(w), rng=rng)
    for it in range(1, iters + 1):
        if reinit:
            state = GossipState(s=g.degrees(w), rng=rng, rounds=state.rounds)
        before = disagreement(state.s)
        if gossip_rounds > 0 and g.num_edges > 0:
            state = gossip_round(state, g.edges, gossip_rounds)
        result.gossip_trace.append((it, disagreement(state.s), bound * before))

        scopes = sample_disjoint_neighborhoods(
            g, set(range(g.n)), workers, 2, rng, max_resample, write_set=degree_match_edges
        )
        snapshot = w.copy()
        tasks = [
            partial(damped_degree_match, g, scope.center, state.s, floor, snapshot, hold_boundary)
            for scope in scopes
            if degree_match_edges(g, scope)
        ]
        proposals = run_workers(tasks, threads, scheduling)
        for edges, proposal in proposals:
            if not is_feasible(proposal, float(snapshot[edges].sum()), floor, rtol=1e-9):
                raise SpecweaveError(f"Degree match proposal for {len(edges)} edges is infeasible")
            w[edges] = proposal

        if abs(w.sum() - total) > 1e-9 * total:
            w = project_feasible(w, total, floor)
        result.dispersion_trace.append((it, degree_dispersion(g, w), float(w.sum())))
        if on_iteration is not None:
            on_iteration(it, w, len(proposals))

    result.graph = g.with_weights(w)
    logger.info(
        f"Degree dispersion {result.dispersion_trace[0][1]:.6g} -> {result.dispersion_trace[-1][1]:.6g}"
    )
    return result
