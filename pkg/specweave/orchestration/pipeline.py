"""Cold-start, warm-start and centralized pipelines over disjoint workers."""

import logging
import math
import time
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Optional

import numpy as np

from ..exceptions import DegenerateBaseline, EmptyCore, SpecweaveError
from ..gossip import regularize
from ..graph import dhop_expansion, sample_disjoint_neighborhoods, write_sets_disjoint
from ..models import (
    CoefficientMatrix,
    CurvePoint,
    IterationLog,
    RunConfig,
    RunResult,
    SubgraphScope,
    WeightedGraph,
)
from ..optimization import centralized_optimize, dopr, is_feasible, local_descent, project_feasible
from ..parallel import run_workers
from ..spectral import alignment_test, cost_trace_form, local_state

logger = logging.getLogger(__name__)


@dataclass
class WorkerOutcome:
    """A worker's proposal for its core edges."""

    center: Optional[int]
    edges: np.ndarray
    weights: np.ndarray
    accepted: int = 0
    skipped_core: bool = False
    skipped_align: bool = False
    reports: list[dict] = field(default_factory=list)


def optimize_subgraph(
    g: WeightedGraph,
    neighborhood: SubgraphScope,
    C: CoefficientMatrix,
    cfg: RunConfig,
    snapshot: np.ndarray,
) -> WorkerOutcome:
    """
    One worker: expand a 1-hop neighbourhood by d hops and descend while aligned.

    The neighbourhood's edges are the writable core. Each inner step runs the
    alignment test on a fresh Z, then one accepted descent step at most, capped
    at cfg.inner_steps. Reads only the snapshot.
    """
    core = np.asarray(neighborhood.edges, dtype=np.int64)
    outcome = WorkerOutcome(center=neighborhood.center, edges=core, weights=snapshot[core].copy())
    if len(core) == 0:
        outcome.skipped_core = True
        return outcome

    H = dhop_expansion(g, neighborhood, C.degree)
    w = snapshot.copy()
    params = replace(cfg.descent, max_steps=1)

    try:
        for step in range(cfg.inner_steps):
            Z, _ = local_state(g, H, C.degree, w)
            report = alignment_test(Z, C, cfg.tau_dom, cfg.tau_axis)
            outcome.reports.append(report.to_dict())
            if not report.passed:
                outcome.skipped_align = step == 0
                break
            new_core, record = local_descent(g, H, C, params, w)
            if not record.steps:
                break
            w[core] = new_core
            outcome.accepted += 1
    except EmptyCore:
        outcome.skipped_core = True

    outcome.weights = w[core]
    return outcome


class RunTracker:
    """Accumulates the curve, run log and feasibility checks of one run."""

    def __init__(self, g: WeightedGraph, C: CoefficientMatrix, cfg: RunConfig, weights: np.ndarray):
        self.g = g
        self.C = C
        self.cfg = cfg
        self.budget = float(weights.sum())
        self.started = time.perf_counter()
        J0 = cost_trace_form(g, C, weights)
        self.result = RunResult(weights=weights.copy(), J0=J0)
        self.result.curve.append(CurvePoint(iter=0, J=J0, phase="initial"))
        self.iteration = 0
        self.total_iterations = 0

    def check_feasible(self, w: np.ndarray):
        """Budget within 1e-9·W and every weight at or above the floor."""
        residual = abs(float(w.sum()) - self.budget)
        if residual > 1e-9 * self.budget or w.min() < self.cfg.descent.floor:
            raise SpecweaveError(
                f"Infeasible weights after iteration {self.iteration}: "
                f"budget residual {residual:.3g}, min weight {w.min():.6g}"
            )
        return residual

    def record(self, w: np.ndarray, phase: str, workers: int, accepted: int = 0,
               skipped_align: int = 0, skipped_core: int = 0, alignment: Optional[list[dict]] = None):
        """Log one outer iteration and sample J on the configured cadence."""
        self.iteration += 1
        residual = self.check_feasible(w)
        J = None
        if self.iteration % self.cfg.eval_every == 0 or self.iteration == self.total_iterations:
            J = cost_trace_form(self.g, self.C, w)
            self.result.curve.append(CurvePoint(iter=self.iteration, J=J, phase=phase))

        now = time.perf_counter()
        self.result.log.append(
            IterationLog(
                iter=self.iteration,
                J=J,
                accepted=accepted,
                skipped_align=skipped_align,
                skipped_core=skipped_core,
                budget_residual=residual,
                phase=phase,
                workers=workers,
                seconds=now - self.started,
                alignment=alignment or [],
            )
        )
        self.started = now


def _descent_phase(
    g: WeightedGraph,
    C: CoefficientMatrix,
    cfg: RunConfig,
    w: np.ndarray,
    rng: np.random.Generator,
    iterations: int,
    tracker: RunTracker,
) -> np.ndarray:
    unvisited: set[int] = set(range(g.n))
    for _ in range(iterations):
        if not unvisited:
            unvisited = set(range(g.n))
            tracker.result.epochs += 1
            logger.info(f"Epoch {tracker.result.epochs} complete at iteration {tracker.iteration}")

        scopes = sample_disjoint_neighborhoods(g, unvisited, cfg.workers, 1, rng, cfg.max_resample)
        snapshot = w.copy()
        tasks = [partial(optimize_subgraph, g, scope, C, cfg, snapshot) for scope in scopes]
        outcomes = run_workers(tasks, cfg.threads, cfg.scheduling)

        if not write_sets_disjoint([frozenset(o.edges.tolist()) for o in outcomes]):
            raise SpecweaveError("Worker write sets overlap")

        accepted = skipped_align = skipped_core = 0
        alignment = []
        for outcome in outcomes:
            alignment.extend(outcome.reports)
            skipped_core += outcome.skipped_core
            skipped_align += outcome.skipped_align
            if outcome.accepted == 0:
                continue
            core_budget = float(snapshot[outcome.edges].sum())
            if not is_feasible(outcome.weights, core_budget, cfg.descent.floor, rtol=1e-9):
                logger.warning(f"Rejected infeasible proposal from worker at {outcome.center}")
                continue
            w[outcome.edges] = outcome.weights
            accepted += outcome.accepted

        passes = sum(1 for r in alignment if r["pass"])
        tracker.result.align_pass += passes
        tracker.result.align_fail += len(alignment) - passes
        tracker.record(w, "descent", len(outcomes), accepted, skipped_align, skipped_core, alignment)
    return w


def _start_weights(g: WeightedGraph, cfg: RunConfig) -> np.ndarray:
    w = g.weights.copy()
    if w.min() < cfg.descent.floor:
        logger.warning(f"Initial weights below floor {cfg.descent.floor}; projecting")
        w = project_feasible(w, float(w.sum()), cfg.descent.floor)
    return w


def _finish(tracker: RunTracker, w: np.ndarray, Jstar: Optional[float]) -> RunResult:
    result = tracker.result
    result.weights = w
    if Jstar is not None:
        attach_baseline(result, Jstar)
    return result


def attach_baseline(result: RunResult, Jstar: float) -> RunResult:
    """Set J* and the DOPR, recording a note instead when the baseline is degenerate."""
    result.Jstar = Jstar
    try:
        result.dopr = dopr(result.J0, result.Jd, Jstar)
        result.dopr_note = None
    except DegenerateBaseline as e:
        logger.warning(f"DOPR undefined: {e}")
        result.dopr = None
        result.dopr_note = f"DegenerateBaseline: {e}"
    return result


def run_cold(
    g: WeightedGraph,
    C: CoefficientMatrix,
    cfg: RunConfig,
    Jstar: Optional[float] = None,
) -> RunResult:
    """
    Cold start: iterated alignment-gated descent on disjoint 1-hop neighbourhoods.

    Args:
        g: Connected graph (its weights are the start point)
        C: Cost coefficients; the degree sets the expansion depth
        cfg: Run settings
        Jstar: Centralized baseline for the DOPR (optional)

    Returns:
        RunResult
    """
    logger.info(f"Cold run: {cfg.describe()}")
    rng = np.random.default_rng(cfg.seed)
    w = _start_weights(g, cfg)
    tracker = RunTracker(g, C, cfg, w)
    tracker.total_iterations = cfg.iterations
    w = _descent_phase(g, C, cfg, w, rng, cfg.iterations, tracker)
    return _finish(tracker, w, Jstar)


def run_warm(
    g: WeightedGraph,
    C: CoefficientMatrix,
    cfg: RunConfig,
    Jstar: Optional[float] = None,
) -> RunResult:
    """
    Warm start: degree regularization for ⌈split·iterations⌉, then cold-start descent.

    With warm_descent "matched" the descent phase runs the full iteration count
    of a cold run and regularization comes on top; with "remainder" the two
    phases share cfg.iterations. The descent phase draws from the same random
    stream as run_cold, so a warm run and a cold run with one seed visit the
    same neighbourhoods and differ only in their start weights.

    The curve spans both phases; phase_boundary is the last regularization iteration.
    """
    logger.info(f"Warm run: {cfg.describe()}")
    rng = np.random.default_rng(cfg.seed)
    w = _start_weights(g, cfg)
    tracker = RunTracker(g, C, cfg, w)
    n_regularize = math.ceil(cfg.warm_split * cfg.iterations)
    if cfg.warm_descent == "matched":
        n_descent = cfg.iterations
    else:
        n_descent = cfg.iterations - n_regularize
    tracker.total_iterations = n_regularize + n_descent

    if n_regularize > 0:

        def on_iteration(it: int, weights: np.ndarray, workers: int):
            tracker.record(weights, "regularize", workers, accepted=workers)

        reg = regularize(
            g.with_weights(w),
            cfg.workers,
            cfg.gossip_rounds,
            n_regularize,
            np.random.default_rng(np.random.SeedSequence(cfg.seed).spawn(1)[0]),
            floor=cfg.descent.floor,
            reinit=cfg.gossip_reinit,
            max_resample=cfg.max_resample,
            threads=cfg.threads,
            scheduling=cfg.scheduling,
            on_iteration=on_iteration,
        )
        w = reg.graph.weights.copy()
        tracker.result.regularization_trace = reg.dispersion_trace
        tracker.result.gossip_trace = reg.gossip_trace
        tracker.result.phase_boundary = n_regularize

    w = _descent_phase(g, C, cfg, w, rng, n_descent, tracker)
    return _finish(tracker, w, Jstar)


def run_centralized(g: WeightedGraph, C: CoefficientMatrix, cfg: RunConfig) -> RunResult:
    """Centralized baseline as a RunResult; its own DOPR is 1 unless degenerate."""
    w = _start_weights(g, cfg)
    params = replace(cfg.descent, max_steps=cfg.centralized_steps)
    weights, record = centralized_optimize(g.with_weights(w), C, params)
    result = RunResult(weights=weights, J0=record.J0)
    result.curve.append(CurvePoint(iter=0, J=record.J0, phase="initial"))
    for step in record.steps:
        result.curve.append(CurvePoint(iter=step.step, J=step.J, phase="centralized"))
    result.descent_record = record
    attach_baseline(result, record.Jd)
    record.dopr = result.dopr
    return result


def run(g: WeightedGraph, C: CoefficientMatrix, cfg: RunConfig, Jstar: Optional[float] = None) -> RunResult:
    """Dispatch on cfg.mode."""
    if cfg.mode == "cold":
        return run_cold(g, C, cfg, Jstar)
    if cfg.mode == "warm":
        return run_warm(g, C, cfg, Jstar)
    if cfg.mode == "regularize":
        return run_warm(g, C, replace(cfg, warm_split=1.0, warm_descent="remainder"), Jstar)
    return run_centralized(g, C, cfg)
