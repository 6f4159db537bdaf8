"""Data models for specweave."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, NamedTuple, Optional

import networkx as nx
import numpy as np

from .exceptions import InvalidParam


@dataclass
class WeightedGraph:
    """
    Fixed topology with positive edge weights.

    Edges are canonical (u, v) pairs with u < v, sorted lexicographically. The
    weight array is indexed by that order and shared by every module.
    """

    n: int
    edges: np.ndarray
    weights: np.ndarray
    coords: Optional[np.ndarray] = None
    _topology: Optional[nx.Graph] = field(default=None, init=False, repr=False, compare=False)
    _edge_index: Optional[dict[tuple[int, int], int]] = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        """Validate simple, undirected, positively weighted and connected."""
        self.edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        self.weights = np.asarray(self.weights, dtype=np.float64).reshape(-1)
        if self.coords is not None:
            self.coords = np.asarray(self.coords, dtype=np.float64).reshape(-1, 2)

        if self.n < 1:
            raise InvalidParam(f"Graph needs at least one vertex, got n={self.n}")
        if len(self.edges) != len(self.weights):
            raise InvalidParam(f"{len(self.edges)} edges but {len(self.weights)} weights")
        if len(self.edges):
            u, v = self.edges[:, 0], self.edges[:, 1]
            if np.any(u >= v):
                raise InvalidParam("Edges must be canonical (u < v) without self-loops")
            if u.min() < 0 or v.max() >= self.n:
                raise InvalidParam("Edge endpoint out of range")
            keys = u * self.n + v
            if np.any(np.diff(keys) <= 0):
                raise InvalidParam("Edges must be sorted and free of duplicates")
        if not np.all(np.isfinite(self.weights)) or np.any(self.weights <= 0):
            raise InvalidParam("Edge weights must be finite and positive")
        if self.coords is not None and len(self.coords) != self.n:
            raise InvalidParam(f"{len(self.coords)} coordinates for {self.n} vertices")
        if not nx.is_connected(self.topology):
            raise InvalidParam("Graph is not connected")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: list[tuple[int, int]],
        weights: Optional[list[float]] = None,
        coords: Optional[np.ndarray] = None,
    ) -> "WeightedGraph":
        """
        Build a graph from an arbitrary edge list.

        Args:
            n: Vertex count
            edges: Unordered vertex pairs
            weights: Per-edge weights (all 1 if None)
            coords: Optional vertex positions

        Returns:
            WeightedGraph with canonical, sorted edges
        """
        if weights is None:
            weights = [1.0] * len(edges)
        pairs = {}
        for (a, b), w in zip(edges, weights):
            if a == b:
                raise InvalidParam(f"Self-loop at vertex {a}")
            key = (min(a, b), max(a, b))
            if key in pairs:
                raise InvalidParam(f"Duplicate edge {key}")
            pairs[key] = float(w)
        ordered = sorted(pairs)
        return cls(
            n=n,
            edges=np.array(ordered, dtype=np.int64).reshape(-1, 2),
            weights=np.array([pairs[e] for e in ordered], dtype=np.float64),
            coords=coords,
        )

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def budget(self) -> float:
        """Total weight W."""
        return float(self.weights.sum())

    @property
    def topology(self) -> nx.Graph:
        """Unweighted topology (cached; shared between weight snapshots)."""
        if self._topology is None:
            graph = nx.Graph()
            graph.add_nodes_from(range(self.n))
            graph.add_edges_from(map(tuple, self.edges.tolist()))
            self._topology = graph
        return self._topology

    @property
    def edge_index(self) -> dict[tuple[int, int], int]:
        """Map from canonical pair to position in the weight array."""
        if self._edge_index is None:
            self._edge_index = {(int(u), int(v)): i for i, (u, v) in enumerate(self.edges)}
        return self._edge_index

    def degrees(self, weights: Optional[np.ndarray] = None) -> np.ndarray:
        """Weighted vertex degrees (B·w)."""
        w = self.weights if weights is None else weights
        return np.bincount(self.edges.ravel(), weights=np.repeat(w, 2), minlength=self.n)

    def with_weights(self, weights: np.ndarray) -> "WeightedGraph":
        """Snapshot with new weights and the same topology."""
        clone = WeightedGraph.__new__(WeightedGraph)
        clone.n = self.n
        clone.edges = self.edges
        clone.weights = np.array(weights, dtype=np.float64)
        clone.coords = self.coords
        clone._topology = self.topology
        clone._edge_index = self._edge_index
        return clone


@dataclass(frozen=True)
class SubgraphScope:
    """Induced subgraph with its core. Edge entries index the graph's weight array."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    core_vertices: tuple[int, ...]
    core_edges: tuple[int, ...]
    k: int
    center: Optional[int] = None

    @property
    def is_core_empty(self) -> bool:
        return not self.core_edges


@dataclass(frozen=True)
class CoefficientMatrix:
    """Monomial coefficients c_pq of a pairwise polynomial, indexed by power."""

    raw: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.raw, dtype=np.float64)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
            raise InvalidParam(f"Coefficient matrix must be square, got shape {raw.shape}")
        if raw.shape[0] < 2:
            raise InvalidParam("Coefficient matrix needs degree d >= 1")
        if not np.all(np.isfinite(raw)):
            raise InvalidParam("Coefficient matrix entries must be finite")
        object.__setattr__(self, "raw", raw)

    @property
    def degree(self) -> int:
        return self.raw.shape[0] - 1

    @property
    def symmetrized(self) -> np.ndarray:
        """C̄ = raw + rawᵀ."""
        return self.raw + self.raw.T


@dataclass(frozen=True)
class TracePowerVector:
    """Entry p is Tr(L^p), p = 0..d."""

    values: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.values) - 1


@dataclass(frozen=True)
class ZMatrix:
    """One row of weighted perturbation traces per core edge, in core-edge order."""

    rows: np.ndarray
    edges: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.rows.shape[1] - 1


@dataclass
class AlignmentReport:
    """Outcome of the rank-one / axis alignment test on Z·C̄."""

    sigma: list[float]
    ratio: float
    axis: int
    overlap: float
    passed: bool
    edge_count: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "edge_count": self.edge_count,
            "sigma": self.sigma,
            "ratio": self.ratio if np.isfinite(self.ratio) else "inf",
            "axis": self.axis,
            "overlap": self.overlap,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class DescentParams:
    """Projected-gradient solver settings."""

    max_steps: int = 5
    step_size: float = 1.0
    backtrack: float = 0.5
    armijo_c1: float = 1e-4
    floor: float = 0.1
    pg_tol: float = 1e-8
    max_backtracks: int = 40

    def __post_init__(self):
        if self.max_steps < 0 or self.max_backtracks < 1:
            raise InvalidParam("Step counts must be non-negative")
        if self.step_size <= 0 or self.pg_tol <= 0:
            raise InvalidParam("Step size and tolerance must be positive")
        if not 0 < self.backtrack < 1 or not 0 < self.armijo_c1 < 1:
            raise InvalidParam("Backtracking factor and Armijo constant must lie in (0, 1)")
        if self.floor < 0:
            raise InvalidParam(f"Weight floor must be non-negative, got {self.floor}")


@dataclass
class DescentStep:
    """One accepted solver step."""

    step: int
    J: float
    step_size: float
    pg_norm: float
    budget_residual: float
    min_weight: float


@dataclass
class DescentRecord:
    """Per-step log of one solver call plus the run-level summary values."""

    J0: float
    steps: list[DescentStep] = field(default_factory=list)
    Jstar: Optional[float] = None
    dopr: Optional[float] = None

    @property
    def Jd(self) -> float:
        return self.steps[-1].J if self.steps else self.J0

    def summary(self) -> dict[str, Optional[float]]:
        return {"J0": self.J0, "Jd": self.Jd, "Jstar": self.Jstar, "dopr": self.dopr}


@dataclass
class GossipState:
    """Per-vertex degree estimates under randomized pairwise averaging."""

    s: np.ndarray
    rng: np.random.Generator
    rounds: int = 0


@dataclass(frozen=True)
class SurrogateSeries:
    """
    Series h(x) = Σ a_k x^k / k! of an eigen-difference cost.

    lambda_proxy is "2dmax" (2·max weighted degree) or "exact" (λ_max(L)).
    """

    coefficients: dict[int, float]
    lambda_proxy: str = "2dmax"

    def __post_init__(self):
        if any(k < 0 for k in self.coefficients):
            raise InvalidParam("Series powers must be non-negative")
        if self.lambda_proxy not in ("2dmax", "exact"):
            raise InvalidParam(f"Unknown lambda proxy '{self.lambda_proxy}'")

    @property
    def order(self) -> int:
        return max(self.coefficients, default=0)

    @property
    def hypothesis_holds(self) -> bool:
        """True when every even coefficient a_{2k}, k >= 1, is non-negative."""
        return all(a >= 0 for k, a in self.coefficients.items() if k >= 2 and k % 2 == 0)


class SurrogateBound(NamedTuple):
    """Both sides of the degree bound; the bound is only asserted when the hypothesis holds."""

    lhs: float
    rhs: float
    hypothesis_violated: bool


@dataclass(frozen=True)
class RunConfig:
    """Settings of one pipeline run."""

    mode: str = "cold"  # cold|warm|centralized|regularize
    workers: int = 8
    iterations: int = 200
    warm_split: float = 0.5
    warm_descent: str = "matched"  # matched|remainder
    gossip_rounds: int = 1000
    gossip_reinit: bool = True
    tau_dom: float = 10.0
    tau_axis: float = 0.95
    inner_steps: int = 5
    eval_every: int = 1
    seed: int = 0
    max_resample: int = 50
    scheduling: str = "deterministic"  # deterministic|free
    threads: int = 1
    centralized_steps: int = 500
    descent: DescentParams = field(default_factory=DescentParams)

    def __post_init__(self):
        if self.mode not in ("cold", "warm", "centralized", "regularize"):
            raise InvalidParam(f"Unknown mode '{self.mode}'")
        if self.workers < 1:
            raise InvalidParam(f"Need at least one worker, got {self.workers}")
        if self.iterations < 0 or self.inner_steps < 0:
            raise InvalidParam("Iteration counts must be non-negative")
        if not 0.0 <= self.warm_split <= 1.0:
            raise InvalidParam(f"Warm split must lie in [0, 1], got {self.warm_split}")
        if self.warm_descent not in ("matched", "remainder"):
            raise InvalidParam(f"Unknown warm descent budget '{self.warm_descent}'")
        if self.eval_every < 1 or self.threads < 1 or self.max_resample < 1:
            raise InvalidParam("eval_every, threads and max_resample must be positive")
        if self.scheduling not in ("deterministic", "free"):
            raise InvalidParam(f"Unknown scheduling '{self.scheduling}'")

    def describe(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "workers": self.workers,
            "iterations": self.iterations,
            "warm_split": self.warm_split,
            "warm_descent": self.warm_descent,
            "gossip_rounds": self.gossip_rounds,
            "gossip_reinit": self.gossip_reinit,
            "tau_dom": self.tau_dom,
            "tau_axis": self.tau_axis,
            "inner_steps": self.inner_steps,
            "seed": self.seed,
            "floor": self.descent.floor,
        }


@dataclass
class CurvePoint:
    """Global cost sampled at one outer iteration."""

    iter: int
    J: float
    phase: str


@dataclass
class IterationLog:
    """Run-log record of one outer iteration."""

    iter: int
    J: Optional[float]
    accepted: int
    skipped_align: int
    skipped_core: int
    budget_residual: float
    phase: str = "cold"
    workers: int = 0
    seconds: float = 0.0
    alignment: list[dict[str, Any]] = field(default_factory=list)


@dataclass
class RunResult:
    """Everything a pipeline run produces."""

    weights: np.ndarray
    J0: float
    curve: list[CurvePoint] = field(default_factory=list)
    log: list[IterationLog] = field(default_factory=list)
    align_pass: int = 0
    align_fail: int = 0
    epochs: int = 0
    phase_boundary: Optional[int] = None
    regularization_trace: list[tuple[int, float, float]] = field(default_factory=list)
    gossip_trace: list[tuple[int, float, float]] = field(default_factory=list)
    Jstar: Optional[float] = None
    dopr: Optional[float] = None
    dopr_note: Optional[str] = None
    descent_record: Optional[DescentRecord] = None

    @property
    def Jd(self) -> float:
        return self.curve[-1].J if self.curve else self.J0

    @property
    def wall_clock(self) -> list[float]:
        return [entry.seconds for entry in self.log]


@dataclass
class ManifestEntry:
    """One graph/cost pair of an experiment, with per-entry config overrides."""

    label: str
    cost: Path
    graph: Optional[Path] = None
    generate: Optional[dict[str, Any]] = None
    overrides: dict[str, Any] = field(default_factory=dict)


@dataclass
class ExperimentManifest:
    """A batch of runs compared against centralized baselines."""

    entries: list[ManifestEntry]
    output_dir: Path
    modes: list[str] = field(default_factory=lambda: ["cold", "warm"])
    baseline: str = "compute"  # compute|cached


@dataclass
class RegularizationResult:
    """Output of a degree-regularization pass."""

    graph: WeightedGraph
    dispersion_trace: list[tuple[int, float, float]] = field(default_factory=list)  # iter, dispersion, W
    gossip_trace: list[tuple[int, float, float]] = field(default_factory=list)  # round, ||z||^2, bound
