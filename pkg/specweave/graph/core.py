"""Graph construction, random geometric generation and Laplacians."""

import logging
from typing import Optional

import networkx as nx
import numpy as np
from scipy.linalg import eigh
from scipy.spatial import cKDTree

from ..config import Config
from ..exceptions import ConnectivityFailure, InvalidParam
from ..models import SubgraphScope, WeightedGraph

logger = logging.getLogger(__name__)


def generate_geometric(
    n: int,
    radius: float,
    seed: int,
    max_retries: Optional[int] = None,
) -> WeightedGraph:
    """
    Sample a connected random geometric graph on the unit square.

    Vertices are i.i.d. uniform points; an edge joins every pair closer than
    radius (strict). Disconnected draws are discarded and redrawn from the same
    generator stream.

    Args:
        n: Vertex count (>= 2)
        radius: Connection threshold (> 0)
        seed: Generator seed
        max_retries: Draw limit (uses config default if None)

    Returns:
        WeightedGraph with unit weights and coordinates

    Raises:
        InvalidParam: n < 2 or radius <= 0
        ConnectivityFailure: no connected draw within max_retries
    """
    if n < 2:
        raise InvalidParam(f"Need n >= 2, got {n}")
    if not radius > 0:
        raise InvalidParam(f"Need radius > 0, got {radius}")

    max_retries = max_retries or Config.MAX_GRAPH_RETRIES
    rng = np.random.default_rng(seed)

    for attempt in range(1, max_retries + 1):
        coords = rng.uniform(0.0, 1.0, size=(n, 2))
        pairs = cKDTree(coords).query_pairs(radius, output_type="ndarray")
        if len(pairs):
            dist = np.linalg.norm(coords[pairs[:, 0]] - coords[pairs[:, 1]], axis=1)
            pairs = np.sort(pairs[dist < radius], axis=1)
            pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]

        topology = nx.Graph()
        topology.add_nodes_from(range(n))
        topology.add_edges_from(map(tuple, pairs.tolist()))
        if not nx.is_connected(topology):
            logger.debug(f"Draw {attempt} disconnected, resampling")
            continue

        graph = WeightedGraph(
            n=n,
            edges=pairs.reshape(-1, 2),
            weights=np.ones(len(pairs)),
            coords=coords,
        )
        logger.info(f"Generated geometric graph n={n} |E|={graph.num_edges} after {attempt} draw(s)")
        return graph

    raise ConnectivityFailure(
        f"No connected geometric graph (n={n}, radius={radius}, seed={seed}) in {max_retries} draws"
    )


def laplacian(g: WeightedGraph, weights: Optional[np.ndarray] = None) -> np.ndarray:
    """Dense weighted Laplacian L = diag(A·1) − A."""
    w = g.weights if weights is None else weights
    L = np.zeros((g.n, g.n))
    u, v = g.edges[:, 0], g.edges[:, 1]
    L[u, v] = -w
    L[v, u] = -w
    L[np.diag_indices(g.n)] = g.degrees(w)
    return L


def scope_laplacian(
    g: WeightedGraph,
    scope: SubgraphScope,
    weights: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, dict[int, int]]:
    """
    Laplacian of the subgraph induced by a scope, in local indexing.

    Args:
        g: Host graph
        scope: Subgraph whose vertices/edges are used
        weights: Full weight array (uses g.weights if None)

    Returns:
        (L_H, map from global vertex id to local row)
    """
    w = g.weights if weights is None else weights
    vertices = np.asarray(scope.vertices, dtype=np.int64)
    local = {int(v): i for i, v in enumerate(vertices)}
    idx = np.asarray(scope.edges, dtype=np.int64)
    a = np.searchsorted(vertices, g.edges[idx, 0])
    b = np.searchsorted(vertices, g.edges[idx, 1])
    L = np.zeros((len(vertices), len(vertices)))
    L[a, b] = -w[idx]
    L[b, a] = -w[idx]
    np.add.at(L, (a, a), w[idx])
    np.add.at(L, (b, b), w[idx])
    return L, local


def algebraic_connectivity(g: WeightedGraph, weighted: bool = False) -> float:
    """Second-smallest Laplacian eigenvalue (unit weights unless weighted)."""
    if g.n < 2:
        return 0.0
    L = laplacian(g) if weighted else laplacian(g, np.ones(g.num_edges))
    return float(eigh(L, eigvals_only=True, subset_by_index=[1, 1])[0])


def graph_stats(g: WeightedGraph) -> dict[str, float]:
    """Summary numbers printed by the CLI."""
    return {
        "n": g.n,
        "edges": g.num_edges,
        "avg_degree": 2.0 * g.num_edges / g.n,
        "budget": g.budget,
        "lambda2": algebraic_connectivity(g),
    }
