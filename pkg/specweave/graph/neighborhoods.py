"""Hop neighbourhoods, cores, expansions, incidence and disjoint sampling."""

import logging
from collections.abc import Callable, Iterable
from typing import Optional

import networkx as nx
import numpy as np

from ..exceptions import InvalidParam, SpecweaveError
from ..models import SubgraphScope, WeightedGraph

logger = logging.getLogger(__name__)

WriteSet = Callable[[WeightedGraph, SubgraphScope], frozenset[int]]


def induced_edges(g: WeightedGraph, vertices: Iterable[int]) -> tuple[int, ...]:
    """Indices of all edges with both endpoints in vertices, in canonical order."""
    index = g.edge_index
    found = (index[(min(u, v), max(u, v))] for u, v in g.topology.subgraph(vertices).edges())
    return tuple(sorted(found))


def _ball(g: WeightedGraph, sources: Iterable[int], radius: int) -> dict[int, int]:
    """Unweighted hop distance of every vertex within radius of the sources."""
    sources = list(sources)
    if not sources or radius < 0:
        return {}
    return nx.multi_source_dijkstra_path_length(g.topology, set(sources), cutoff=radius)


def khop_neighborhood(g: WeightedGraph, center: int, k: int) -> SubgraphScope:
    """
    Induced subgraph on every vertex within k hops of center.

    The core is the ball of radius k−1 (just the center when k = 1): exactly
    the vertices whose whole neighbourhood lies inside the subgraph.
    """
    if not 0 <= center < g.n:
        raise InvalidParam(f"Vertex {center} out of range")
    dist = nx.single_source_shortest_path_length(g.topology, center, cutoff=k)
    vertices = tuple(sorted(dist))
    core = tuple(sorted(v for v, d in dist.items() if d <= k - 1))
    return SubgraphScope(
        vertices=vertices,
        edges=induced_edges(g, vertices),
        core_vertices=core,
        core_edges=induced_edges(g, core),
        k=k,
        center=center,
    )


def khop_core(g: WeightedGraph, scope: SubgraphScope, k: int) -> SubgraphScope:
    """
    Restrict a scope's core to vertices at least k hops from its complement.

    With an empty complement the distance is +inf, so the core is the scope.
    """
    inside = set(scope.vertices)
    outside = [v for v in range(g.n) if v not in inside]
    near = _ball(g, outside, k - 1) if outside and k > 0 else {}
    core = tuple(v for v in scope.vertices if v not in near)
    return SubgraphScope(
        vertices=scope.vertices,
        edges=scope.edges,
        core_vertices=core,
        core_edges=induced_edges(g, core),
        k=k,
        center=scope.center,
    )


def dhop_expansion(g: WeightedGraph, core: SubgraphScope, d: int) -> SubgraphScope:
    """
    Grow a subgraph by d hops; the input's vertices and edges become the core.

    Every core vertex ends up more than d hops from the result's complement,
    so walks of length <= d from a core edge never leave the result.
    """
    vertices = tuple(sorted(_ball(g, core.vertices, d)))
    return SubgraphScope(
        vertices=vertices,
        edges=induced_edges(g, vertices),
        core_vertices=core.vertices,
        core_edges=core.edges,
        k=d,
        center=core.center,
    )


def incidence(g: WeightedGraph, vertices: list[int], edges: list[int]) -> np.ndarray:
    """
    Binary vertex–edge incidence matrix.

    Args:
        g: Host graph
        vertices: Row order (global vertex ids)
        edges: Column order (global edge indices)

    Returns:
        B with B[i, j] = 1 iff vertices[i] is an endpoint of edges[j]
    """
    rows = {v: i for i, v in enumerate(vertices)}
    B = np.zeros((len(vertices), len(edges)))
    for j, e in enumerate(edges):
        for endpoint in g.edges[e]:
            i = rows.get(int(endpoint))
            if i is not None:
                B[i, j] = 1.0
    return B


def scope_edges(g: WeightedGraph, scope: SubgraphScope) -> frozenset[int]:
    """Default write set: every edge of the scope."""
    return frozenset(scope.edges)


def degree_match_edges(g: WeightedGraph, scope: SubgraphScope) -> frozenset[int]:
    """
    Edges touching the closed 1-hop neighbourhood of a 2-hop scope's center.

    Covers center–N1, N1–N1 and the N1–N2 boundary edges.
    """
    ball = set(scope.core_vertices)
    return frozenset(
        e for e in scope.edges if int(g.edges[e, 0]) in ball or int(g.edges[e, 1]) in ball
    )


def write_sets_disjoint(sets: list[frozenset[int]]) -> bool:
    """True when no edge appears in two write sets."""
    seen: set[int] = set()
    for edges in sets:
        if seen & edges:
            return False
        seen |= edges
    return True


def _greedy_disjoint(
    g: WeightedGraph, scopes: list[SubgraphScope], write_set: WriteSet
) -> list[SubgraphScope]:
    kept, taken = [], set()
    for scope in scopes:
        edges = write_set(g, scope)
        if taken.isdisjoint(edges):
            kept.append(scope)
            taken |= edges
    return kept


def sample_disjoint_neighborhoods(
    g: WeightedGraph,
    unvisited: set[int],
    m: int,
    k: int,
    rng: np.random.Generator,
    max_resample: int = 50,
    write_set: Optional[WriteSet] = None,
) -> list[SubgraphScope]:
    """
    Draw up to m centers and return pairwise edge-disjoint k-hop neighbourhoods.

    Centers are drawn without replacement from the sorted unvisited set. A draw
    whose write sets collide is redrawn; after max_resample draws the largest
    greedy disjoint subcollection seen is returned instead. Returned centers
    are removed from unvisited.

    Args:
        g: Host graph
        unvisited: Candidate centers (mutated)
        m: Requested number of neighbourhoods
        k: Hop radius
        rng: Random generator
        max_resample: Draw limit before the greedy fallback
        write_set: Edges a worker on a scope may write (all scope edges if None)

    Returns:
        List of SubgraphScope with pairwise disjoint write sets
    """
    if not unvisited:
        raise InvalidParam("No unvisited vertices to draw from")
    write_set = write_set or scope_edges
    pool = np.array(sorted(unvisited))
    count = min(m, len(pool))

    best: list[SubgraphScope] = []
    for attempt in range(1, max_resample + 1):
        centers = rng.choice(pool, size=count, replace=False)
        scopes = [khop_neighborhood(g, int(c), k) for c in centers]
        kept = _greedy_disjoint(g, scopes, write_set)
        if len(kept) > len(best):
            best = kept
        if len(kept) == count:
            break
    else:
        logger.debug(f"Collisions persisted after {max_resample} draws, keeping {len(best)}/{count}")

    if not write_sets_disjoint([write_set(g, s) for s in best]):
        raise SpecweaveError("Sampled neighbourhoods are not edge-disjoint")

    for scope in best:
        unvisited.discard(scope.center)
    return best


def whole_graph_scope(g: WeightedGraph) -> SubgraphScope:
    """The full graph as its own core."""
    vertices = tuple(range(g.n))
    edges = tuple(range(g.num_edges))
    return SubgraphScope(vertices=vertices, edges=edges, core_vertices=vertices, core_edges=edges, k=0)
