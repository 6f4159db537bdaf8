import networkx as nx
import numpy as np
import pytest

from specweave.exceptions import ConnectivityFailure, InvalidParam
from specweave.graph import (
    algebraic_connectivity,
    dhop_expansion,
    generate_geometric,
    graph_stats,
    incidence,
    induced_edges,
    khop_core,
    khop_neighborhood,
    laplacian,
    sample_disjoint_neighborhoods,
    scope_laplacian,
    whole_graph_scope,
    write_sets_disjoint,
)
from specweave.models import SubgraphScope, WeightedGraph


def _scope(g, vertices):
    vertices = tuple(sorted(vertices))
    edges = induced_edges(g, vertices)
    return SubgraphScope(vertices=vertices, edges=edges, core_vertices=vertices, core_edges=edges, k=0)


class TestWeightedGraph:
    def test_from_edges_canonicalizes(self):
        g = WeightedGraph.from_edges(3, [(2, 1), (1, 0)], [2.0, 3.0])
        assert g.edges.tolist() == [[0, 1], [1, 2]]
        assert g.weights.tolist() == [3.0, 2.0]

    def test_rejects_disconnected(self):
        with pytest.raises(InvalidParam):
            WeightedGraph.from_edges(4, [(0, 1), (2, 3)])

    def test_rejects_self_loop_and_duplicates(self):
        with pytest.raises(InvalidParam):
            WeightedGraph.from_edges(2, [(1, 1)])
        with pytest.raises(InvalidParam):
            WeightedGraph.from_edges(2, [(0, 1), (1, 0)])

    def test_rejects_nonpositive_weight(self):
        with pytest.raises(InvalidParam):
            WeightedGraph.from_edges(2, [(0, 1)], [0.0])

    def test_degrees(self, p3):
        assert p3.degrees().tolist() == [1.0, 2.0, 1.0]

    def test_with_weights_shares_topology(self, p3):
        clone = p3.with_weights(np.array([1.5, 0.5]))
        assert clone.topology is p3.topology
        assert clone.degrees().tolist() == [1.5, 2.0, 0.5]
        assert p3.weights.tolist() == [1.0, 1.0]


class TestGenerateGeometric:
    def test_two_vertices_large_radius_is_k2(self):
        g = generate_geometric(2, 1.5, seed=11)
        assert g.edges.tolist() == [[0, 1]]
        assert g.weights.tolist() == [1.0]

    @pytest.mark.parametrize("seed", range(50))
    def test_desk_scale_density(self, seed):
        g = generate_geometric(150, 0.16, seed=seed)
        assert nx.is_connected(g.topology)
        assert 8 <= 2 * g.num_edges / g.n <= 16

    def test_edges_are_strictly_within_radius(self):
        g = generate_geometric(40, 0.3, seed=2)
        dist = np.linalg.norm(g.coords[g.edges[:, 0]] - g.coords[g.edges[:, 1]], axis=1)
        assert np.all(dist < 0.3)

    def test_same_seed_same_graph(self):
        a = generate_geometric(25, 0.4, seed=5)
        b = generate_geometric(25, 0.4, seed=5)
        assert np.array_equal(a.edges, b.edges)
        assert np.array_equal(a.coords, b.coords)

    def test_invalid_params(self):
        with pytest.raises(InvalidParam):
            generate_geometric(1, 0.5, seed=0)
        with pytest.raises(InvalidParam):
            generate_geometric(10, 0.0, seed=0)

    def test_connectivity_failure(self):
        with pytest.raises(ConnectivityFailure):
            generate_geometric(50, 0.01, seed=0, max_retries=3)


class TestLaplacian:
    def test_p3(self, p3):
        expected = [[1, -1, 0], [-1, 2, -1], [0, -1, 1]]
        assert np.array_equal(laplacian(p3), expected)

    def test_k3(self, k3):
        assert np.array_equal(laplacian(k3), 3 * np.eye(3) - np.ones((3, 3)))

    def test_single_weighted_edge(self):
        g = WeightedGraph.from_edges(2, [(0, 1)], [2.5])
        assert np.array_equal(laplacian(g), [[2.5, -2.5], [-2.5, 2.5]])

    def test_properties_on_weighted_graphs(self, random_graphs, rng):
        for g in random_graphs:
            w = rng.uniform(0.1, 2.0, g.num_edges)
            L = laplacian(g, w)
            scale = np.abs(L).max()
            assert np.abs(np.ones(g.n) @ L).max() <= 1e-12 * scale
            assert np.linalg.eigvalsh(L).min() >= -1e-12 * scale * g.n
            assert np.trace(L) == pytest.approx(2 * w.sum(), rel=1e-12)

    def test_scope_laplacian_matches_induced(self, p5):
        scope = _scope(p5, [1, 2, 3])
        L, local = scope_laplacian(p5, scope)
        assert local == {1: 0, 2: 1, 3: 2}
        assert np.array_equal(L, [[1, -1, 0], [-1, 2, -1], [0, -1, 1]])

    def test_algebraic_connectivity(self, k3, k2):
        assert algebraic_connectivity(k3) == pytest.approx(3.0)
        assert algebraic_connectivity(k2) == pytest.approx(2.0)

    def test_graph_stats(self, p3):
        stats = graph_stats(p3)
        assert stats["n"] == 3
        assert stats["edges"] == 2
        assert stats["avg_degree"] == pytest.approx(4 / 3)
        assert stats["lambda2"] == pytest.approx(1.0)


class TestNeighborhoods:
    def test_one_hop_on_path(self, p5):
        scope = khop_neighborhood(p5, 2, 1)
        assert scope.vertices == (1, 2, 3)
        assert [tuple(p5.edges[e]) for e in scope.edges] == [(1, 2), (2, 3)]
        assert scope.core_vertices == (2,)

    def test_two_hop_on_path_covers_all(self, p5):
        assert khop_neighborhood(p5, 2, 2).vertices == (0, 1, 2, 3, 4)

    def test_one_hop_on_triangle_is_whole_graph(self, k3):
        scope = khop_neighborhood(k3, 1, 1)
        assert scope.vertices == (0, 1, 2)
        assert len(scope.edges) == 3

    def test_core_of_whole_graph_is_whole_graph(self, p5):
        core = khop_core(p5, whole_graph_scope(p5), 3)
        assert core.core_vertices == tuple(range(5))
        assert core.core_edges == tuple(range(4))

    def test_core_on_path_prefix(self, p5):
        scope = _scope(p5, [0, 1, 2])
        core = khop_core(p5, scope, 2)
        assert core.core_vertices == (0, 1)
        assert [tuple(p5.edges[e]) for e in core.core_edges] == [(0, 1)]

        assert khop_core(p5, scope, 4).core_vertices == ()
        assert khop_core(p5, scope, 4).is_core_empty

    def test_expansion(self, p5, k3):
        assert dhop_expansion(p5, _scope(p5, [1, 2, 3]), 1).vertices == (0, 1, 2, 3, 4)
        assert dhop_expansion(k3, _scope(k3, [1]), 1).vertices == (0, 1, 2)

    def test_expansion_by_zero_is_identity(self, rgg):
        core = khop_neighborhood(rgg, 4, 1)
        expanded = dhop_expansion(rgg, core, 0)
        assert expanded.vertices == core.vertices
        assert expanded.edges == core.edges

    def test_expansion_records_core(self, rgg):
        core = khop_neighborhood(rgg, 0, 1)
        expanded = dhop_expansion(rgg, core, 2)
        assert expanded.core_vertices == core.vertices
        assert expanded.core_edges == core.edges

    def test_core_of_expansion_contains_input(self, random_graphs, rng):
        for g in random_graphs:
            for d in (1, 2, 3):
                center = int(rng.integers(g.n))
                seed_scope = khop_neighborhood(g, center, 1)
                recovered = khop_core(g, dhop_expansion(g, seed_scope, d), d)
                assert set(seed_scope.vertices) <= set(recovered.core_vertices)


class TestIncidence:
    def test_star(self, star):
        B = incidence(star, [0, 1, 2], [0, 1])
        assert B.tolist() == [[1, 1], [1, 0], [0, 1]]

    def test_single_edge(self, k2):
        assert incidence(k2, [0, 1], [0]).tolist() == [[1], [1]]

    def test_path_column_sums(self, p3):
        B = incidence(p3, [0, 1, 2], [0, 1])
        assert B.tolist() == [[1, 0], [1, 1], [0, 1]]
        assert B.sum(axis=0).tolist() == [2, 2]


class TestDisjointSampling:
    def test_single_worker(self, rgg, rng):
        unvisited = set(range(rgg.n))
        scopes = sample_disjoint_neighborhoods(rgg, unvisited, 1, 1, rng)
        assert len(scopes) == 1
        assert scopes[0].center not in unvisited

    def test_path_ends_are_disjoint(self, p5, rng):
        unvisited = {0, 4}
        scopes = sample_disjoint_neighborhoods(p5, unvisited, 2, 1, rng)
        assert sorted(s.vertices for s in scopes) == [(0, 1), (3, 4)]
        assert unvisited == set()

    def test_triangle_allows_one(self, k3, rng):
        unvisited = {0, 1, 2}
        scopes = sample_disjoint_neighborhoods(k3, unvisited, 2, 1, rng, max_resample=5)
        assert len(scopes) == 1
        assert len(unvisited) == 2

    def test_result_is_edge_disjoint(self, rgg, rng):
        for _ in range(10):
            scopes = sample_disjoint_neighborhoods(rgg, set(range(rgg.n)), 6, 1, rng)
            assert 1 <= len(scopes) <= 6
            assert write_sets_disjoint([frozenset(s.edges) for s in scopes])

    def test_empty_pool(self, p3, rng):
        with pytest.raises(InvalidParam):
            sample_disjoint_neighborhoods(p3, set(), 1, 1, rng)
