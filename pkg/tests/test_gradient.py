import numpy as np
import pytest

from specweave.exceptions import DimensionMismatch, EmptyCore, InvalidParam
from specweave.graph import (
    dhop_expansion,
    generate_geometric,
    khop_core,
    khop_neighborhood,
    laplacian,
    whole_graph_scope,
)
from specweave.models import CoefficientMatrix, TracePowerVector, WeightedGraph, ZMatrix
from specweave.spectral import (
    alignment_test,
    cost_trace_form,
    edge_perturbation_trace,
    gradient,
    local_state,
    matrix_powers,
    trace_powers,
    z_matrix,
    z_vector,
)


class TestEdgePerturbationTrace:
    def test_identity(self):
        assert edge_perturbation_trace(np.eye(4), 1, 3) == 2

    def test_triangle_powers(self, k3):
        L = laplacian(k3)
        assert edge_perturbation_trace(L, 0, 1) == 6
        assert edge_perturbation_trace(L @ L, 0, 2) == 18

    def test_same_endpoint(self):
        with pytest.raises(InvalidParam):
            edge_perturbation_trace(np.eye(3), 1, 1)


class TestZ:
    def test_triangle_row(self, k3):
        assert z_vector(laplacian(k3), 0, 1, 4).tolist() == [0, 2, 12, 54, 216]

    def test_degree_one_row(self, rgg):
        assert z_vector(laplacian(rgg), 0, 1, 1).tolist() == [0, 2]

    def test_single_weighted_edge(self):
        g = WeightedGraph.from_edges(2, [(0, 1)], [0.75])
        assert z_vector(laplacian(g), 0, 1, 2).tolist() == [0, 2, 8 * 0.75]

    def test_triangle_matrix_rows_identical(self, k3):
        Z = z_matrix(k3, whole_graph_scope(k3), 4)
        assert Z.rows.shape == (3, 5)
        assert np.all(Z.rows == [0, 2, 12, 54, 216])
        assert Z.edges == (0, 1, 2)

    def test_empty_core(self, p5):
        scope = khop_core(p5, khop_neighborhood(p5, 2, 1), 2)
        assert scope.core_vertices == (2,)
        assert scope.is_core_empty
        with pytest.raises(EmptyCore):
            z_matrix(p5, scope, 2)

    def test_locality_matches_global(self, random_graphs, rng):
        # Unit weights keep every power integral, so equality is exact.
        for g in random_graphs:
            d = 3
            global_powers = matrix_powers(laplacian(g), d)
            for center in rng.choice(g.n, size=3, replace=False):
                H = dhop_expansion(g, khop_neighborhood(g, int(center), 1), d)
                if H.is_core_empty:
                    continue
                Z, _ = local_state(g, H, d)
                for row, e in zip(Z.rows, H.core_edges):
                    a, b = (int(x) for x in g.edges[e])
                    expected = [p * edge_perturbation_trace(global_powers[p - 1], a, b) for p in range(1, d + 1)]
                    assert row[1:].tolist() == expected


class TestGradient:
    def test_triangle(self, k3, quartic_cost):
        Z, v = local_state(k3, whole_graph_scope(k3), 4)
        assert gradient(Z, quartic_cost, v) == pytest.approx([408, 408, 408])

    @pytest.mark.parametrize("seed", range(50))
    def test_matches_finite_difference(self, seed, quartic_cost):
        g = generate_geometric(4 + seed % 12, 0.5, seed=seed)
        w = np.random.default_rng(seed).uniform(0.5, 1.5, g.num_edges)
        Z, v = local_state(g, whole_graph_scope(g), 4, w)
        grad = gradient(Z, quartic_cost, v)
        h = 1e-5
        fd = np.empty(g.num_edges)
        for e in range(g.num_edges):
            up, down = w.copy(), w.copy()
            up[e] += h
            down[e] -= h
            fd[e] = (cost_trace_form(g, quartic_cost, up) - cost_trace_form(g, quartic_cost, down)) / (2 * h)
        assert grad == pytest.approx(fd, rel=1e-4, abs=1e-6 * np.abs(grad).max())

    def test_triangle_scaling_derivative(self, k3, quartic_cost):
        Z, v = local_state(k3, whole_graph_scope(k3), 4)
        assert gradient(Z, quartic_cost, v).sum() == pytest.approx(1224)
        h = 1e-5
        ones = np.ones(3)
        fd = (cost_trace_form(k3, quartic_cost, (1 + h) * ones) - cost_trace_form(k3, quartic_cost, (1 - h) * ones)) / (2 * h)
        assert fd == pytest.approx(1224, rel=1e-6)

    def test_local_and_global_inner_product(self, random_graphs, rng, quartic_cost):
        for g in random_graphs:
            w = rng.uniform(0.5, 1.5, g.num_edges)
            H = dhop_expansion(g, khop_neighborhood(g, int(rng.integers(g.n)), 1), 4)
            Z, v_H = local_state(g, H, 4, w)
            v_G = trace_powers(laplacian(g, w), 4)
            Cbar = quartic_cost.symmetrized
            expected = v_H.values @ Cbar.T @ Z.rows.T @ Z.rows @ Cbar @ v_G.values
            g_H, g_G = gradient(Z, quartic_cost, v_H), gradient(Z, quartic_cost, v_G)
            scale = np.linalg.norm(g_H) * np.linalg.norm(g_G)
            assert g_H @ g_G == pytest.approx(expected, rel=1e-10, abs=1e-10 * scale)

    def test_zero_cost(self, k3):
        Z, v = local_state(k3, whole_graph_scope(k3), 2)
        assert np.all(gradient(Z, CoefficientMatrix(np.zeros((3, 3))), v) == 0)

    def test_hand_example(self):
        Z = ZMatrix(rows=np.array([[0.0, 2.0]]), edges=(0,))
        C = CoefficientMatrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
        v = TracePowerVector(np.array([5.0, 8.0]))
        assert gradient(Z, C, v).tolist() == [10.0]

    def test_dimension_mismatch(self, k3, quartic_cost):
        Z, _ = local_state(k3, whole_graph_scope(k3), 4)
        with pytest.raises(DimensionMismatch):
            gradient(Z, quartic_cost, trace_powers(laplacian(k3), 2))


class TestAlignment:
    def test_exact_rank_one(self):
        Z = ZMatrix(rows=np.array([[1.0, 0.0], [2.0, 0.0]]), edges=(0, 1))
        C = CoefficientMatrix(0.5 * np.eye(2))
        report = alignment_test(Z, C)
        assert report.ratio == float("inf")
        assert report.axis == 0
        assert report.overlap == pytest.approx(1.0)
        assert report.passed

    def test_identity_fails(self):
        Z = ZMatrix(rows=np.eye(2), edges=(0, 1))
        report = alignment_test(Z, CoefficientMatrix(0.5 * np.eye(2)), tau_dom=1.5)
        assert report.ratio == pytest.approx(1.0)
        assert not report.passed

    def test_zero_fails(self):
        Z = ZMatrix(rows=np.zeros((2, 2)), edges=(0, 1))
        assert not alignment_test(Z, CoefficientMatrix(0.5 * np.eye(2))).passed

    def test_triangle_is_rank_one(self, k3, quartic_cost):
        Z = z_matrix(k3, whole_graph_scope(k3), 4)
        report = alignment_test(Z, quartic_cost)
        assert report.ratio == float("inf")
        assert 0 <= report.overlap <= 1
        assert report.passed == (report.overlap >= 0.95)
        assert report.to_dict()["ratio"] == "inf"
