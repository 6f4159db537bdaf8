from dataclasses import replace

import numpy as np
import pytest

from specweave.config import Config
from specweave.exceptions import InvalidParam
from specweave.graph import generate_geometric, khop_neighborhood
from specweave.models import RunConfig
from specweave.orchestration import optimize_subgraph, run, run_centralized, run_cold, run_warm
from specweave.parallel import run_workers
from specweave.spectral import cost_trace_form


def _cfg(**overrides):
    values = dict(workers=4, iterations=6, gossip_rounds=200, inner_steps=3, seed=11, threads=1)
    values.update(overrides)
    return RunConfig(**values)


class TestWorkers:
    def test_deterministic_order(self):
        tasks = [lambda i=i: i * i for i in range(6)]
        assert run_workers(tasks, threads=3) == [0, 1, 4, 9, 16, 25]

    def test_free_order_same_results(self):
        tasks = [lambda i=i: i for i in range(6)]
        assert sorted(run_workers(tasks, threads=3, scheduling="free")) == list(range(6))

    def test_subgraph_worker_keeps_core_budget(self, rgg, quartic_cost):
        snapshot = np.random.default_rng(0).uniform(0.5, 1.5, rgg.num_edges)
        scope = khop_neighborhood(rgg, int(np.argmax(rgg.degrees())), 1)
        outcome = optimize_subgraph(rgg, scope, quartic_cost, _cfg(tau_dom=1.0, tau_axis=0.0), snapshot)
        assert outcome.edges.tolist() == list(scope.edges)
        assert outcome.weights.sum() == pytest.approx(snapshot[outcome.edges].sum(), rel=1e-9)
        assert outcome.accepted >= 1
        assert len(outcome.reports) >= 1

    def test_subgraph_worker_skips_on_alignment_failure(self, rgg, quartic_cost):
        scope = khop_neighborhood(rgg, int(np.argmax(rgg.degrees())), 1)
        outcome = optimize_subgraph(rgg, scope, quartic_cost, _cfg(tau_dom=np.inf), rgg.weights.copy())
        assert outcome.skipped_align
        assert outcome.accepted == 0
        assert np.array_equal(outcome.weights, rgg.weights[outcome.edges])


class TestColdStart:
    def test_triangle_is_fixed(self, k3, quartic_cost):
        result = run_cold(k3, quartic_cost, _cfg())
        assert result.weights.tolist() == [1.0, 1.0, 1.0]
        assert result.J0 == pytest.approx(288)
        assert result.Jd == pytest.approx(288)

    def test_triangle_baseline_is_degenerate(self, k3, quartic_cost):
        baseline = run_centralized(k3, quartic_cost, _cfg(mode="centralized"))
        result = run_cold(k3, quartic_cost, _cfg(), baseline.Jd)
        assert result.dopr is None
        assert "DegenerateBaseline" in result.dopr_note

    def test_zero_iterations(self, rgg, quartic_cost):
        result = run_cold(rgg, quartic_cost, _cfg(iterations=0))
        assert np.array_equal(result.weights, rgg.weights)
        assert [p.J for p in result.curve] == [result.J0]
        assert result.log == []

    def test_feasible_every_iteration(self, rgg, quartic_cost):
        w0 = np.random.default_rng(3).uniform(0.3, 2.0, rgg.num_edges)
        g = rgg.with_weights(w0)
        result = run_cold(g, quartic_cost, _cfg(iterations=12))
        assert len(result.log) == 12
        assert all(entry.budget_residual <= 1e-9 * w0.sum() for entry in result.log)
        assert result.weights.min() >= 0.1
        assert result.weights.sum() == pytest.approx(w0.sum(), rel=1e-9)
        assert result.Jd == pytest.approx(cost_trace_form(g, quartic_cost, result.weights))

    def test_epochs_counted(self, rgg, quartic_cost):
        result = run_cold(rgg, quartic_cost, _cfg(workers=8, iterations=30, inner_steps=1))
        assert result.epochs >= 1

    def test_eval_cadence(self, rgg, quartic_cost):
        result = run_cold(rgg, quartic_cost, _cfg(iterations=7, eval_every=3))
        assert [p.iter for p in result.curve] == [0, 3, 6, 7]
        assert [entry.J is None for entry in result.log] == [True, True, False, True, True, False, False]

    def test_seed_determinism(self, rgg, quartic_cost):
        a = run_cold(rgg, quartic_cost, _cfg())
        b = run_cold(rgg, quartic_cost, _cfg(threads=4))
        assert np.array_equal(a.weights, b.weights)
        assert [p.J for p in a.curve] == [p.J for p in b.curve]

    def test_alignment_counters(self, rgg, quartic_cost):
        result = run_cold(rgg, quartic_cost, _cfg())
        logged = sum(len(entry.alignment) for entry in result.log)
        assert result.align_pass + result.align_fail == logged


class TestWarmStart:
    def test_split_zero_matches_cold(self, rgg, quartic_cost):
        cold = run_cold(rgg, quartic_cost, _cfg())
        warm = run_warm(rgg, quartic_cost, _cfg(mode="warm", warm_split=0.0))
        assert np.array_equal(cold.weights, warm.weights)
        assert warm.phase_boundary is None

    def test_phases(self, rgg, quartic_cost):
        w0 = np.random.default_rng(4).uniform(0.3, 2.0, rgg.num_edges)
        g = rgg.with_weights(w0)
        result = run_warm(g, quartic_cost, _cfg(mode="warm", iterations=8, warm_split=0.5))
        assert result.phase_boundary == 4
        assert [entry.phase for entry in result.log] == ["regularize"] * 4 + ["descent"] * 8
        assert len(result.regularization_trace) == 5
        assert len(result.gossip_trace) == 4
        assert result.weights.sum() == pytest.approx(w0.sum(), rel=1e-9)
        assert result.weights.min() >= 0.1

    def test_remainder_budget_shares_iterations(self, rgg, quartic_cost):
        result = run_warm(rgg, quartic_cost, _cfg(mode="warm", iterations=8, warm_split=0.5, warm_descent="remainder"))
        assert result.phase_boundary == 4
        assert [entry.phase for entry in result.log] == ["regularize"] * 4 + ["descent"] * 4

    def test_unknown_descent_budget(self):
        with pytest.raises(InvalidParam):
            _cfg(mode="warm", warm_descent="double")

    def test_regularize_mode(self, rgg, quartic_cost):
        result = run(rgg, quartic_cost, _cfg(mode="regularize", iterations=3))
        assert result.phase_boundary == 3
        assert {entry.phase for entry in result.log} == {"regularize"}

    def test_split_rounds_up(self, rgg, quartic_cost):
        result = run_warm(rgg, quartic_cost, _cfg(mode="warm", iterations=5, warm_split=0.3))
        assert result.phase_boundary == 2


class TestCentralizedMode:
    def test_dopr_is_one(self, p3, quartic_cost):
        g = p3.with_weights(np.array([1.5, 0.5]))
        result = run(g, quartic_cost, _cfg(mode="centralized"))
        assert result.dopr == pytest.approx(1.0)
        assert result.Jd == pytest.approx(168, rel=1e-4)

    def test_dopr_against_baseline(self, rgg, quartic_cost):
        w0 = np.random.default_rng(5).uniform(0.3, 2.0, rgg.num_edges)
        g = rgg.with_weights(w0)
        cfg = _cfg(iterations=10, centralized_steps=200)
        baseline = run_centralized(g, quartic_cost, replace(cfg, mode="centralized"))
        result = run_cold(g, quartic_cost, cfg, baseline.Jd)
        assert result.Jstar == baseline.Jd
        assert result.dopr == pytest.approx((result.J0 - result.Jd) / (result.J0 - baseline.Jd))


@pytest.mark.slow
class TestDeskScale:
    """Acceptance runs on 150-vertex geometric graphs."""

    SEEDS = range(25)

    def _paired(self, quartic_cost):
        cold, warm = [], []
        for seed in self.SEEDS:
            g = generate_geometric(150, 0.16, seed=seed)
            cfg = Config.run_config(seed=seed, iterations=200, workers=8)
            Jstar = run_centralized(g, quartic_cost, replace(cfg, mode="centralized")).Jd
            cold.append(run_cold(g, quartic_cost, cfg, Jstar))
            warm.append(run_warm(g, quartic_cost, replace(cfg, mode="warm", warm_descent="matched"), Jstar))
        return cold, warm

    def test_feasibility_and_dopr(self, quartic_cost):
        cold, warm = self._paired(quartic_cost)
        for result in cold + warm:
            assert all(entry.budget_residual <= 1e-9 * result.weights.sum() for entry in result.log)
            assert result.weights.min() >= 0.1
        cold_mean = np.mean([r.dopr for r in cold])
        warm_mean = np.mean([r.dopr for r in warm])
        assert cold_mean >= 0.6
        assert warm_mean >= cold_mean
        assert np.mean([w.dopr >= c.dopr for w, c in zip(warm, cold)]) >= 0.8
