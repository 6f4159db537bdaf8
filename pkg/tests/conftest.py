"""Shared fixtures: small named graphs, the experiment cost matrix and seeded random graphs."""

import numpy as np
import pytest

from specweave.config import Config
from specweave.graph import generate_geometric
from specweave.models import WeightedGraph
from specweave.spectral import expand_eigendifference


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run desk-scale acceptance tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def k2():
    return WeightedGraph.from_edges(2, [(0, 1)])


@pytest.fixture
def k3():
    return WeightedGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def p3():
    return WeightedGraph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def p5():
    return WeightedGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])


@pytest.fixture
def star():
    """Center 0 with leaves 1 and 2."""
    return WeightedGraph.from_edges(3, [(0, 1), (0, 2)])


@pytest.fixture
def quartic_cost():
    """h(x) = x⁴ − x² expanded into monomial coefficients."""
    return expand_eigendifference({4: 1, 2: -1})


@pytest.fixture
def rgg():
    return generate_geometric(30, 0.35, seed=3)


@pytest.fixture
def random_graphs():
    return [generate_geometric(int(n), 0.4, seed=s) for s, n in enumerate([12, 15, 18, 20] * 3)]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def isolated_dirs(tmp_path, monkeypatch):
    """Point OUTPUT_DIR and CACHE_DIR at a temporary directory."""
    monkeypatch.setattr(Config, "OUTPUT_DIR", tmp_path / "output")
    monkeypatch.setattr(Config, "CACHE_DIR", tmp_path / "cache")
    monkeypatch.setattr(Config, "THREADS", 1)
    return tmp_path
