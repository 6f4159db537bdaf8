"""Euclidean projection onto {w : Σw = budget, w >= floor}."""

import numpy as np

from ..exceptions import InfeasibleBudget


def project_simplex(y: np.ndarray, z: float) -> np.ndarray:
    """
    Projection of y onto the simplex scaled by z:
        P(y; z) = argmin_{x >= 0, sum(x) = z} ||x - y||^2

    Sort-based threshold.
    """
    u = np.sort(y)[::-1]
    cssv = np.cumsum(u) - z
    ind = np.arange(1, len(y) + 1)
    rho = np.count_nonzero(u - cssv / ind > 0)
    theta = cssv[rho - 1] / rho
    return np.maximum(y - theta, 0.0)


def is_feasible(w: np.ndarray, budget: float, floor: float, rtol: float = 1e-12) -> bool:
    """All entries at or above the floor and the sum on budget within rtol."""
    return bool(np.all(w >= floor) and abs(w.sum() - budget) <= rtol * max(abs(budget), 1.0))


def project_feasible(w: np.ndarray, budget: float, floor: float) -> np.ndarray:
    """
    Project weights onto the budget hyperplane intersected with the floor.

    Shift by the floor, project onto the scaled simplex, shift back. Feasible
    inputs are returned unchanged, which makes the projection idempotent.

    Args:
        w: Weights
        budget: Required sum
        floor: Minimum entry

    Returns:
        Projected copy of w

    Raises:
        InfeasibleBudget: budget < floor·len(w)
    """
    w = np.asarray(w, dtype=np.float64)
    slack = budget - floor * len(w)
    if slack < -1e-12 * max(abs(budget), 1.0):
        raise InfeasibleBudget(f"Budget {budget} below floor {floor} x {len(w)} edges")
    if is_feasible(w, budget, floor):
        return w.copy()
    if slack <= 0:
        return np.full(len(w), floor)
    return floor + project_simplex(w - floor, slack)


def project_blocks(w: np.ndarray, labels: np.ndarray, budgets: np.ndarray, floor: float) -> np.ndarray:
    """
    Project onto a product of feasible sets, one per block of entries.

    Entry i belongs to block labels[i]; block b keeps its sum at budgets[b] and
    every entry stays at or above floor. All blocks are projected at once: a
    sort by (block, value descending) and per-block running sums give every
    block's threshold in the same way as project_simplex.

    Args:
        w: Weights
        labels: Block index of each entry, in 0..len(budgets)−1
        budgets: Required sum of each block
        floor: Minimum entry

    Returns:
        Projected copy of w

    Raises:
        InfeasibleBudget: some budget is below floor times its block size
    """
    w = np.asarray(w, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    budgets = np.asarray(budgets, dtype=np.float64)
    counts = np.bincount(labels, minlength=len(budgets))
    slack = budgets - floor * counts
    if np.any(slack < -1e-12 * np.maximum(np.abs(budgets), 1.0)):
        raise InfeasibleBudget(f"A block budget is below floor {floor} x its size")
    slack = np.maximum(slack, 0.0)

    y = w - floor
    order = np.lexsort((-y, labels))
    ys, ls = y[order], labels[order]
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    csum = np.cumsum(ys)
    within = csum - np.concatenate(([0.0], csum))[starts][ls]
    rank = np.arange(len(ys)) - starts[ls] + 1
    positive = ys - (within - slack[ls]) / rank > 0
    rho = np.bincount(ls, weights=positive, minlength=len(budgets)).astype(np.int64)

    active = rho > 0
    theta = np.zeros(len(budgets))
    theta[active] = (within[starts[active] + rho[active] - 1] - slack[active]) / rho[active]
    out = np.maximum(y - theta[labels], 0.0) + floor
    out[~active[labels]] = floor
    return out
