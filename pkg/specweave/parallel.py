"""Fork-join execution of per-subgraph workers."""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")


def run_workers(
    tasks: Sequence[Callable[[], T]],
    threads: int = 1,
    scheduling: str = "deterministic",
) -> list[T]:
    """
    Run independent worker tasks and collect their results.

    In deterministic scheduling results come back in task order; in free
    scheduling they come back in completion order. Workers must only read
    shared state, so either order yields the same commits.

    Args:
        tasks: Zero-argument callables
        threads: Pool size cap (1 runs inline)
        scheduling: deterministic|free

    Returns:
        List of task results
    """
    if threads <= 1 or len(tasks) <= 1:
        return [task() for task in tasks]

    with ThreadPoolExecutor(max_workers=min(threads, len(tasks))) as pool:
        futures = [pool.submit(task) for task in tasks]
        if scheduling == "free":
            return [future.result() for future in as_completed(futures)]
        return [future.result() for future in futures]
