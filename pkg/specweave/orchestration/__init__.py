"""End-to-end distributed pipelines."""

from .pipeline import attach_baseline, optimize_subgraph, run, run_centralized, run_cold, run_warm

__all__ = ["attach_baseline", "optimize_subgraph", "run", "run_centralized", "run_cold", "run_warm"]
