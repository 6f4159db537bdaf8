"""Configuration management for specweave."""

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from .models import DescentParams, RunConfig

# Load .env file if present
load_dotenv()


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


class Config:
    """Application configuration."""

    # Directories
    OUTPUT_DIR: Path = Path(os.getenv("OUTPUT_DIR", "output"))
    CACHE_DIR: Path = Path(os.getenv("CACHE_DIR", "cache"))
    CONFIG_DIR: Path = Path(os.getenv("CONFIG_DIR", "config"))

    # Parallelism
    THREADS: int = int(os.getenv("SPECWEAVE_THREADS", str(os.cpu_count() or 1)))
    SCHEDULING: str = os.getenv("SCHEDULING", "deterministic")  # deterministic|free

    # Graph generation
    MAX_GRAPH_RETRIES: int = int(os.getenv("MAX_GRAPH_RETRIES", "100"))
    MAX_RESAMPLE: int = int(os.getenv("MAX_RESAMPLE", "50"))

    # Distributed runs
    WORKERS: int = int(os.getenv("WORKERS", "8"))
    ITERATIONS: int = int(os.getenv("ITERATIONS", "200"))
    WARM_SPLIT: float = float(os.getenv("WARM_SPLIT", "0.5"))
    WARM_DESCENT: str = os.getenv("WARM_DESCENT", "matched")  # matched|remainder
    GOSSIP_ROUNDS: int = int(os.getenv("GOSSIP_ROUNDS", "1000"))
    GOSSIP_REINIT: bool = _env_bool("GOSSIP_REINIT", "true")
    TAU_DOM: float = float(os.getenv("TAU_DOM", "10"))
    TAU_AXIS: float = float(os.getenv("TAU_AXIS", "0.95"))
    INNER_STEPS: int = int(os.getenv("INNER_STEPS", "5"))
    EVAL_EVERY: int = int(os.getenv("EVAL_EVERY", "1"))

    # Descent
    WEIGHT_FLOOR: float = float(os.getenv("WEIGHT_FLOOR", "0.1"))
    STEP_SIZE: float = float(os.getenv("STEP_SIZE", "1.0"))
    BACKTRACK: float = float(os.getenv("BACKTRACK", "0.5"))
    ARMIJO_C1: float = float(os.getenv("ARMIJO_C1", "1e-4"))
    PG_TOL: float = float(os.getenv("PG_TOL", "1e-8"))
    CENTRALIZED_STEPS: int = int(os.getenv("CENTRALIZED_STEPS", "500"))

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    @classmethod
    def ensure_dirs(cls):
        """Ensure output and cache directories exist."""
        cls.OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
        cls.CACHE_DIR.mkdir(parents=True, exist_ok=True)

    @classmethod
    def descent_params(cls, max_steps: Optional[int] = None, **overrides) -> DescentParams:
        """
        Build descent parameters from the current settings.

        Args:
            max_steps: Step cap (defaults to the inner-step limit)
            **overrides: Any DescentParams field

        Returns:
            DescentParams instance
        """
        values = {
            "max_steps": max_steps if max_steps is not None else cls.INNER_STEPS,
            "step_size": cls.STEP_SIZE,
            "backtrack": cls.BACKTRACK,
            "armijo_c1": cls.ARMIJO_C1,
            "floor": cls.WEIGHT_FLOOR,
            "pg_tol": cls.PG_TOL,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return DescentParams(**values)

    @classmethod
    def run_config(cls, **overrides) -> RunConfig:
        """
        Build a run configuration from the current settings.

        Args:
            **overrides: Any RunConfig field; None values are ignored

        Returns:
            RunConfig instance
        """
        values = {
            "mode": "cold",
            "workers": cls.WORKERS,
            "iterations": cls.ITERATIONS,
            "warm_split": cls.WARM_SPLIT,
            "warm_descent": cls.WARM_DESCENT,
            "gossip_rounds": cls.GOSSIP_ROUNDS,
            "gossip_reinit": cls.GOSSIP_REINIT,
            "tau_dom": cls.TAU_DOM,
            "tau_axis": cls.TAU_AXIS,
            "inner_steps": cls.INNER_STEPS,
            "eval_every": cls.EVAL_EVERY,
            "seed": 0,
            "max_resample": cls.MAX_RESAMPLE,
            "scheduling": cls.SCHEDULING,
            "threads": cls.THREADS,
            "centralized_steps": cls.CENTRALIZED_STEPS,
            "descent": cls.descent_params(),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig(**values)
