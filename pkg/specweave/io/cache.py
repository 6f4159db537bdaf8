"""Cache of centralized baselines."""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Optional

import numpy as np

from ..config import Config
from ..models import CoefficientMatrix, DescentParams, WeightedGraph
from .formats import problem_digest

logger = logging.getLogger(__name__)


class BaselineCache:
    """Stores centralized J* and its weights, keyed by a digest of graph, cost and solver settings."""

    def __init__(self, cache_dir: Optional[Path] = None):
        """
        Initialize baseline cache.

        Args:
            cache_dir: Directory for cache files (uses config default if None)
        """
        self.cache_dir = Path(cache_dir or Config.CACHE_DIR)
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    def key(self, g: WeightedGraph, C: CoefficientMatrix, params: DescentParams) -> str:
        return problem_digest(g, C, repr(params))

    def get_cache_path(self, key: str) -> Path:
        return self.cache_dir / f"baseline_{key[:32]}.json"

    def load(self, g: WeightedGraph, C: CoefficientMatrix, params: DescentParams) -> Optional[dict[str, Any]]:
        """
        Load a cached baseline.

        Returns:
            {"Jstar": float, "weights": ndarray, ...} or None if absent or unreadable
        """
        key = self.key(g, C, params)
        cache_path = self.get_cache_path(key)

        if not cache_path.exists():
            logger.info(f"No cached baseline at {cache_path}")
            return None

        try:
            with open(cache_path, "r") as f:
                data = json.load(f)
            if data.get("key") != key:
                logger.warning(f"Cache key mismatch in {cache_path}, ignoring")
                return None
            data["weights"] = np.array(data["weights"], dtype=np.float64)
            logger.info(f"Loaded baseline J*={data['Jstar']:.6g} from {cache_path}")
            return data

        except Exception as e:
            logger.error(f"Failed to load baseline from {cache_path}: {e}")
            return None

    def save(
        self,
        g: WeightedGraph,
        C: CoefficientMatrix,
        params: DescentParams,
        Jstar: float,
        weights: np.ndarray,
    ) -> Path:
        """Store a baseline and return the file path."""
        key = self.key(g, C, params)
        cache_path = self.get_cache_path(key)
        data = {
            "key": key,
            "cached_at": datetime.now().isoformat(),
            "Jstar": float(Jstar),
            "weights": [float(x) for x in weights],
        }
        with open(cache_path, "w") as f:
            json.dump(data, f)
        logger.info(f"Saved baseline J*={Jstar:.6g} to {cache_path}")
        return cache_path

    def clear(self, g: WeightedGraph, C: CoefficientMatrix, params: DescentParams):
        """Remove one cached baseline if present."""
        cache_path = self.get_cache_path(self.key(g, C, params))
        if cache_path.exists():
            cache_path.unlink()
            logger.info(f"Cleared baseline at {cache_path}")
