"""Graph and cost file formats."""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from ..config import Config
from ..exceptions import InvalidParam
from ..models import CoefficientMatrix, WeightedGraph
from ..spectral import expand_eigendifference

logger = logging.getLogger(__name__)

CostSpec = dict[str, Any]


def locate_config_file(path: Path) -> Path:
    """The path itself, or CONFIG_DIR/path when only that one exists."""
    path = Path(path)
    if path.exists() or path.is_absolute():
        return path
    fallback = Config.CONFIG_DIR / path
    return fallback if fallback.exists() else path


def graph_to_dict(g: WeightedGraph, weights: Optional[np.ndarray] = None) -> dict[str, Any]:
    """JSON-ready form; Python floats serialise with repr, which round-trips exactly."""
    w = g.weights if weights is None else weights
    return {
        "n": int(g.n),
        "coords": g.coords.tolist() if g.coords is not None else None,
        "edges": [[int(u), int(v), float(x)] for (u, v), x in zip(g.edges.tolist(), w)],
    }


def graph_from_dict(data: dict[str, Any]) -> WeightedGraph:
    """
    Build a graph from its JSON form.

    Raises:
        InvalidParam: missing keys, malformed edges or an invalid graph
    """
    try:
        n = int(data["n"])
        rows = data["edges"]
        edges = [(int(u), int(v)) for u, v, _ in rows]
        weights = [float(w) for _, _, w in rows]
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidParam(f"Malformed graph data: {e}") from e

    if any(u >= v for u, v in edges):
        raise InvalidParam("Graph file edges must satisfy u < v")
    coords = data.get("coords")
    return WeightedGraph.from_edges(
        n, edges, weights, coords=np.array(coords, dtype=np.float64) if coords is not None else None
    )


def write_graph(g: WeightedGraph, path: Path, weights: Optional[np.ndarray] = None) -> Path:
    """Write a graph JSON file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(graph_to_dict(g, weights), f)
    logger.info(f"Wrote graph (n={g.n}, |E|={g.num_edges}) to {path}")
    return path


def read_graph(path: Path) -> WeightedGraph:
    """
    Read a graph JSON file.

    Raises:
        InvalidParam: unparsable or invalid contents
    """
    path = Path(path)
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidParam(f"Graph file {path} is not valid JSON: {e}") from e
    g = graph_from_dict(data)
    logger.info(f"Loaded graph from {path}: n={g.n}, |E|={g.num_edges}")
    return g


def cost_from_dict(data: CostSpec) -> CoefficientMatrix:
    """
    Coefficients from either {"monomial": [[...]]} or {"eigendiff": {"k": a_k}}.

    Raises:
        InvalidParam: neither or both keys present, or bad values
    """
    if not isinstance(data, dict) or len({"monomial", "eigendiff"} & data.keys()) != 1:
        raise InvalidParam("Cost must hold exactly one of 'monomial' or 'eigendiff'")
    try:
        if "monomial" in data:
            return CoefficientMatrix(np.array(data["monomial"], dtype=np.float64))
        return expand_eigendifference({int(k): v for k, v in data["eigendiff"].items()})
    except (TypeError, ValueError, AttributeError) as e:
        raise InvalidParam(f"Malformed cost data: {e}") from e


def read_cost(path: Path) -> tuple[CoefficientMatrix, CostSpec]:
    """
    Read a cost JSON file.

    A relative path missing from the working directory is looked up under
    CONFIG_DIR.

    Returns:
        (CoefficientMatrix, raw parsed contents)
    """
    path = locate_config_file(path)
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidParam(f"Cost file {path} is not valid JSON: {e}") from e
    C = cost_from_dict(data)
    logger.info(f"Loaded degree-{C.degree} cost from {path}")
    return C, data


def eigendiff_coefficients(spec: CostSpec) -> Optional[dict[int, float]]:
    """The eigen-difference series of a cost spec, or None for monomial costs."""
    if "eigendiff" not in spec:
        return None
    return {int(k): float(v) for k, v in spec["eigendiff"].items()}


def problem_digest(g: WeightedGraph, C: CoefficientMatrix, extra: Union[str, bytes] = b"") -> str:
    """SHA-256 over topology, weights, coefficients and any extra settings."""
    h = hashlib.sha256()
    h.update(np.int64(g.n).tobytes())
    h.update(np.ascontiguousarray(g.edges, dtype=np.int64).tobytes())
    h.update(np.ascontiguousarray(g.weights, dtype=np.float64).tobytes())
    h.update(np.ascontiguousarray(C.raw, dtype=np.float64).tobytes())
    h.update(extra.encode() if isinstance(extra, str) else extra)
    return h.hexdigest()
