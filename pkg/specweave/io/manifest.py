"""Experiment manifest loading."""

import logging
from pathlib import Path
from typing import Any

import yaml

from ..config import Config
from ..exceptions import ManifestError
from ..models import ExperimentManifest, ManifestEntry, RunConfig
from .formats import locate_config_file

logger = logging.getLogger(__name__)

_RUN_FIELDS = set(RunConfig.__dataclass_fields__) - {"descent", "mode"}
_GENERATE_KEYS = {"n", "radius", "seed"}


def _resolve(base: Path, value: Any) -> Path:
    path = Path(value)
    return path if path.is_absolute() else base / path


def _parse_entry(base: Path, index: int, raw: Any) -> ManifestEntry:
    if not isinstance(raw, dict):
        raise ManifestError(f"Entry {index} must be a mapping")
    if "cost" not in raw:
        raise ManifestError(f"Entry {index} has no cost file")
    if ("graph" in raw) == ("generate" in raw):
        raise ManifestError(f"Entry {index} needs exactly one of 'graph' or 'generate'")

    cost = _resolve(base, raw["cost"])
    if not cost.exists():
        raise ManifestError(f"Entry {index}: cost file {cost} not found")

    graph = None
    generate = None
    if "graph" in raw:
        graph = _resolve(base, raw["graph"])
        if not graph.exists():
            raise ManifestError(f"Entry {index}: graph file {graph} not found")
    else:
        generate = raw["generate"]
        if not isinstance(generate, dict) or not _GENERATE_KEYS <= generate.keys():
            raise ManifestError(f"Entry {index}: generate block needs n, radius and seed")

    overrides = raw.get("overrides", {}) or {}
    unknown = set(overrides) - _RUN_FIELDS
    if unknown:
        raise ManifestError(f"Entry {index}: unknown overrides {sorted(unknown)}")

    label = str(raw.get("label") or (graph.stem if graph else f"rgg_n{generate['n']}_s{generate['seed']}"))
    return ManifestEntry(label=label, cost=cost, graph=graph, generate=generate, overrides=overrides)


def load_manifest(path: Path) -> ExperimentManifest:
    """
    Load an experiment manifest from YAML.

    Relative paths inside the manifest resolve against the manifest's directory.
    A relative manifest path missing from the working directory is looked up
    under CONFIG_DIR.

    Args:
        path: Manifest file

    Returns:
        ExperimentManifest

    Raises:
        ManifestError: unreadable file, no entries, or an invalid entry
    """
    path = locate_config_file(path)
    if not path.exists():
        raise ManifestError(f"Manifest not found: {path}")

    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ManifestError(f"Failed to parse manifest {path}: {e}") from e

    if not isinstance(data, dict):
        raise ManifestError("Manifest must be a mapping")

    entries = data.get("entries") or []
    if not entries:
        raise ManifestError(f"Manifest {path} has no entries")

    base = path.parent
    modes = data.get("modes", ["cold", "warm"])
    bad = [m for m in modes if m not in ("cold", "warm", "centralized", "regularize")]
    if bad:
        raise ManifestError(f"Unknown modes {bad}")

    baseline = data.get("baseline", "compute")
    if baseline not in ("compute", "cached"):
        raise ManifestError(f"Unknown baseline policy '{baseline}'")

    manifest = ExperimentManifest(
        entries=[_parse_entry(base, i, raw) for i, raw in enumerate(entries)],
        output_dir=_resolve(base, data["output_dir"]) if data.get("output_dir") else Path(Config.OUTPUT_DIR),
        modes=list(modes),
        baseline=baseline,
    )
    logger.info(f"Loaded manifest with {len(manifest.entries)} entries, modes {manifest.modes}")
    return manifest
