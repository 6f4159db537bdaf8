"""Main application logic for specweave."""

import json
import logging
from dataclasses import replace
from pathlib import Path
from statistics import mean
from typing import Any, Optional

from .config import Config
from .exceptions import InvalidParam, ManifestError
from .gossip import (
    degree_dispersion,
    series_from_eigendifference,
    surrogate_bound_eval,
    surrogate_degree_objective,
)
from .graph import generate_geometric, graph_stats
from .io import (
    BaselineCache,
    build_summary,
    eigendiff_coefficients,
    load_manifest,
    read_cost,
    read_graph,
    write_compare,
    write_curve,
    write_descent_trace,
    write_gossip_trace,
    write_graph,
    write_json,
    write_regularization_trace,
    write_run_log,
    write_summary,
)
from .models import CoefficientMatrix, CurvePoint, RunConfig, RunResult, WeightedGraph
from .orchestration import attach_baseline, run, run_centralized
from .spectral import cost_trace_form

logger = logging.getLogger(__name__)


def generate(n: int, radius: float, seed: int, out: Path) -> dict[str, float]:
    """
    Generate a connected random geometric graph and write it.

    Args:
        n: Vertex count
        radius: Connection radius
        seed: Generator seed
        out: Output graph file

    Returns:
        graph_stats of the generated graph
    """
    g = generate_geometric(n, radius, seed)
    write_graph(g, out)
    stats = graph_stats(g)
    logger.info(f"Generated graph: {stats}")
    return stats


def compute_baseline(
    g: WeightedGraph,
    C: CoefficientMatrix,
    cfg: RunConfig,
    cache: Optional[BaselineCache] = None,
) -> RunResult:
    """
    Centralized baseline run, served from the cache when one is given and holds it.

    Returns:
        RunResult whose Jd is J*
    """
    params = replace(cfg.descent, max_steps=cfg.centralized_steps)
    if cache is not None:
        cached = cache.load(g, C, params)
        if cached is not None:
            J0 = cost_trace_form(g, C)
            result = RunResult(weights=cached["weights"], J0=J0)
            result.curve = [
                CurvePoint(iter=0, J=J0, phase="initial"),
                CurvePoint(iter=1, J=cached["Jstar"], phase="centralized"),
            ]
            return attach_baseline(result, cached["Jstar"])

    result = run_centralized(g, C, replace(cfg, mode="centralized"))
    if cache is not None:
        cache.save(g, C, params, result.Jd, result.weights)
    logger.info(f"Baseline J* = {result.Jd:.6g}")
    return result


def _read_baseline_file(path: Path) -> float:
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidParam(f"Baseline file {path} is not valid JSON: {e}") from e
    try:
        return float(data["Jstar"])
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidParam(f"Baseline file {path} has no numeric 'Jstar': {e}") from e


def write_run_outputs(
    g: WeightedGraph,
    result: RunResult,
    cfg: RunConfig,
    prefix: Path,
    extra: Optional[dict[str, Any]] = None,
) -> dict[str, Path]:
    """Write graph, curve, run log, summary and any regularization traces under prefix."""
    prefix = Path(prefix)
    paths = {
        "graph": write_graph(g, prefix.with_name(f"{prefix.name}_graph.json"), result.weights),
        "curve": write_curve(result, prefix.with_name(f"{prefix.name}_curve.csv")),
        "log": write_run_log(result, prefix.with_name(f"{prefix.name}_log.jsonl")),
        "summary": write_summary(result, prefix.with_name(f"{prefix.name}_summary.json"), cfg, extra),
    }
    if result.regularization_trace:
        paths["regularization"] = write_regularization_trace(
            result.regularization_trace, prefix.with_name(f"{prefix.name}_regularization.csv")
        )
    if result.gossip_trace:
        paths["gossip"] = write_gossip_trace(result.gossip_trace, prefix.with_name(f"{prefix.name}_gossip.csv"))
    if result.descent_record is not None:
        paths["descent"] = write_descent_trace(
            result.descent_record, prefix.with_name(f"{prefix.name}_descent.csv")
        )
    return paths


def degree_surrogate_report(g: WeightedGraph, result: RunResult, spec: dict[str, Any]) -> dict[str, Any]:
    """Degree surrogate objective before and after a run, for eigen-difference costs."""
    a = eigendiff_coefficients(spec)
    if a is None:
        return {}
    series = series_from_eigendifference(a)
    return {
        "surrogate_objective": {
            "initial": surrogate_degree_objective(g, series),
            "final": surrogate_degree_objective(g.with_weights(result.weights), series),
        }
    }


def optimize(
    graph_path: Path,
    cost_path: Path,
    mode: str = "cold",
    iterations: Optional[int] = None,
    workers: Optional[int] = None,
    seed: int = 0,
    out_prefix: Optional[Path] = None,
    baseline: Optional[str] = None,
    **overrides: Any,
) -> tuple[dict[str, Any], dict[str, Path]]:
    """
    Run one optimization and write its result files.

    Args:
        graph_path: Graph JSON
        cost_path: Cost JSON
        mode: cold|warm|centralized|regularize
        iterations: Outer iterations (config default if None)
        workers: Parallel workers (config default if None)
        seed: Seed for every random draw of the run
        out_prefix: Output path prefix (OUTPUT_DIR/<graph stem>_<mode> if None)
        baseline: None, "compute", or a JSON file holding {"Jstar": ...}
        **overrides: Further RunConfig fields

    Returns:
        (summary dict, written paths)
    """
    g = read_graph(graph_path)
    C, spec = read_cost(cost_path)
    cfg = Config.run_config(mode=mode, iterations=iterations, workers=workers, seed=seed, **overrides)
    logger.info(f"Run config: {cfg.describe()}, descent: {cfg.descent}")

    Jstar = None
    if baseline == "compute" and mode != "centralized":
        Jstar = compute_baseline(g, C, cfg, BaselineCache()).Jd
    elif baseline and baseline != "compute":
        Jstar = _read_baseline_file(Path(baseline))

    result = run(g, C, cfg, Jstar)
    extra = degree_surrogate_report(g, result, spec) if mode in ("warm", "regularize") else {}

    if out_prefix is None:
        Config.ensure_dirs()
        out_prefix = Config.OUTPUT_DIR / f"{Path(graph_path).stem}_{mode}"
    paths = write_run_outputs(g, result, cfg, Path(out_prefix), extra)
    return {**build_summary(result, cfg), **extra}, paths


def _load_entry_graph(entry) -> WeightedGraph:
    if entry.graph is not None:
        return read_graph(entry.graph)
    spec = entry.generate
    return generate_geometric(int(spec["n"]), float(spec["radius"]), int(spec["seed"]))


def compare(manifest_path: Path, modes: Optional[list[str]] = None) -> tuple[dict[str, Any], Path]:
    """
    Run every manifest entry under each mode and tabulate DOPR against the centralized baseline.

    Args:
        manifest_path: YAML manifest
        modes: Mode list overriding the manifest's

    Returns:
        (paired summary, path of the comparison CSV)
    """
    manifest = load_manifest(manifest_path)
    modes = modes or manifest.modes
    if not modes:
        raise ManifestError("No modes to compare")
    cache = BaselineCache() if manifest.baseline == "cached" else None
    out_dir = Path(manifest.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    rows: list[dict[str, Any]] = []
    by_label: dict[str, dict[str, Optional[float]]] = {}
    for entry in manifest.entries:
        g = _load_entry_graph(entry)
        C, _ = read_cost(entry.cost)
        base_cfg = Config.run_config(**entry.overrides)
        logger.info(f"Entry {entry.label}: n={g.n}, |E|={g.num_edges}, seed={base_cfg.seed}")
        baseline = compute_baseline(g, C, base_cfg, cache)

        for mode in modes:
            if mode == "centralized":
                result = baseline
            else:
                result = run(g, C, replace(base_cfg, mode=mode), baseline.Jd)
            write_curve(result, out_dir / f"{entry.label}_{mode}_curve.csv")
            rows.append(
                {
                    "label": entry.label,
                    "mode": mode,
                    "seed": base_cfg.seed,
                    "J0": result.J0,
                    "Jd": result.Jd,
                    "Jstar": result.Jstar,
                    "dopr": result.dopr,
                }
            )
            by_label.setdefault(entry.label, {})[mode] = result.dopr
            logger.info(f"{entry.label} [{mode}]: DOPR {result.dopr}")

    summary = summarize_comparison(rows, by_label)
    csv_path = write_compare(rows, out_dir / "compare.csv")
    write_json(summary, out_dir / "compare_summary.json")
    return summary, csv_path


def summarize_comparison(
    rows: list[dict[str, Any]], by_label: dict[str, dict[str, Optional[float]]]
) -> dict[str, Any]:
    """Mean DOPR per mode and the fraction of graphs where warm reaches at least cold."""
    summary: dict[str, Any] = {"entries": len(by_label), "mean_dopr": {}}
    for mode in sorted({row["mode"] for row in rows}):
        values = [row["dopr"] for row in rows if row["mode"] == mode and row["dopr"] is not None]
        summary["mean_dopr"][mode] = mean(values) if values else None

    paired = [
        (d["warm"], d["cold"])
        for d in by_label.values()
        if d.get("warm") is not None and d.get("cold") is not None
    ]
    summary["warm_ge_cold"] = sum(w >= c for w, c in paired) / len(paired) if paired else None
    summary["paired"] = len(paired)
    return summary


def evaluate(graph_path: Path, cost_path: Path) -> dict[str, Any]:
    """
    Report graph statistics, J and the degree surrogate of a weighted graph.

    Returns:
        Dict of reported values
    """
    g = read_graph(graph_path)
    C, spec = read_cost(cost_path)
    report: dict[str, Any] = dict(graph_stats(g))
    report["J"] = cost_trace_form(g, C)
    report["degree_dispersion"] = degree_dispersion(g)

    a = eigendiff_coefficients(spec)
    if a is not None:
        series = series_from_eigendifference(a)
        bound = surrogate_bound_eval(g, series)
        report["surrogate_objective"] = surrogate_degree_objective(g, series)
        report["bound_lhs"] = bound.lhs
        report["bound_rhs"] = bound.rhs
        report["hypothesis_violated"] = bound.hypothesis_violated
    return report
