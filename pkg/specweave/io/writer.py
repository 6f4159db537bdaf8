"""Output writers for run results and traces."""

import csv
import json
import logging
from collections.abc import Iterable, Sequence
from dataclasses import asdict
from pathlib import Path
from typing import Any, Optional

from ..models import DescentRecord, RunConfig, RunResult

logger = logging.getLogger(__name__)


def _prepare(path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _json_float(x: Optional[float]) -> Any:
    if x is None:
        return None
    x = float(x)
    if x != x or x in (float("inf"), float("-inf")):
        return str(x)
    return x


def _num(x: float) -> str:
    return repr(float(x))


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a CSV file with a header row."""
    path = _prepare(path)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)
    logger.info(f"Wrote {path}")
    return path


def write_curve(result: RunResult, path: Path) -> Path:
    """Curve CSV: iter,J,phase."""
    return write_csv(path, ("iter", "J", "phase"), ((p.iter, _num(p.J), p.phase) for p in result.curve))


def write_run_log(result: RunResult, path: Path) -> Path:
    """Run log: one JSON object per outer iteration."""
    path = _prepare(path)
    with open(path, "w") as f:
        for entry in result.log:
            record = asdict(entry)
            record["J"] = _json_float(entry.J)
            f.write(json.dumps(record) + "\n")
    logger.info(f"Wrote {len(result.log)} run-log records to {path}")
    return path


def build_summary(result: RunResult, cfg: Optional[RunConfig] = None) -> dict[str, Any]:
    """Summary values of a run: J0, Jd, J*, DOPR and the run counters."""
    summary: dict[str, Any] = {
        "J0": _json_float(result.J0),
        "Jd": _json_float(result.Jd),
        "Jstar": _json_float(result.Jstar),
        "dopr": _json_float(result.dopr),
        "dopr_note": result.dopr_note,
        "iterations": len(result.log),
        "epochs": result.epochs,
        "phase_boundary": result.phase_boundary,
        "align_pass": result.align_pass,
        "align_fail": result.align_fail,
        "total_weight": float(result.weights.sum()),
        "min_weight": float(result.weights.min()) if len(result.weights) else None,
        "seconds": sum(result.wall_clock),
    }
    if result.descent_record is not None:
        descent: dict[str, Any] = {k: _json_float(v) for k, v in result.descent_record.summary().items()}
        descent["steps"] = len(result.descent_record.steps)
        summary["descent"] = descent
    if cfg is not None:
        summary["config"] = cfg.describe()
    return summary


def write_summary(
    result: RunResult,
    path: Path,
    cfg: Optional[RunConfig] = None,
    extra: Optional[dict[str, Any]] = None,
) -> Path:
    """Summary JSON; extra entries are merged over the built summary."""
    path = _prepare(path)
    summary = build_summary(result, cfg)
    summary.update(extra or {})
    with open(path, "w") as f:
        json.dump(summary, f, indent=2)
    logger.info(f"Wrote summary to {path}")
    return path


def write_descent_trace(record: DescentRecord, path: Path) -> Path:
    """Descent CSV: step,J,step_size,pg_norm (step 0 is the start point)."""
    rows = [(0, _num(record.J0), "", "")]
    rows += [(s.step, _num(s.J), _num(s.step_size), _num(s.pg_norm)) for s in record.steps]
    return write_csv(path, ("step", "J", "step_size", "pg_norm"), rows)


def write_regularization_trace(trace: list[tuple[int, float, float]], path: Path) -> Path:
    """iter,degree_dispersion,total_weight."""
    return write_csv(
        path, ("iter", "degree_dispersion", "total_weight"), ((i, _num(d), _num(w)) for i, d, w in trace)
    )


def write_gossip_trace(trace: list[tuple[int, float, float]], path: Path) -> Path:
    """round,znorm2,bound."""
    return write_csv(path, ("round", "znorm2", "bound"), ((i, _num(z), _num(b)) for i, z, b in trace))


def write_compare(rows: list[dict[str, Any]], path: Path) -> Path:
    """One row per (graph, mode): label,mode,seed,J0,Jd,Jstar,dopr."""
    header = ("label", "mode", "seed", "J0", "Jd", "Jstar", "dopr")
    return write_csv(
        path,
        header,
        ([("" if row.get(k) is None else row[k]) for k in header] for row in rows),
    )


def write_json(data: dict[str, Any], path: Path) -> Path:
    path = _prepare(path)
    with open(path, "w") as f:
        json.dump(data, f, indent=2)
    logger.info(f"Wrote {path}")
    return path
