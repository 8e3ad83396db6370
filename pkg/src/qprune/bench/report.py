"""CSV and JSON serialisation of experiment reports."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .experiment import CellReport, ExperimentReport, ModeResult

CSV_COLUMNS = (
    "family", "width", "seed", "mode", "k", "topology", "engine", "shots", "p2", "t1_s",
    "cx", "gates", "swaps_inserted", "gates_pruned", "fidelity", "fidelity_stderr",
    "rel_cx_reduction", "rel_fid_improvement",
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _row(cell: CellReport, r: ModeResult) -> dict:
    base = cell.noisy
    return {
        "family": cell.family, "width": cell.width, "seed": cell.seed, "mode": r.mode, "k": r.k,
        "topology": cell.topology, "engine": cell.engine, "shots": cell.shots, "p2": cell.p2,
        "t1_s": cell.t1_s, "cx": r.cx, "gates": r.gates, "swaps_inserted": r.swaps_inserted,
        "gates_pruned": r.gates_pruned, "fidelity": r.fidelity, "fidelity_stderr": r.stderr,
        "rel_cx_reduction": float((base.cx - r.cx) / base.cx) if base.cx else 0.0,
        "rel_fid_improvement": float((r.fidelity - base.fidelity) / base.fidelity),
    }


def report_rows(report: ExperimentReport) -> list[dict]:
    """One flat row per (family, width, seed, mode); improvements are relative to Noisy."""
    return [_row(cell, r) for cell in report.cells for r in cell.modes()]


def report_to_csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report_rows(report):
        writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def report_to_json(report: ExperimentReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def report_from_json(text: str) -> ExperimentReport:
    return ExperimentReport.from_dict(json.loads(text))


def emit_report(report: ExperimentReport, path: str | Path, fmt: str | None = None) -> Path:
    """Write ``report`` as CSV or JSON; the format defaults to the file suffix."""
    path = Path(path)
    fmt = fmt or ("json" if path.suffix.lower() == ".json" else "csv")
    if fmt == "csv":
        text = report_to_csv(report)
    elif fmt == "json":
        text = report_to_json(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    path.write_text(text)
    return path
