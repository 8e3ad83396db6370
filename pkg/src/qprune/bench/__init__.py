"""Benchmark circuit generators and the noisy/pruned/baseline experiment."""

from .experiment import (
    CellReport,
    ExperimentConfig,
    ExperimentReport,
    ModeResult,
    run_cell,
    run_experiment,
)
from .generators import (
    AE_THETA0,
    FAMILIES,
    gen_amplitude_estimation,
    gen_qaoa,
    gen_qft,
    gen_random_parametric,
    generate,
)
from .report import emit_report, report_from_json, report_rows, report_to_csv, report_to_json

__all__ = [
    "AE_THETA0",
    "FAMILIES",
    "CellReport",
    "ExperimentConfig",
    "ExperimentReport",
    "ModeResult",
    "emit_report",
    "gen_amplitude_estimation",
    "gen_qaoa",
    "gen_qft",
    "gen_random_parametric",
    "generate",
    "report_from_json",
    "report_rows",
    "report_to_csv",
    "report_to_json",
    "run_cell",
    "run_experiment",
]
