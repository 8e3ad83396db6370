"""
A small experiment sweep
========================

Runs QFT and amplitude estimation at a few widths, adds the angle-only
baseline for every degree, and prints the report as CSV.  Widths above 6
use the trajectory engine here so the script stays quick.
"""

import sys

from qprune.bench import ExperimentConfig, report_to_csv, run_experiment

config = ExperimentConfig(
    families=["qft", "amplitude_estimation"],
    widths=[4, 6, 8],
    shots=4000,
    seeds=[0],
    baseline_ks=[1, 2, 4],
    dm_max_qubits=6,
)
report = run_experiment(config)

for cell in report.cells:
    best = cell.best_baseline
    print(f"{cell.family:>21} n={cell.width}: CX -{100 * cell.rel_cx_reduction:4.1f}%  "
          f"fidelity {100 * cell.rel_fid_improvement:+5.1f}%  "
          f"(best baseline k={best.k}: {best.fidelity:.3f})", file=sys.stderr)

sys.stdout.write(report_to_csv(report))
