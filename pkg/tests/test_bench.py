import csv
import io
import json
import math
from dataclasses import replace

import pytest

from qprune.bench import (
    AE_THETA0, ExperimentConfig, ExperimentReport, emit_report, gen_amplitude_estimation, gen_qaoa,
    gen_qft, generate, report_from_json, report_to_csv, report_to_json, run_cell, run_experiment,
)
from qprune.bench.report import CSV_COLUMNS
from qprune.circuit import Gate, GateKind, count_gates
from qprune.compiler import prunable_indices


# -- generators --------------------------------------------------------------

def test_qft2_exact():
    assert gen_qft(2).gates == (
        Gate(GateKind.H, (0,)),
        Gate(GateKind.CP, (1, 0), math.pi / 2),
        Gate(GateKind.H, (1,)),
        Gate(GateKind.SWAP, (0, 1)),
    )


def test_qft4_angles():
    angles = sorted(g.angle for g in gen_qft(4).gates if g.kind is GateKind.CP)
    assert angles == pytest.approx([math.pi / 8] + [math.pi / 4] * 2 + [math.pi / 2] * 3)


def test_qft_entangled_prefix():
    plain, ent = gen_qft(3), gen_qft(3, entangled=True)
    extra = ent.gates[: len(ent.gates) - len(plain.gates)]
    assert [g.kind for g in extra] == [GateKind.H, GateKind.CX, GateKind.CX]
    assert ent.gates[len(extra):] == plain.gates


def test_amplitude_estimation_structure():
    c = gen_amplitude_estimation(3)
    cry = [g.angle for g in c.gates if g.kind is GateKind.CRY]
    assert cry == pytest.approx([AE_THETA0, 2 * AE_THETA0])
    for n in (3, 5, 8):
        m = n - 1
        c = gen_amplitude_estimation(n)
        assert len(prunable_indices(c)) == m + m * (m - 1) // 2


def test_qaoa_shapes_and_seeds():
    assert count_gates(gen_qaoa(5, 1, seed=3, portfolio=True), GateKind.RZZ) == 10
    assert count_gates(gen_qaoa(6, 1, seed=3), GateKind.RZZ) == 9
    assert count_gates(gen_qaoa(6, 2, seed=3), GateKind.RZZ) == 18
    assert gen_qaoa(7, 2, seed=5) == gen_qaoa(7, 2, seed=5)
    assert gen_qaoa(8, 1, seed=5) != gen_qaoa(8, 1, seed=6)


def test_portfolio_weights_small():
    c = gen_qaoa(6, 1, seed=0, portfolio=True)
    gammas = {g.angle for g in c.gates if g.kind is GateKind.RZZ}
    assert len(gammas) == 15


@pytest.mark.parametrize("family, n", [("qft", 1), ("amplitude_estimation", 2), ("qaoa", 2),
                                       ("nope", 5)])
def test_generator_errors(family, n):
    with pytest.raises(ValueError):
        generate(family, n)


# -- experiment --------------------------------------------------------------

def test_noiseless_config_gives_unit_fidelity():
    cfg = ExperimentConfig(families=["qft", "amplitude_estimation"], widths=[4, 6], p2=0.0,
                           relaxation=False)
    report = run_experiment(cfg)
    for cell in report.cells:
        assert cell.pruned.gates_pruned == 0
        assert cell.noisy.fidelity == pytest.approx(1.0, abs=1e-9)
        assert cell.pruned.fidelity == pytest.approx(1.0, abs=1e-9)


def test_qft4_cell():
    cell = run_cell(ExperimentConfig(families=["qft"], widths=[4], baseline_ks=[0]), "qft", 4, 0)
    assert cell.topology == "2x2" and cell.engine == "density"
    assert cell.pruned.cx <= cell.noisy.cx
    (b0,) = cell.baselines
    assert (b0.cx, b0.gates, b0.fidelity) == (cell.noisy.cx, cell.noisy.gates, cell.noisy.fidelity)


def test_report_invariants_and_trajectory_engine():
    cfg = ExperimentConfig(families=["qft"], widths=[6, 8], dm_max_qubits=6, shots=400,
                           seeds=[0, 1], baseline_ks="all")
    report = run_experiment(cfg)
    assert [c.engine for c in report.cells] == ["density"] * 2 + ["trajectories"] * 2
    for cell in report.cells:
        assert cell.pruned.cx <= cell.noisy.cx
        if cell.pruned.gates_pruned:
            assert cell.pruned.cx < cell.noisy.cx
        assert cell.rel_cx_reduction == pytest.approx((cell.noisy.cx - cell.pruned.cx) / cell.noisy.cx)
        assert len(cell.baselines) == len(prunable_indices(gen_qft(cell.width))) + 1
        for r in cell.modes():
            assert 0.0 <= r.fidelity <= 1.0 + 3 * r.stderr
    # trajectory cells differ across seeds, density cells do not
    assert report.cells[0].noisy.fidelity == report.cells[1].noisy.fidelity
    assert report.cells[2].noisy.fidelity != report.cells[3].noisy.fidelity


def test_identical_circuits_share_estimates():
    cfg = ExperimentConfig(families=["amplitude_estimation"], widths=[6], dm_max_qubits=4,
                           shots=300, baseline_ks=[0])
    cell = run_experiment(cfg).cells[0]
    assert cell.pruned.gates_pruned == 0
    assert cell.pruned.fidelity == cell.noisy.fidelity == cell.baselines[0].fidelity


def test_config_validation_and_aliases(tmp_path):
    cfg = ExperimentConfig.from_dict({"family": "qaoa", "widths": [6], "seed": 4})
    assert cfg.families == ["qaoa"] and cfg.seeds == [4]
    path = tmp_path / "exp.json"
    path.write_text(json.dumps({"families": ["qft"], "widths": [4], "topology": "grid:2x2"}))
    assert ExperimentConfig.load(path).topology == "grid:2x2"
    with pytest.raises(ValueError):
        ExperimentConfig(families=["bogus"], widths=[4])
    with pytest.raises(ValueError):
        ExperimentConfig(families=["qft"], widths=[30])
    with pytest.raises(ValueError):
        ExperimentConfig(families=["qft"], widths=[4], baseline_ks="some")
    with pytest.raises(TypeError):
        ExperimentConfig.from_dict({"families": ["qft"], "widths": [4], "colour": 1})


# -- reports -----------------------------------------------------------------

@pytest.fixture(scope="module")
def small_report():
    return run_experiment(ExperimentConfig(families=["qft"], widths=[4, 6], baseline_ks=[1]))


def test_csv_schema(small_report):
    text = report_to_csv(small_report)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 2 * 3
    assert {"gates_pruned", "swaps_inserted"} <= set(CSV_COLUMNS)
    assert [r["mode"] for r in rows[:3]] == ["noisy", "pruned", "baseline"]
    for r in rows:
        for col in ("fidelity", "p2"):
            digits = r[col].lstrip("-").replace(".", "").split("e")[0].lstrip("0")
            assert len(digits) <= 6


def test_smallest_csv(small_report):
    one = ExperimentReport([replace(small_report.cells[0], baselines=[])])
    lines = report_to_csv(one).splitlines()
    assert len(lines) == 1 + 2  # header, noisy, pruned


def test_json_round_trip(small_report, tmp_path):
    assert report_from_json(report_to_json(small_report)) == small_report
    path = emit_report(small_report, tmp_path / "r.json")
    assert report_from_json(path.read_text()) == small_report
    path = emit_report(small_report, tmp_path / "r.csv")
    assert path.read_text() == report_to_csv(small_report)
    with pytest.raises(ValueError):
        emit_report(small_report, tmp_path / "r.txt", "xml")
