"""Command-line entry point: ``qprune generate | compile | simulate | bench``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bench import FAMILIES, ExperimentConfig, emit_report, generate, run_experiment
from .compiler import compile_pipeline
from .fidelity import DEFAULT_ROUTING_OVERHEAD, CostModelParams, p2_heuristic
from .qasm import QasmError, emit_qasm, parse_qasm
from .simulator import (
    MAX_DENSITY_QUBITS, NoiseModel, simulate_ideal, simulate_noisy_dm, simulate_noisy_traj,
    state_fidelity,
)
from .topology import grid_for_width, topology_from_config


def _read_circuit(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_qasm(text)


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_generate(args: argparse.Namespace) -> int:
    circuit = generate(args.family, args.n, seed=args.seed, layers=args.layers)
    _write_text(args.output, emit_qasm(circuit))
    return 0


def cmd_compile(args: argparse.Namespace) -> int:
    circuit = _read_circuit(args.input)
    if args.topology:
        spec = args.topology
        topo = topology_from_config(json.loads(spec) if spec.lstrip().startswith("{") else spec)
    else:
        topo = grid_for_width(circuit.num_qubits)
    if topo.num_physical < circuit.num_qubits:
        raise ValueError(f"topology has {topo.num_physical} qubits, circuit needs {circuit.num_qubits}")
    wide = circuit.widen(topo.num_physical)
    p2 = args.p2
    if p2 is None:
        noisy = compile_pipeline(wide, topo, CostModelParams(0.0, args.routing_overhead), "noisy")
        p2 = p2_heuristic(len(noisy.compiled), circuit.num_qubits)
    params = CostModelParams(p2, args.routing_overhead)
    if args.baseline_k is not None:
        result = compile_pipeline(wide, topo, params, "baseline", baseline_k=args.baseline_k)
    else:
        result = compile_pipeline(wide, topo, params, "pruned" if args.prune else "noisy")
    _write_text(args.output, emit_qasm(result.compiled))
    if args.stats:
        stats = {**result.stats(), "p2": p2, "routing_overhead": args.routing_overhead,
                 "topology": topo.to_config()}
        _write_text(args.stats, json.dumps(stats, indent=2) + "\n")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    circuit = _read_circuit(args.input)
    noise = NoiseModel.load(args.noise) if args.noise else NoiseModel(0.0)
    layout = None
    if args.reference:
        ref = _read_circuit(args.reference).widen(circuit.num_qubits)
        if args.layout:
            layout = json.loads(Path(args.layout).read_text())["final_layout"]
    else:
        ref = circuit
    ideal = simulate_ideal(ref)
    engine = args.engine
    if engine == "auto":
        engine = "density" if circuit.num_qubits <= MAX_DENSITY_QUBITS else "trajectories"
    if engine == "density":
        fid = state_fidelity(ideal, simulate_noisy_dm(circuit, noise), layout)
        out = {"engine": engine, "fidelity": fid, "stderr": 0.0}
    else:
        est = simulate_noisy_traj(circuit, noise, args.shots, args.seed, reference=ideal,
                                  final_layout=layout)
        out = {"engine": engine, "fidelity": est.mean, "stderr": est.stderr, "shots": est.shots,
               "seed": args.seed}
    _write_text(args.output, json.dumps(out, indent=2) + "\n")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    config = ExperimentConfig.load(args.config)
    report = run_experiment(config)
    if args.output:
        emit_report(report, args.output, args.format)
    else:
        from .bench.report import report_to_csv, report_to_json

        sys.stdout.write(report_to_json(report) if args.format == "json" else report_to_csv(report))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qprune", description="Routing-aware pruning of small-angle gates.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a benchmark circuit as OpenQASM 2")
    g.add_argument("--family", choices=FAMILIES, required=True)
    g.add_argument("--n", type=int, required=True, help="number of qubits")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--layers", type=int, default=1, help="QAOA layers")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("compile", help="route and lower a circuit to {cx, id, rz, sx, x}")
    c.add_argument("-i", "--input", required=True, help="OpenQASM 2 file, or - for stdin")
    c.add_argument("-o", "--output")
    c.add_argument("--topology", help="grid:RxC or a JSON topology spec (default: grid for the width)")
    c.add_argument("--prune", action="store_true", help="drop gates whose SWAP cost outweighs them")
    c.add_argument("--baseline-k", type=int, help="instead remove the k smallest-angle gates")
    c.add_argument("--p2", type=float, help="two-qubit error rate (default: gate-count heuristic)")
    c.add_argument("--routing-overhead", type=float, default=DEFAULT_ROUTING_OVERHEAD)
    c.add_argument("--stats", help="write compilation statistics as JSON here")
    c.set_defaults(func=cmd_compile)

    s = sub.add_parser("simulate", help="fidelity of a compiled circuit under noise")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("--noise", help="noise JSON with p2, t1_s, t2_s, dur_1q_s, dur_2q_s")
    s.add_argument("--reference", help="source circuit giving the ideal state (default: the input)")
    s.add_argument("--layout", help="stats JSON from compile, for its final_layout")
    s.add_argument("--engine", choices=("auto", "density", "trajectories"), default="auto")
    s.add_argument("--shots", type=int, default=20000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_simulate)

    b = sub.add_parser("bench", help="run an experiment config and write the report")
    b.add_argument("--config", required=True)
    b.add_argument("-o", "--output")
    b.add_argument("--format", choices=("csv", "json"))
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except QasmError as exc:
        print(f"qprune: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError) as exc:
        print(f"qprune: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
