"""Ideal / Noisy / Pruned (+ angle-only baseline) experiment over benchmark families."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from ..compiler import CompilationResult, compile_pipeline, prunable_indices
from ..fidelity import DEFAULT_ROUTING_OVERHEAD, CostModelParams, p2_heuristic, relaxation_times
from ..simulator import (
    MAX_DENSITY_QUBITS, NoiseModel, circuit_duration, simulate_ideal, simulate_noisy_dm,
    simulate_noisy_traj, state_fidelity,
)
from ..topology import Topology, grid_for_width, topology_from_config
from .generators import FAMILIES, generate

log = logging.getLogger(__name__)


@dataclass
class ExperimentConfig:
    families: list[str]
    widths: list[int]
    topology: dict | str | None = None  # None: canonical grid per width
    p2: float | None = None  # None: derived from the noisy compiled circuit
    routing_overhead: float = DEFAULT_ROUTING_OVERHEAD
    shots: int = 20000
    seeds: list[int] = field(default_factory=lambda: [0])
    baseline_ks: list[int] | str | None = None  # list of degrees, "all", or None
    dm_max_qubits: int = MAX_DENSITY_QUBITS
    qaoa_layers: int = 1
    relaxation: bool = True  # False: depolarizing only (T1 = T2 = inf)
    memory_budget_mb: float = 512.0

    def __post_init__(self) -> None:
        if isinstance(self.families, str):
            self.families = [self.families]
        for fam in self.families:
            if fam not in FAMILIES:
                raise ValueError(f"unknown family {fam!r}; expected one of {FAMILIES}")
        if not self.widths:
            raise ValueError("no widths given")
        limit = 20 if self.dm_max_qubits < 20 else self.dm_max_qubits
        for w in self.widths:
            if not 2 <= w <= limit:
                raise ValueError(f"width {w} outside 2..{limit}")
        if self.shots < 1:
            raise ValueError("shots must be positive")
        if self.dm_max_qubits > MAX_DENSITY_QUBITS:
            raise ValueError(f"density matrices are limited to {MAX_DENSITY_QUBITS} qubits")
        if isinstance(self.baseline_ks, str) and self.baseline_ks != "all":
            raise ValueError(f"baseline_ks must be a list or 'all', got {self.baseline_ks!r}")

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentConfig:
        data = dict(data)
        if "family" in data:
            data["families"] = data.pop("family")
        if "seed" in data:
            data["seeds"] = [data.pop("seed")]
        return cls(**data)

    @classmethod
    def load(cls, path: str | Path) -> ExperimentConfig:
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass
class ModeResult:
    mode: str  # "noisy" | "pruned" | "baseline"
    k: int | None
    cx: int
    gates: int
    swaps_inserted: int
    gates_pruned: int
    fidelity: float
    stderr: float = 0.0


@dataclass
class CellReport:
    family: str
    width: int
    seed: int
    topology: str
    engine: str  # "density" or "trajectories"
    shots: int
    p2: float
    t1_s: float
    t2_s: float
    noisy: ModeResult
    pruned: ModeResult
    baselines: list[ModeResult] = field(default_factory=list)

    @property
    def rel_cx_reduction(self) -> float:
        return (self.noisy.cx - self.pruned.cx) / self.noisy.cx if self.noisy.cx else 0.0

    @property
    def rel_fid_improvement(self) -> float:
        return (self.pruned.fidelity - self.noisy.fidelity) / self.noisy.fidelity

    @property
    def best_baseline(self) -> ModeResult | None:
        if not self.baselines:
            return None
        return max(self.baselines, key=lambda r: (r.fidelity, -r.k))

    def modes(self) -> list[ModeResult]:
        return [self.noisy, self.pruned, *self.baselines]

    @classmethod
    def from_dict(cls, d: dict) -> CellReport:
        d = dict(d)
        d["noisy"] = ModeResult(**d["noisy"])
        d["pruned"] = ModeResult(**d["pruned"])
        d["baselines"] = [ModeResult(**b) for b in d.get("baselines", [])]
        return cls(**d)


@dataclass
class ExperimentReport:
    cells: list[CellReport] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"cells": [asdict(c) for c in self.cells]}

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentReport:
        return cls([CellReport.from_dict(c) for c in d["cells"]])

    def cell(self, family: str, width: int, seed: int | None = None) -> CellReport:
        for c in self.cells:
            if c.family == family and c.width == width and (seed is None or c.seed == seed):
                return c
        raise KeyError((family, width, seed))


def _topology_for(config: ExperimentConfig, width: int) -> Topology:
    if config.topology is None:
        return grid_for_width(width)
    return topology_from_config(config.topology)


def _topology_label(t: Topology) -> str:
    return f"{t.shape[0]}x{t.shape[1]}" if t.shape else f"graph{t.num_physical}"


def _cell_seed(seed: int, family: str, width: int) -> int:
    # Every mode of a cell shares one stream (common random numbers), so
    # identical compiled circuits get identical estimates and mode-to-mode
    # differences are not swamped by sampling noise.
    key = [seed, FAMILIES.index(family), width]
    return int(np.random.SeedSequence([x + 1 for x in key]).generate_state(1)[0])


class _Simulator:
    """Fidelity of compiled circuits against one ideal state, memoized on the circuit."""

    def __init__(self, ideal: np.ndarray, noise: NoiseModel, config: ExperimentConfig,
                 cache: dict) -> None:
        self.ideal = ideal
        self.noise = noise
        self.config = config
        self.cache = cache

    def engine(self, width: int) -> str:
        return "density" if width <= self.config.dm_max_qubits else "trajectories"

    def run(self, result: CompilationResult, seed: int) -> tuple[float, float]:
        circuit = result.compiled
        layout = result.final_layout.log_to_phys
        density = self.engine(circuit.num_qubits) == "density"
        key = (circuit.gates, circuit.num_qubits, self.noise, layout, self.ideal.tobytes(),
               None if density else (seed, self.config.shots))
        if key not in self.cache:
            if density:
                rho = simulate_noisy_dm(circuit, self.noise)
                self.cache[key] = (state_fidelity(self.ideal, rho, layout), 0.0)
            else:
                est = simulate_noisy_traj(circuit, self.noise, self.config.shots, seed,
                                          reference=self.ideal, final_layout=layout,
                                          memory_budget_mb=self.config.memory_budget_mb)
                self.cache[key] = (est.mean, est.stderr)
        return self.cache[key]


def _mode_result(mode: str, k: int | None, res: CompilationResult, fid: tuple[float, float]) -> ModeResult:
    return ModeResult(mode, k, res.cx_count, len(res.compiled.gates), res.swaps_inserted,
                      len(res.pruned_gates), fid[0], fid[1])


def run_cell(config: ExperimentConfig, family: str, width: int, seed: int,
             cache: dict | None = None) -> CellReport:
    cache = {} if cache is None else cache
    topo = _topology_for(config, width)
    source = generate(family, width, seed=seed, layers=config.qaoa_layers)
    wide = source.widen(topo.num_physical)
    overhead = config.routing_overhead

    noisy = compile_pipeline(wide, topo, CostModelParams(0.0, overhead), "noisy")
    p2 = config.p2 if config.p2 is not None else p2_heuristic(len(noisy.compiled), width)
    if config.relaxation:
        t1, t2 = relaxation_times(circuit_duration(noisy.compiled))
    else:
        t1 = t2 = math.inf
    noise = NoiseModel(p2, t1, t2)
    params = CostModelParams(p2, overhead)
    pruned = compile_pipeline(wide, topo, params, "pruned")

    sim = _Simulator(simulate_ideal(wide), noise, config, cache)
    engine = sim.engine(topo.num_physical)
    log.info("%s n=%d seed=%d: p2=%.3g cx %d -> %d (%d pruned), engine=%s", family, width, seed,
             p2, noisy.cx_count, pruned.cx_count, len(pruned.pruned_gates), engine)

    stream = _cell_seed(seed, family, width)
    fid_noisy = sim.run(noisy, stream)
    fid_pruned = sim.run(pruned, stream)

    ks: Sequence[int] = ()
    n_prunable = len(prunable_indices(source))
    if config.baseline_ks == "all":
        ks = range(n_prunable + 1)
    elif config.baseline_ks:
        ks = [k for k in config.baseline_ks if k <= n_prunable]
    baselines = []
    for k in ks:
        res = compile_pipeline(wide, topo, params, "baseline", baseline_k=k)
        fid = sim.run(res, stream)
        baselines.append(_mode_result("baseline", k, res, fid))

    return CellReport(
        family=family, width=width, seed=seed, topology=_topology_label(topo), engine=engine,
        shots=config.shots if engine == "trajectories" else 0, p2=p2, t1_s=t1, t2_s=t2,
        noisy=_mode_result("noisy", None, noisy, fid_noisy),
        pruned=_mode_result("pruned", None, pruned, fid_pruned),
        baselines=baselines,
    )


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    cache: dict = {}
    report = ExperimentReport()
    for family in config.families:
        for width in config.widths:
            for seed in config.seeds:
                report.cells.append(run_cell(config, family, width, seed, cache))
    return report
