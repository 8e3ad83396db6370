"""Routing-aware pruning of small-angle parametric gates for noisy quantum circuits."""

from .circuit import Circuit, CircuitBuilder, Gate, GateKind, count_gates, count_two_qubit
from .compiler import (
    CompilationResult,
    Layout,
    PrunedGate,
    approximation_prune,
    compile_pipeline,
    decompose_to_basis,
    route,
)
from .fidelity import (
    CostModelParams,
    p2_heuristic,
    relaxation_times,
    rotation_fidelity_bound,
    should_prune,
    swap_fidelity,
)
from .qasm import QasmError, emit_qasm, parse_qasm
from .topology import Topology, grid_for_width, make_grid, swap_distance, topology_from_config

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CircuitBuilder",
    "CompilationResult",
    "CostModelParams",
    "Gate",
    "GateKind",
    "Layout",
    "PrunedGate",
    "QasmError",
    "Topology",
    "approximation_prune",
    "compile_pipeline",
    "count_gates",
    "count_two_qubit",
    "decompose_to_basis",
    "emit_qasm",
    "grid_for_width",
    "make_grid",
    "p2_heuristic",
    "parse_qasm",
    "relaxation_times",
    "rotation_fidelity_bound",
    "route",
    "should_prune",
    "swap_distance",
    "swap_fidelity",
    "topology_from_config",
]
