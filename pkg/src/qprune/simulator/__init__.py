"""Ideal, density-matrix and trajectory simulation of compiled circuits."""

from .density import MAX_DENSITY_QUBITS, simulate_noisy_dm
from .noise import (
    NoiseModel,
    apply_kraus,
    circuit_duration,
    depolarizing_kraus,
    relaxation_params,
    thermal_relaxation_kraus,
)
from .statevector import (
    apply_matrix,
    circuit_unitary,
    simulate_ideal,
    state_fidelity,
    to_logical_order,
    to_physical_order,
    zero_state,
)
from .trajectories import FidelityEstimate, simulate_noisy_traj

__all__ = [
    "MAX_DENSITY_QUBITS",
    "FidelityEstimate",
    "NoiseModel",
    "apply_kraus",
    "apply_matrix",
    "circuit_duration",
    "circuit_unitary",
    "depolarizing_kraus",
    "relaxation_params",
    "simulate_ideal",
    "simulate_noisy_dm",
    "simulate_noisy_traj",
    "state_fidelity",
    "thermal_relaxation_kraus",
    "to_logical_order",
    "to_physical_order",
    "zero_state",
]
