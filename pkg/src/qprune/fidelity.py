"""Closed-form fidelity cost model behind the pruning decision.

A parametric two-qubit gate is dropped when routing it is expected to cost
more fidelity than omitting it does in the worst case:

    swap_fidelity(d) < rotation_fidelity_bound(theta)

where ``rotation_fidelity_bound(theta) = cos^2(theta/2)`` is the worst-case
overlap between a state and its rotated copy, and ``swap_fidelity`` models
both operands walking toward the middle of their path with ``3`` CX per SWAP,
each CX depolarizing with probability ``p2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

DEFAULT_ROUTING_OVERHEAD = 1.25
P2_CAP = 0.5


@dataclass(frozen=True)
class CostModelParams:
    p2: float
    routing_overhead: float = DEFAULT_ROUTING_OVERHEAD

    def __post_init__(self) -> None:
        if not (0.0 <= self.p2 < 1.0):
            raise ValueError(f"p2 must lie in [0, 1), got {self.p2}")
        if not self.routing_overhead >= 1.0:
            raise ValueError(f"routing_overhead must be >= 1, got {self.routing_overhead}")


def wrap_angle(theta: float) -> float:
    """Map theta into (-pi, pi]."""
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta}")
    w = math.remainder(theta, 2 * math.pi)
    return math.pi if w <= -math.pi else w


def rotation_fidelity_bound(theta: float) -> float:
    return math.cos(wrap_angle(theta) / 2) ** 2


def swaps_per_qubit(d: int, routing_overhead: float = DEFAULT_ROUTING_OVERHEAD) -> int:
    """SWAPs charged to each operand for a swap distance ``d``."""
    if d < 0:
        raise ValueError(f"swap distance must be non-negative, got {d}")
    # round() guards against 1.1 * 10 = 11.000000000000002 style ceilings
    d_eff = math.ceil(round(routing_overhead * d, 9))
    return math.ceil(d_eff / 2)


def swap_fidelity(params: CostModelParams, d: int) -> float:
    s = swaps_per_qubit(d, params.routing_overhead)
    if s == 0:
        return 1.0
    g = (1.0 - params.p2) ** (3 * s)
    return (g + (1.0 - g) / 4.0) ** 2


def should_prune(params: CostModelParams, theta: float, d: int) -> bool:
    # ties keep the gate
    return swap_fidelity(params, d) < rotation_fidelity_bound(theta)


def p2_heuristic(gate_count: int, qubit_count: int, cap: float = P2_CAP) -> float:
    """Depolarizing rate chosen so the noisy circuit keeps a representative fidelity."""
    if gate_count < 1 or qubit_count < 1:
        raise ValueError(f"counts must be positive, got gates={gate_count}, qubits={qubit_count}")
    return min((qubit_count / gate_count) ** 2, cap)


def relaxation_times(circuit_duration: float) -> tuple[float, float]:
    """T1 = T2 = twice the serial circuit duration (seconds)."""
    if not circuit_duration > 0:
        raise ValueError(f"circuit duration must be positive, got {circuit_duration}")
    t = 2.0 * circuit_duration
    return t, t
