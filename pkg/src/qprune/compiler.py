"""Routing with in-flight pruning, the angle-only baseline, and basis lowering."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .circuit import BASIS_KINDS, Circuit, Gate, GateKind
from .fidelity import CostModelParams, should_prune, wrap_angle
from .topology import Topology, swap_distance

MODES = ("noisy", "pruned", "baseline")


class Layout:
    """Bijection between logical and physical qubits."""

    def __init__(self, log_to_phys: Sequence[int]) -> None:
        self._l2p = [int(p) for p in log_to_phys]
        self._p2l = [0] * len(self._l2p)
        for lq, pq in enumerate(self._l2p):
            self._p2l[pq] = lq
        if sorted(self._l2p) != list(range(len(self._l2p))):
            raise ValueError(f"not a permutation: {list(log_to_phys)}")

    @classmethod
    def identity(cls, n: int) -> Layout:
        return cls(range(n))

    def __len__(self) -> int:
        return len(self._l2p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Layout) and self._l2p == other._l2p

    def __repr__(self) -> str:
        return f"Layout({self._l2p})"

    @property
    def log_to_phys(self) -> tuple[int, ...]:
        return tuple(self._l2p)

    @property
    def phys_to_log(self) -> tuple[int, ...]:
        return tuple(self._p2l)

    def phys(self, logical: int) -> int:
        return self._l2p[logical]

    def logical(self, physical: int) -> int:
        return self._p2l[physical]

    def swap_physical(self, p: int, q: int) -> None:
        a, b = self._p2l[p], self._p2l[q]
        self._p2l[p], self._p2l[q] = b, a
        self._l2p[a], self._l2p[b] = q, p
        assert self._l2p[self._p2l[p]] == p and self._l2p[self._p2l[q]] == q

    def copy(self) -> Layout:
        return Layout(self._l2p)


@dataclass(frozen=True)
class PrunedGate:
    index: int  # position in the source circuit
    angle: float
    distance: int  # swap distance when the decision was taken


@dataclass
class CompilationResult:
    compiled: Circuit
    final_layout: Layout
    pruned_gates: list[PrunedGate] = field(default_factory=list)
    swaps_inserted: int = 0
    routed: Circuit | None = None  # post-routing, pre-decomposition

    @property
    def cx_count(self) -> int:
        return sum(1 for g in self.compiled.gates if g.kind is GateKind.CX)

    def stats(self) -> dict:
        return {
            "num_qubits": self.compiled.num_qubits,
            "gates": len(self.compiled.gates),
            "cx": self.cx_count,
            "swaps_inserted": self.swaps_inserted,
            "gates_pruned": len(self.pruned_gates),
            "pruned": [[p.index, p.angle, p.distance] for p in self.pruned_gates],
            "final_layout": list(self.final_layout.log_to_phys),
        }


def route(circuit: Circuit, topology: Topology, params: CostModelParams,
          prune: bool = False, keep_pruned_swaps: bool = False) -> CompilationResult:
    """Greedy distance-closing SWAP router with the routing-aware pruning hook.

    Gates are taken strictly in program order from the identity layout. When a
    two-qubit gate's operands are not adjacent, a prunable parametric gate is
    dropped if ``should_prune`` holds for its angle and current swap distance;
    otherwise both operands walk toward each other along the lexicographically
    smallest shortest path (the first operand takes the extra step on odd
    distances) and the gate is emitted. The output still contains SWAP and
    non-basis gates; see :func:`decompose_to_basis`.

    With ``keep_pruned_swaps`` a pruned gate still moves its operands, so the
    layout evolves exactly as in the unpruned routing and only the gate itself
    disappears.
    """
    if circuit.num_qubits > topology.num_physical:
        raise ValueError(
            f"circuit has {circuit.num_qubits} qubits but topology only {topology.num_physical}"
        )
    layout = Layout.identity(topology.num_physical)
    out: list[Gate] = []
    pruned: list[PrunedGate] = []
    swaps = 0
    for idx, gate in enumerate(circuit.gates):
        if gate.kind.num_qubits == 1:
            out.append(gate.on(layout.phys(gate.qubits[0])))
            continue
        a, b = gate.qubits
        pa, pb = layout.phys(a), layout.phys(b)
        d = swap_distance(topology, pa, pb)
        if d > 0:
            drop = prune and gate.kind.prunable and should_prune(params, gate.angle, d)
            if drop:
                pruned.append(PrunedGate(idx, gate.angle, d))
                if not keep_pruned_swaps:
                    continue
            path = topology.shortest_path(pa, pb)
            front = math.ceil(d / 2)
            for i in range(front):
                out.append(Gate(GateKind.SWAP, (path[i], path[i + 1])))
                layout.swap_physical(path[i], path[i + 1])
            for i in range(d - front):
                j = len(path) - 1 - i
                out.append(Gate(GateKind.SWAP, (path[j], path[j - 1])))
                layout.swap_physical(path[j], path[j - 1])
            swaps += d
            pa, pb = layout.phys(a), layout.phys(b)
            assert topology.adjacent(pa, pb)
            if drop:
                continue
        out.append(gate.on(pa, pb))
    routed = Circuit(topology.num_physical, tuple(out), circuit.name)
    return CompilationResult(routed, layout, pruned, swaps, routed)


def prunable_indices(circuit: Circuit) -> list[int]:
    return [i for i, g in enumerate(circuit.gates) if g.kind.prunable]


def approximation_prune(circuit: Circuit, k: int) -> Circuit:
    """Drop the ``k`` prunable gates with the smallest wrapped |angle|.

    Ties go to the earliest gate. This ignores the hardware entirely.
    """
    candidates = prunable_indices(circuit)
    if not 0 <= k <= len(candidates):
        raise ValueError(f"approximation degree {k} outside 0..{len(candidates)}")
    ranked = sorted(candidates, key=lambda i: (abs(wrap_angle(circuit.gates[i].angle)), i))
    drop = set(ranked[:k])
    return circuit.with_gates(g for i, g in enumerate(circuit.gates) if i not in drop)


# -- basis decomposition -----------------------------------------------------

_HALF_PI = math.pi / 2


def _rz(t: float, q: int) -> Gate:
    return Gate(GateKind.RZ, (q,), t)


def _sx(q: int) -> Gate:
    return Gate(GateKind.SX, (q,))


def _cx(c: int, t: int) -> Gate:
    return Gate(GateKind.CX, (c, t))


def _h(q: int) -> list[Gate]:
    return [_rz(_HALF_PI, q), _sx(q), _rz(_HALF_PI, q)]


def _rx(t: float, q: int) -> list[Gate]:
    # H RZ(t) H with the inner RZs merged
    return [_rz(_HALF_PI, q), _sx(q), _rz(t + math.pi, q), _sx(q), _rz(_HALF_PI, q)]


def _ry(t: float, q: int) -> list[Gate]:
    # RY(t) = S RX(t) S^dagger
    return [_rz(-_HALF_PI, q), *_rx(t, q), _rz(_HALF_PI, q)]


def _crz(t: float, c: int, tq: int) -> list[Gate]:
    return [_rz(t / 2, tq), _cx(c, tq), _rz(-t / 2, tq), _cx(c, tq)]


def lower_gate(g: Gate) -> list[Gate]:
    k = g.kind
    if k in BASIS_KINDS:
        return [g]
    if k is GateKind.H:
        return _h(g.qubits[0])
    if k is GateKind.RX:
        return _rx(g.angle, g.qubits[0])
    if k is GateKind.RY:
        return _ry(g.angle, g.qubits[0])
    a, b = g.qubits
    if k is GateKind.SWAP:
        return [_cx(a, b), _cx(b, a), _cx(a, b)]
    if k is GateKind.CRZ:
        return _crz(g.angle, a, b)
    if k is GateKind.CP:
        return [*_crz(g.angle, a, b), _rz(g.angle / 2, a)]
    if k is GateKind.RZZ:
        return [_cx(a, b), _rz(g.angle, b), _cx(a, b)]
    if k is GateKind.CRX:
        return [*_h(b), *_crz(g.angle, a, b), *_h(b)]
    if k is GateKind.CRY:
        # conjugate CRZ by (S H) on the target
        return [_rz(-_HALF_PI, b), *_h(b), *_crz(g.angle, a, b), *_h(b), _rz(_HALF_PI, b)]
    raise ValueError(f"cannot lower {k}")  # pragma: no cover


def decompose_to_basis(circuit: Circuit) -> Circuit:
    """Rewrite into {CX, ID, RZ, SX, X}; equal to the input up to global phase."""
    out: list[Gate] = []
    for g in circuit.gates:
        out.extend(lower_gate(g))
    return circuit.with_gates(out)


def compile_pipeline(circuit: Circuit, topology: Topology, params: CostModelParams,
                     mode: str = "noisy", baseline_k: int = 0) -> CompilationResult:
    """Route then lower. ``mode`` is ``noisy``, ``pruned`` or ``baseline`` (with ``baseline_k``)."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    source = circuit
    if mode == "baseline":
        source = approximation_prune(circuit, baseline_k)
    result = route(source, topology, params, prune=(mode == "pruned"))
    result.compiled = decompose_to_basis(result.routed)
    if result.pruned_gates:
        # Skipping SWAPs reshapes the layout and can make later routing dearer.
        # Pruning while keeping the SWAPs is never worse than not pruning, so
        # fall back to it when it wins.
        alt = route(source, topology, params, prune=True, keep_pruned_swaps=True)
        alt.compiled = decompose_to_basis(alt.routed)
        if alt.cx_count < result.cx_count:
            result = alt
    return result
