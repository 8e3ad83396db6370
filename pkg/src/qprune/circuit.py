"""Circuit intermediate representation and gate matrices.

A :class:`Circuit` is an immutable, ordered list of :class:`Gate` objects over
``num_qubits`` logical qubits. Qubit 0 is the most significant bit in every
matrix and statevector produced by this package, so the 4x4 matrix of a
two-qubit gate acting on ``(a, b)`` is written in the basis ``|a b>``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class GateKind(str, enum.Enum):
    X = "x"
    SX = "sx"
    RZ = "rz"
    RX = "rx"
    RY = "ry"
    ID = "id"
    H = "h"
    CX = "cx"
    SWAP = "swap"
    CRZ = "crz"
    CRX = "crx"
    CRY = "cry"
    CP = "cp"
    RZZ = "rzz"

    @property
    def num_qubits(self) -> int:
        return 2 if self in TWO_QUBIT_KINDS else 1

    @property
    def parametric(self) -> bool:
        return self in PARAMETRIC_KINDS

    @property
    def prunable(self) -> bool:
        return self in PRUNABLE_KINDS


TWO_QUBIT_KINDS = frozenset(
    {GateKind.CX, GateKind.SWAP, GateKind.CRZ, GateKind.CRX, GateKind.CRY, GateKind.CP, GateKind.RZZ}
)
PARAMETRIC_KINDS = frozenset(
    {GateKind.RZ, GateKind.RX, GateKind.RY, GateKind.CRZ, GateKind.CRX, GateKind.CRY, GateKind.CP, GateKind.RZZ}
)
# Parametric two-qubit gates that the router may drop.
PRUNABLE_KINDS = frozenset({GateKind.CRZ, GateKind.CRX, GateKind.CRY, GateKind.CP, GateKind.RZZ})
BASIS_KINDS = frozenset({GateKind.CX, GateKind.ID, GateKind.RZ, GateKind.SX, GateKind.X})


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self) -> None:
        kind = GateKind(self.kind)
        object.__setattr__(self, "kind", kind)
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)
        if len(qubits) != kind.num_qubits:
            raise ValueError(f"{kind.value} acts on {kind.num_qubits} qubit(s), got {len(qubits)}")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"duplicate qubit operand in {kind.value} {qubits}")
        if any(q < 0 for q in qubits):
            raise ValueError(f"negative qubit index in {kind.value} {qubits}")
        if kind.parametric:
            if self.angle is None:
                raise ValueError(f"{kind.value} requires an angle")
            angle = float(self.angle)
            if not math.isfinite(angle):
                raise ValueError(f"non-finite angle {self.angle!r} for {kind.value}")
            object.__setattr__(self, "angle", angle)
        elif self.angle is not None:
            raise ValueError(f"{kind.value} takes no angle")

    def __repr__(self) -> str:
        args = ",".join(str(q) for q in self.qubits)
        if self.angle is None:
            return f"{self.kind.name}({args})"
        return f"{self.kind.name}[{self.angle:.6g}]({args})"

    def on(self, *qubits: int) -> Gate:
        """Same gate acting on different qubits."""
        return Gate(self.kind, qubits, self.angle)


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        gates = tuple(self.gates)
        for g in gates:
            if not isinstance(g, Gate):
                raise TypeError(f"expected Gate, got {type(g).__name__}")
            if max(g.qubits) >= self.num_qubits:
                raise ValueError(f"{g!r} out of range for {self.num_qubits} qubits")
        object.__setattr__(self, "gates", gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def with_gates(self, gates: Iterable[Gate], num_qubits: int | None = None) -> Circuit:
        return Circuit(self.num_qubits if num_qubits is None else num_qubits, tuple(gates), self.name)

    def widen(self, num_qubits: int) -> Circuit:
        """Pad with idle qubits so the circuit fits a larger register."""
        if num_qubits < self.num_qubits:
            raise ValueError(f"cannot shrink a {self.num_qubits}-qubit circuit to {num_qubits}")
        return Circuit(num_qubits, self.gates, self.name)


class CircuitBuilder:
    """Small helper for generators: ``b.h(0); b.cp(pi/2, 1, 0); b.build()``."""

    def __init__(self, num_qubits: int, name: str = "") -> None:
        self.num_qubits = num_qubits
        self.name = name
        self._gates: list[Gate] = []

    def add(self, kind: GateKind | str, *qubits: int, angle: float | None = None) -> CircuitBuilder:
        self._gates.append(Gate(GateKind(kind), qubits, angle))
        return self

    def __getattr__(self, name: str):
        try:
            kind = GateKind(name)
        except ValueError:
            raise AttributeError(name) from None
        if kind.parametric:
            return lambda angle, *qubits: self.add(kind, *qubits, angle=angle)
        return lambda *qubits: self.add(kind, *qubits)

    def build(self) -> Circuit:
        return Circuit(self.num_qubits, tuple(self._gates), self.name)


def count_gates(circuit: Circuit, kind: GateKind | str | None = None) -> int:
    if kind is None:
        return len(circuit.gates)
    kind = GateKind(kind)
    return sum(1 for g in circuit.gates if g.kind is kind)


def count_two_qubit(circuit: Circuit) -> int:
    return sum(1 for g in circuit.gates if g.kind.num_qubits == 2)


# -- matrices ---------------------------------------------------------------

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_SX = np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex) / 2
_P0 = np.diag([1, 0]).astype(complex)
_P1 = np.diag([0, 1]).astype(complex)
_CX = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
_SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)

PAULIS = {"I": _I2, "X": _X, "Y": _Y, "Z": _Z}


def rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def rotation(axis: Sequence[float], theta: float) -> np.ndarray:
    """exp(-i theta/2 n.sigma) for a real unit axis n."""
    nx, ny, nz = axis
    generator = nx * _X + ny * _Y + nz * _Z
    return math.cos(theta / 2) * _I2 - 1j * math.sin(theta / 2) * generator


def _controlled(block: np.ndarray) -> np.ndarray:
    return np.kron(_P0, _I2) + np.kron(_P1, block)


def gate_unitary(gate: Gate) -> np.ndarray:
    k, t = gate.kind, gate.angle
    if k is GateKind.X:
        return _X.copy()
    if k is GateKind.SX:
        return _SX.copy()
    if k is GateKind.ID:
        return _I2.copy()
    if k is GateKind.H:
        return _H.copy()
    if k is GateKind.RZ:
        return rz(t)
    if k is GateKind.RX:
        return rx(t)
    if k is GateKind.RY:
        return ry(t)
    if k is GateKind.CX:
        return _CX.copy()
    if k is GateKind.SWAP:
        return _SWAP.copy()
    if k is GateKind.CRZ:
        return _controlled(rz(t))
    if k is GateKind.CRX:
        return _controlled(rx(t))
    if k is GateKind.CRY:
        return _controlled(ry(t))
    if k is GateKind.CP:
        return np.diag([1, 1, 1, np.exp(1j * t)])
    if k is GateKind.RZZ:
        a, b = np.exp(-0.5j * t), np.exp(0.5j * t)
        return np.diag([a, b, b, a])
    raise ValueError(f"no matrix for {k}")  # pragma: no cover
