"""Statevector engine, gate fusion and fidelity against the ideal state."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..circuit import Circuit, GateKind, gate_unitary
from . import _kernels as K

MAX_STATEVECTOR_QUBITS = 20

_I2 = np.eye(2, dtype=complex)
_ROW0 = np.zeros(1, dtype=np.int64)


@dataclass(frozen=True)
class Op:
    qubits: tuple[int, ...]
    matrix: np.ndarray


@dataclass(frozen=True)
class Slot:
    """Noise location right after a CX on ``qubits``."""

    index: int
    qubits: tuple[int, int]


def fuse(circuit: Circuit, noisy_cx: bool = False,
         slot_defaults: Callable[[Slot], tuple[np.ndarray, np.ndarray]] | None = None,
         ) -> list[Op | Slot]:
    """Turn a circuit into fused ops, one per two-qubit gate plus trailing 1q flushes.

    Single-qubit gates are folded into the next two-qubit gate on the same
    qubit. With ``noisy_cx`` a :class:`Slot` follows every CX; ``slot_defaults``
    may return a pair of 1q matrices that are queued on the CX operands right
    after the slot (the trajectory engine's no-event operators).
    """
    pending: dict[int, np.ndarray] = {}
    items: list[Op | Slot] = []
    n_slots = 0
    for g in circuit.gates:
        u = gate_unitary(g)
        if g.kind.num_qubits == 1:
            q = g.qubits[0]
            pending[q] = u @ pending[q] if q in pending else u
            continue
        a, b = g.qubits
        pre = np.kron(pending.pop(a, _I2), pending.pop(b, _I2))
        items.append(Op((a, b), np.ascontiguousarray(u @ pre)))
        if noisy_cx and g.kind is GateKind.CX:
            slot = Slot(n_slots, (a, b))
            n_slots += 1
            items.append(slot)
            if slot_defaults is not None:
                da, db = slot_defaults(slot)
                pending[a], pending[b] = da, db
    for q in sorted(pending):
        items.append(Op((q,), np.ascontiguousarray(pending[q])))
    return items


def apply_op(states: np.ndarray, rows: np.ndarray, n: int, op: Op, adjoint: bool = False) -> None:
    m = op.matrix.conj().T.copy() if adjoint else op.matrix
    if len(op.qubits) == 1:
        K.apply_1q(states, rows, n, op.qubits[0], m)
    else:
        K.apply_2q(states, rows, n, op.qubits[0], op.qubits[1], m)


def zero_state(n: int) -> np.ndarray:
    psi = np.zeros(2 ** n, dtype=np.complex128)
    psi[0] = 1.0
    return psi


def run_ops(items: Sequence[Op | Slot], n: int, psi: np.ndarray) -> np.ndarray:
    states = psi[None, :]
    for it in items:
        if isinstance(it, Op):
            apply_op(states, _ROW0, n, it)
    return psi


def simulate_ideal(circuit: Circuit) -> np.ndarray:
    n = circuit.num_qubits
    if n > MAX_STATEVECTOR_QUBITS:
        raise ValueError(f"statevector limited to {MAX_STATEVECTOR_QUBITS} qubits, got {n}")
    return run_ops(fuse(circuit), n, zero_state(n))


def apply_matrix(psi: np.ndarray, matrix: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    """Apply a 1q or 2q matrix to a copy of ``psi``."""
    n = psi.shape[0].bit_length() - 1
    out = np.array(psi, dtype=np.complex128, copy=True)
    apply_op(out[None, :], _ROW0, n, Op(tuple(qubits), np.ascontiguousarray(matrix, dtype=complex)))
    return out


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    n = circuit.num_qubits
    if n > 10:
        raise ValueError("circuit_unitary is meant for small circuits")
    dim = 2 ** n
    states = np.eye(dim, dtype=np.complex128)
    rows = np.arange(dim, dtype=np.int64)
    for it in fuse(circuit):
        apply_op(states, rows, n, it)
    return states.T.copy()


# -- layout handling and fidelity --------------------------------------------

def to_logical_order(state: np.ndarray, log_to_phys: Sequence[int]) -> np.ndarray:
    """Re-index a state over physical qubits so axis i is logical qubit i."""
    perm = list(log_to_phys)
    n = len(perm)
    if state.ndim == 1:
        return state.reshape([2] * n).transpose(perm).reshape(-1)
    cols = [n + p for p in perm]
    return state.reshape([2] * (2 * n)).transpose(perm + cols).reshape(2 ** n, 2 ** n)


def to_physical_order(state: np.ndarray, log_to_phys: Sequence[int]) -> np.ndarray:
    inv = np.argsort(np.asarray(log_to_phys)).tolist()
    return to_logical_order(state, inv)


def state_fidelity(ideal: np.ndarray, noisy: np.ndarray, final_layout=None) -> float:
    """<psi|rho|psi> (or |<psi|phi>|^2) after undoing the routing permutation.

    ``final_layout`` is a :class:`~qprune.compiler.Layout` or a logical-to-
    physical sequence; ``None`` means identity.
    """
    ideal = np.asarray(ideal)
    noisy = np.asarray(noisy)
    if ideal.ndim != 1:
        raise ValueError("ideal state must be a statevector")
    if noisy.shape[0] != ideal.shape[0]:
        raise ValueError(f"width mismatch: {ideal.shape[0]} vs {noisy.shape[0]} amplitudes")
    if final_layout is not None:
        l2p = getattr(final_layout, "log_to_phys", final_layout)
        noisy = to_logical_order(noisy, l2p)
    if noisy.ndim == 1:
        f = abs(np.vdot(ideal, noisy)) ** 2
    else:
        f = np.vdot(ideal, noisy @ ideal).real
    return float(min(max(f, 0.0), 1.0))
