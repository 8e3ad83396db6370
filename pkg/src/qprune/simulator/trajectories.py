"""Monte-Carlo trajectory estimate of <psi|rho|psi> for circuits too wide for a density matrix.

Every CX is followed by a noise slot holding three independent channels:
two-qubit depolarizing on the pair, then thermal relaxation on each operand.
Relaxation is written as amplitude damping followed by a phase flip, which
needs fewer events than the three-operator Kraus form. Each channel is
unravelled into a "no event" operator and a few event operators, and events
are drawn with fixed, state-independent probabilities (importance weights
correct the bias). Because the event pattern of every shot
is known up front, the expensive part can be shared:

* shots with no event all follow the same deterministic path;
* a shot whose events all sit in one slot is scored with a single 4x4
  contraction between the forward no-event state and the backward-propagated
  target state at that slot;
* only shots with events in two or more slots are evolved individually, and
  only between their first and last event.

The per-shot score is ``w * |<psi|phi>|^2`` with ``phi`` the unnormalized
trajectory state and ``w`` the importance weight, whose mean is exactly the
fidelity of the density matrix the channels produce.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from ..circuit import Circuit
from . import _kernels as K
from .density import _check_basis
from .noise import TWO_QUBIT_PAULIS, NoiseModel
from .statevector import (
    MAX_STATEVECTOR_QUBITS, Op, Slot, apply_op, fuse, simulate_ideal, to_physical_order, zero_state,
)

_ROW0 = np.zeros(1, dtype=np.int64)
_I4 = np.eye(4, dtype=complex)

# event kinds
_DEPOL, _RELAX_A, _RELAX_B = 0, 1, 2


@dataclass(frozen=True)
class FidelityEstimate:
    mean: float
    stderr: float
    shots: int
    total: float = 0.0
    total_sq: float = 0.0

    @classmethod
    def from_samples(cls, f: np.ndarray) -> FidelityEstimate:
        f = np.asarray(f, dtype=float)
        return cls._build(len(f), float(f.sum()), float(np.dot(f, f)))

    @classmethod
    def _build(cls, shots: int, total: float, total_sq: float) -> FidelityEstimate:
        mean = total / shots
        var = max(total_sq / shots - mean * mean, 0.0) * shots / max(shots - 1, 1)
        return cls(mean, math.sqrt(var / shots), shots, total, total_sq)

    def merge(self, other: FidelityEstimate) -> FidelityEstimate:
        """Pool two independent estimates of the same quantity."""
        return self._build(self.shots + other.shots, self.total + other.total,
                           self.total_sq + other.total_sq)


@dataclass
class _Plan:
    """Sampled events, grouped per shot."""

    log_weight0: float
    zero_shots: int
    single: dict  # slot -> list of (shot, X, logw)
    multi: list  # (shot, [(slot, X), ...], logw)


def _slot_ops(noise: NoiseModel):
    """Per-qubit unravelling of thermal relaxation.

    Amplitude damping (no-jump ``k0 = diag(1, sqrt(1 - gamma))``, jump
    ``sqrt(gamma) |0><1|``) followed by a Z flip with probability ``pz`` chosen
    so the off-diagonal decay is the requested coherence. Returned event
    operators are relative to ``k0``, which the no-event path already applies.
    """
    gamma, coh = noise.relaxation
    keep = math.sqrt(1.0 - gamma)
    pz = min(0.5, max(0.0, 0.5 * (1.0 - coh / keep))) if keep > 0 else 0.0
    k0 = np.diag([1.0, keep]).astype(complex)
    jumps = {
        # k0 leaves |0> alone, so k0^-1 (jump) is the jump itself
        1: np.array([[0, math.sqrt(gamma)], [0, 0]], dtype=complex),
        2: np.diag([1.0, -1.0]).astype(complex),
    }
    return gamma, pz, k0, jumps


def _local_op(events, jumps) -> np.ndarray:
    """Operator applied at a slot in place of the (already queued) no-event operators."""
    pauli = _I4
    ra = rb = np.eye(2, dtype=complex)
    for kind, sub in events:
        if kind == _DEPOL:
            pauli = TWO_QUBIT_PAULIS[sub]
        elif kind == _RELAX_A:
            ra = jumps[sub]
        else:
            rb = jumps[sub]
    return np.ascontiguousarray(np.kron(ra, rb) @ pauli)


def _plan(items, n, noise, shots, rng, floor) -> _Plan:
    slots = [it for it in items if isinstance(it, Slot)]
    m = len(slots)
    gamma, pz, k0, jumps = _slot_ops(noise)
    relax_on = gamma > 0 or pz > 0

    # excited populations along the no-event path steer the event probabilities
    pops = np.ones((m, 2))
    if relax_on and m:
        phi = zero_state(n)
        for it in items:
            if isinstance(it, Op):
                apply_op(phi[None, :], _ROW0, n, it)
            else:
                a, b = it.qubits
                pops[it.index] = K.excited_population(phi, n, a), K.excited_population(phi, n, b)
    # damping jumps are importance-sampled; Z flips use their true rate
    q1 = gamma * np.clip(pops, floor, 1.0)
    q2 = np.full_like(q1, pz)
    q0 = 1.0 - q1 - q2
    # log of (true weight / sampling probability) for the no-event branch
    log_r0 = np.log1p(-pz) - np.log(q0) if relax_on else np.zeros_like(q0)
    log_w0 = float(log_r0.sum())
    q_dep = 15.0 * noise.p2 / 16.0

    ev_shot, ev_slot, ev_kind, ev_sub = [], [], [], []
    if q_dep > 0 and m:
        counts = rng.binomial(shots, q_dep, size=m)
        for s in np.flatnonzero(counts):
            hit = rng.choice(shots, counts[s], replace=False)
            ev_shot.append(hit)
            ev_slot.append(np.full(len(hit), s))
            ev_kind.append(np.full(len(hit), _DEPOL))
            ev_sub.append(rng.integers(1, 16, len(hit)))
    if relax_on and m:
        for x, kind in ((0, _RELAX_A), (1, _RELAX_B)):
            qt = q1[:, x] + q2[:, x]
            counts = rng.binomial(shots, qt)
            for s in np.flatnonzero(counts):
                hit = rng.choice(shots, counts[s], replace=False)
                ev_shot.append(hit)
                ev_slot.append(np.full(len(hit), s))
                ev_kind.append(np.full(len(hit), kind))
                ev_sub.append(np.where(rng.random(len(hit)) * qt[s] < q1[s, x], 1, 2))
    if not ev_shot:
        return _Plan(log_w0, shots, {}, [])

    shot = np.concatenate(ev_shot)
    slot = np.concatenate(ev_slot)
    kind = np.concatenate(ev_kind)
    sub = np.concatenate(ev_sub)
    order = np.lexsort((kind, slot, shot))
    shot, slot, kind, sub = shot[order], slot[order], kind[order], sub[order]

    # importance weight adjustment per event
    dlw = np.zeros(len(shot))
    relax = kind != _DEPOL
    x = kind[relax] - 1
    s = slot[relax]
    # a damping jump has true weight 1 (gamma sits in the operator) and was
    # drawn with q1; a flip is drawn at its true rate, so its ratio is 1
    log_r = np.zeros(len(s))
    jump = sub[relax] == 1
    log_r[jump] = -np.log(q1[s[jump], x[jump]])
    dlw[relax] = log_r - log_r0[s, x]

    single: dict = defaultdict(list)
    multi: list = []
    starts = np.flatnonzero(np.r_[True, shot[1:] != shot[:-1]])
    ends = np.r_[starts[1:], len(shot)]
    for i0, i1 in zip(starts, ends):
        lw = log_w0 + float(dlw[i0:i1].sum())
        per_slot: dict = defaultdict(list)
        for j in range(i0, i1):
            per_slot[int(slot[j])].append((int(kind[j]), int(sub[j])))
        ops = [(sl, _local_op(evs, jumps)) for sl, evs in sorted(per_slot.items())]
        if len(ops) == 1:
            single[ops[0][0]].append((int(shot[i0]), ops[0][1], lw))
        else:
            multi.append((int(shot[i0]), ops, lw))
    n_event_shots = len(starts)
    return _Plan(log_w0, shots - n_event_shots, dict(single), multi)


class _Backward:
    """Backward-propagated target states at noise slots, regenerated segment by segment."""

    def __init__(self, items, n, psi, max_vectors):
        self.items = items
        self.n = n
        self.slot_pos = [i for i, it in enumerate(items) if isinstance(it, Slot)]
        m = len(self.slot_pos)
        if m <= max_vectors // 2:
            self.seg = max(m, 1)
        else:
            self.seg = max(1, math.isqrt(m))
        self.checkpoints: dict[int, np.ndarray] = {}
        self.final_ends = {min(m, (k + 1) * self.seg) - 1 for k in range(-(-m // self.seg))}
        chi = psi.copy()
        for idx in range(len(items) - 1, -1, -1):
            it = items[idx]
            if isinstance(it, Slot):
                if it.index in self.final_ends:
                    self.checkpoints[it.index] = chi.copy()
            else:
                apply_op(chi[None, :], _ROW0, n, it, adjoint=True)
        self.current: dict[int, np.ndarray] = {}

    def load_segment(self, start: int) -> None:
        end = min(len(self.slot_pos), start + self.seg) - 1
        chi = self.checkpoints[end].copy()
        seg = {end: chi.copy()}
        for idx in range(self.slot_pos[end] - 1, self.slot_pos[start] - 1, -1):
            it = self.items[idx]
            if isinstance(it, Slot):
                seg[it.index] = chi.copy()
            else:
                apply_op(chi[None, :], _ROW0, self.n, it, adjoint=True)
        self.current = seg

    def __getitem__(self, slot: int) -> np.ndarray:
        return self.current[slot]


def _peak_overlap(multi) -> int:
    if not multi:
        return 0
    marks = defaultdict(int)
    for _, ops, _ in multi:
        marks[ops[0][0]] += 1
        marks[ops[-1][0] + 1] -= 1
    live = peak = 0
    for k in sorted(marks):
        live += marks[k]
        peak = max(peak, live)
    return peak


def _sweep(items, n, back: _Backward, single, group, capacity, scores):
    """One forward pass: scores single-slot shots (if given) and the shots in ``group``."""
    dim = 2 ** n
    starts = defaultdict(list)
    mids = defaultdict(list)
    ends = defaultdict(list)
    for shot, ops, lw in group:
        starts[ops[0][0]].append((shot, ops[0][1]))
        for sl, x in ops[1:-1]:
            mids[sl].append((shot, x))
        ends[ops[-1][0]].append((shot, ops[-1][1], lw))

    batch = np.empty((max(1, min(capacity, len(group))), dim), dtype=np.complex128)
    free = list(range(batch.shape[0] - 1, -1, -1))
    row_of: dict[int, int] = {}
    active = np.zeros(0, dtype=np.int64)
    phi = zero_state(n)
    phi2 = phi[None, :]
    for it in items:
        if isinstance(it, Op):
            apply_op(phi2, _ROW0, n, it)
            if len(active):
                apply_op(batch, active, n, it)
            continue
        sl = it.index
        if sl % back.seg == 0:
            back.load_segment(sl)
        a, b = it.qubits
        touched = False
        if sl in single or sl in ends:
            chi = back[sl]
            if sl in single:
                c = K.pair_cross(phi2, _ROW0, chi, n, a, b)[0]
                for shot, x, lw in single[sl]:
                    amp = np.trace(x @ c)
                    scores[shot] = math.exp(lw) * abs(amp) ** 2
            if sl in ends:
                rows = np.array([row_of[s] for s, _, _ in ends[sl]], dtype=np.int64)
                cs = K.pair_cross(batch, rows, chi, n, a, b)
                for (shot, x, lw), c in zip(ends[sl], cs):
                    scores[shot] = math.exp(lw) * abs(np.trace(x @ c)) ** 2
                    free.append(row_of.pop(shot))
                touched = True
        for shot, x in mids.get(sl, ()):
            K.apply_2q(batch, np.array([row_of[shot]], dtype=np.int64), n, a, b, x)
        for shot, x in starts.get(sl, ()):
            if not free:
                grown = np.empty((batch.shape[0] * 2, dim), dtype=np.complex128)
                grown[: batch.shape[0]] = batch
                free.extend(range(grown.shape[0] - 1, batch.shape[0] - 1, -1))
                batch = grown
            r = free.pop()
            row_of[shot] = r
            batch[r] = phi
            K.apply_2q(batch, np.array([r], dtype=np.int64), n, a, b, x)
            touched = True
        if touched:
            active = np.array(sorted(row_of.values()), dtype=np.int64)
    return phi


def simulate_noisy_traj(circuit: Circuit, noise: NoiseModel, shots: int, seed: int,
                        reference: np.ndarray | None = None, final_layout=None,
                        memory_budget_mb: float = 512.0,
                        importance_floor: float = 0.1) -> FidelityEstimate:
    """Estimate the fidelity of the noisy output with ``reference``.

    ``reference`` is a logical-order statevector (default: the ideal output of
    ``circuit`` itself); ``final_layout`` maps it onto the physical qubits the
    way :func:`~qprune.simulator.state_fidelity` does.
    """
    n = circuit.num_qubits
    if n > MAX_STATEVECTOR_QUBITS:
        raise ValueError(f"trajectories limited to {MAX_STATEVECTOR_QUBITS} qubits, got {n}")
    if shots < 1:
        raise ValueError("need at least one shot")
    _check_basis(circuit)
    if reference is None:
        reference = simulate_ideal(circuit)
    psi = np.asarray(reference, dtype=np.complex128)
    if psi.shape != (2 ** n,):
        raise ValueError(f"reference has {psi.shape[0]} amplitudes, circuit needs {2 ** n}")
    if final_layout is not None:
        psi = to_physical_order(psi, getattr(final_layout, "log_to_phys", final_layout))
    psi = np.ascontiguousarray(psi)

    gamma, pz, k0, _ = _slot_ops(noise)
    relax_on = gamma > 0 or pz > 0
    items = fuse(circuit, noisy_cx=True, slot_defaults=(lambda s: (k0, k0)) if relax_on else None)
    rng = np.random.default_rng(seed)
    plan = _plan(items, n, noise, shots, rng, importance_floor)

    vec_bytes = 16 * 2 ** n
    max_vectors = max(4, int(memory_budget_mb * 2 ** 20 / vec_bytes))
    scores = np.full(shots, np.nan)
    back = _Backward(items, n, psi, max_vectors)
    capacity = max(1, max_vectors // 2)
    peak = _peak_overlap(plan.multi)
    n_groups = max(1, math.ceil(1.1 * peak / capacity))
    groups = [plan.multi[g::n_groups] for g in range(n_groups)]

    phi = None
    for g, group in enumerate(groups):
        out = _sweep(items, n, back, plan.single if g == 0 else {}, group, capacity, scores)
        phi = out if phi is None else phi
    amp0 = np.vdot(psi, phi)
    f0 = math.exp(plan.log_weight0) * abs(amp0) ** 2
    unscored = np.isnan(scores)
    assert np.count_nonzero(unscored) == plan.zero_shots
    scores[unscored] = f0
    return FidelityEstimate.from_samples(scores)
