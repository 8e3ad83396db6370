"""Noise model: two-qubit depolarizing plus thermal relaxation after every CX."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from ..circuit import PAULIS, Circuit

DUR_1Q = 35e-9
DUR_2Q = 300e-9


@dataclass(frozen=True)
class NoiseModel:
    p2: float
    t1: float = math.inf
    t2: float = math.inf
    dur_1q: float = DUR_1Q
    dur_2q: float = DUR_2Q

    def __post_init__(self) -> None:
        if not 0.0 <= self.p2 <= 1.0:
            raise ValueError(f"p2 must lie in [0, 1], got {self.p2}")
        if not self.t1 > 0:
            raise ValueError(f"t1 must be positive, got {self.t1}")
        if not 0 < self.t2 <= 2 * self.t1:
            raise ValueError(f"t2 must satisfy 0 < t2 <= 2*t1, got t1={self.t1}, t2={self.t2}")
        if self.dur_1q < 0 or self.dur_2q < 0:
            raise ValueError("gate durations must be non-negative")

    @property
    def relaxation(self) -> tuple[float, float]:
        """(gamma, coherence) of the relaxation applied to each CX operand."""
        return relaxation_params(self.dur_2q, self.t1, self.t2)

    @property
    def noiseless(self) -> bool:
        gamma, coh = self.relaxation
        return self.p2 == 0 and gamma == 0 and coh == 1

    def to_json(self) -> dict:
        return {"p2": self.p2, "t1_s": self.t1, "t2_s": self.t2,
                "dur_1q_s": self.dur_1q, "dur_2q_s": self.dur_2q}

    @classmethod
    def from_json(cls, data: dict) -> NoiseModel:
        return cls(
            p2=float(data["p2"]),
            t1=float(data.get("t1_s", math.inf)),
            t2=float(data.get("t2_s", math.inf)),
            dur_1q=float(data.get("dur_1q_s", DUR_1Q)),
            dur_2q=float(data.get("dur_2q_s", DUR_2Q)),
        )

    @classmethod
    def load(cls, path: str | Path) -> NoiseModel:
        return cls.from_json(json.loads(Path(path).read_text()))


def relaxation_params(duration: float, t1: float, t2: float) -> tuple[float, float]:
    gamma = -math.expm1(-duration / t1)
    coherence = math.exp(-duration / t2)
    return gamma, coherence


def circuit_duration(circuit: Circuit, noise: NoiseModel | None = None) -> float:
    """Serial sum of gate durations in seconds."""
    d1 = noise.dur_1q if noise else DUR_1Q
    d2 = noise.dur_2q if noise else DUR_2Q
    n2 = sum(1 for g in circuit.gates if g.kind.num_qubits == 2)
    return d2 * n2 + d1 * (len(circuit.gates) - n2)


# -- Kraus forms (reference implementations) --------------------------------

TWO_QUBIT_PAULIS = [
    np.kron(PAULIS[a], PAULIS[b]) for a, b in itertools.product("IXYZ", repeat=2)
]


def depolarizing_kraus(p: float) -> list[np.ndarray]:
    """Pair replaced by I/4 with probability p, as 16 weighted Paulis."""
    ops = [math.sqrt(1 - 15 * p / 16) * TWO_QUBIT_PAULIS[0]]
    ops += [math.sqrt(p / 16) * P for P in TWO_QUBIT_PAULIS[1:]]
    return ops


def thermal_relaxation_kraus(duration: float, t1: float, t2: float) -> list[np.ndarray]:
    """Kraus operators for relaxation over ``duration``; needs t2 <= 2 t1.

    K0 = diag(1, e^{-t/T2}), K1 = sqrt(gamma)|0><1|,
    K2 = diag(0, sqrt(1 - gamma - e^{-2t/T2})).
    """
    gamma, coh = relaxation_params(duration, t1, t2)
    rest = max(0.0, 1.0 - gamma - coh * coh)
    k0 = np.diag([1.0, coh]).astype(complex)
    k1 = np.array([[0, math.sqrt(gamma)], [0, 0]], dtype=complex)
    k2 = np.diag([0.0, math.sqrt(rest)]).astype(complex)
    return [k0, k1, k2]


def apply_kraus(rho: np.ndarray, kraus: list[np.ndarray], qubits: tuple[int, ...]) -> np.ndarray:
    """sum_k K rho K^dagger with K acting on ``qubits`` of a 2^n x 2^n matrix."""
    dim = rho.shape[0]
    n = dim.bit_length() - 1
    k = len(qubits)
    rest = [q for q in range(n) if q not in qubits]
    perm = list(qubits) + rest
    t = rho.reshape([2] * (2 * n)).transpose(perm + [n + q for q in perm])
    t = t.reshape(2 ** k, 2 ** (n - k), 2 ** k, 2 ** (n - k))
    out = sum(np.einsum("ij,jakb,lk->ialb", K, t, K.conj()) for K in kraus)
    out = out.reshape([2] * (2 * n))
    inv = np.argsort(perm)
    return out.transpose(list(inv) + [n + q for q in inv]).reshape(dim, dim)
