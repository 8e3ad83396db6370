"""Exact density-matrix evolution under the CX noise model."""

from __future__ import annotations

import numpy as np

from ..circuit import BASIS_KINDS, Circuit
from . import _kernels as K
from .noise import NoiseModel
from .statevector import Op, fuse

MAX_DENSITY_QUBITS = 10

_ROW0 = np.zeros(1, dtype=np.int64)


def _check_basis(circuit: Circuit) -> None:
    bad = {g.kind.value for g in circuit.gates if g.kind not in BASIS_KINDS}
    if bad:
        raise ValueError(f"noisy simulation expects basis gates only, found {sorted(bad)}")


def simulate_noisy_dm(circuit: Circuit, noise: NoiseModel) -> np.ndarray:
    """Final 2^n x 2^n density matrix starting from |0...0>."""
    n = circuit.num_qubits
    if n > MAX_DENSITY_QUBITS:
        raise ValueError(f"density matrix limited to {MAX_DENSITY_QUBITS} qubits, got {n}")
    _check_basis(circuit)
    gamma, coh = noise.relaxation
    rho = np.zeros(4 ** n, dtype=np.complex128)
    rho[0] = 1.0
    vec = rho[None, :]
    m = 2 * n
    for it in fuse(circuit, noisy_cx=True):
        if isinstance(it, Op):
            u, uc = it.matrix, it.matrix.conj().copy()
            if len(it.qubits) == 1:
                (q,) = it.qubits
                K.apply_1q(vec, _ROW0, m, q, u)
                K.apply_1q(vec, _ROW0, m, n + q, uc)
            else:
                a, b = it.qubits
                K.apply_2q(vec, _ROW0, m, a, b, u)
                K.apply_2q(vec, _ROW0, m, n + a, n + b, uc)
        else:
            a, b = it.qubits
            if noise.p2 > 0:
                K.dm_depolarize(rho, n, a, b, noise.p2)
            if gamma > 0 or coh < 1:
                K.dm_relax(rho, n, a, gamma, coh)
                K.dm_relax(rho, n, b, gamma, coh)
    return rho.reshape(2 ** n, 2 ** n)
