"""numba kernels. Qubit q of an n-qubit register is bit (n - 1 - q) of the flat index.

Batched kernels take a 2-D ``states`` array and the ``rows`` to update, so a
single vector is passed as ``v[None, :]`` with ``rows = [0]``. A density
matrix of n qubits is handled as a 2n-qubit vector: row qubit q is register
position q and column qubit q is register position n + q.
"""

from __future__ import annotations

import numba as nb
import numpy as np

_JIT = dict(cache=True, nogil=True, fastmath=False)


@nb.njit(**_JIT)
def _insert_zero(x, pos):
    low = x & ((1 << pos) - 1)
    return ((x >> pos) << (pos + 1)) | low


# Gate kernels walk the index space as nested blocks so the innermost loop is
# contiguous; with fastmath this runs about 1.5x faster than bit-inserting
# every index.
_FAST = dict(cache=True, nogil=True, fastmath=True)


@nb.njit(**_FAST)
def apply_1q(states, rows, n, q, u):
    stride = 1 << (n - 1 - q)
    size = states.shape[1]
    u00, u01, u10, u11 = u[0, 0], u[0, 1], u[1, 0], u[1, 1]
    for r in rows:
        s = states[r]
        for h in range(0, size, 2 * stride):
            for i0 in range(h, h + stride):
                i1 = i0 + stride
                x0 = s[i0]
                x1 = s[i1]
                s[i0] = u00 * x0 + u01 * x1
                s[i1] = u10 * x0 + u11 * x1


@nb.njit(**_FAST)
def apply_2q(states, rows, n, a, b, u):
    """4x4 ``u`` in the basis |a b> (a is the high bit of the local index)."""
    ma = 1 << (n - 1 - a)
    mb = 1 << (n - 1 - b)
    slo = min(ma, mb)
    shi = max(ma, mb)
    size = states.shape[1]
    u00, u01, u02, u03 = u[0, 0], u[0, 1], u[0, 2], u[0, 3]
    u10, u11, u12, u13 = u[1, 0], u[1, 1], u[1, 2], u[1, 3]
    u20, u21, u22, u23 = u[2, 0], u[2, 1], u[2, 2], u[2, 3]
    u30, u31, u32, u33 = u[3, 0], u[3, 1], u[3, 2], u[3, 3]
    for r in rows:
        s = states[r]
        for h in range(0, size, 2 * shi):
            for m in range(h, h + shi, 2 * slo):
                for i0 in range(m, m + slo):
                    i1 = i0 + mb
                    i2 = i0 + ma
                    i3 = i0 + ma + mb
                    x0 = s[i0]
                    x1 = s[i1]
                    x2 = s[i2]
                    x3 = s[i3]
                    s[i0] = u00 * x0 + u01 * x1 + u02 * x2 + u03 * x3
                    s[i1] = u10 * x0 + u11 * x1 + u12 * x2 + u13 * x3
                    s[i2] = u20 * x0 + u21 * x1 + u22 * x2 + u23 * x3
                    s[i3] = u30 * x0 + u31 * x1 + u32 * x2 + u33 * x3


@nb.njit(**_FAST)
def pair_cross(states, rows, chi, n, a, b):
    """C[r, j, i] = sum_rest states[r][rest, j] * conj(chi[rest, i]).

    With this, <chi| X |state_r> = trace(X @ C[r]) for any 4x4 X on (a, b).
    """
    ma = 1 << (n - 1 - a)
    mb = 1 << (n - 1 - b)
    slo = min(ma, mb)
    shi = max(ma, mb)
    size = chi.shape[0]
    out = np.zeros((rows.shape[0], 4, 4), dtype=np.complex128)
    acc = np.zeros((4, 4), dtype=np.complex128)
    x = np.empty(4, dtype=np.complex128)
    c = np.empty(4, dtype=np.complex128)
    for t in range(rows.shape[0]):
        s = states[rows[t]]
        acc[:, :] = 0
        for h in range(0, size, 2 * shi):
            for m in range(h, h + shi, 2 * slo):
                for i0 in range(m, m + slo):
                    x[0] = s[i0]
                    x[1] = s[i0 + mb]
                    x[2] = s[i0 + ma]
                    x[3] = s[i0 + ma + mb]
                    c[0] = np.conj(chi[i0])
                    c[1] = np.conj(chi[i0 + mb])
                    c[2] = np.conj(chi[i0 + ma])
                    c[3] = np.conj(chi[i0 + ma + mb])
                    for j in range(4):
                        for i in range(4):
                            acc[j, i] += x[j] * c[i]
        out[t] = acc
    return out


@nb.njit(**_JIT)
def excited_population(state, n, q):
    stride = 1 << (n - 1 - q)
    half = state.shape[0] >> 1
    pos = n - 1 - q
    p1 = 0.0
    tot = 0.0
    for k in range(half):
        i0 = _insert_zero(k, pos)
        i1 = i0 | stride
        a0 = state[i0]
        a1 = state[i1]
        w1 = a1.real * a1.real + a1.imag * a1.imag
        p1 += w1
        tot += w1 + a0.real * a0.real + a0.imag * a0.imag
    return p1 / tot if tot > 0 else 0.0


@nb.njit(**_JIT)
def dm_depolarize(rho, n, a, b, p):
    """rho -> (1 - p) rho + p Tr_ab(rho) (x) I/4 on a flat 4^n density matrix."""
    m = 2 * n
    pos = np.array([m - 1 - a, m - 1 - b, n - 1 - a, n - 1 - b])
    order = np.sort(pos)
    ra, rb, ca, cb = 1 << pos[0], 1 << pos[1], 1 << pos[2], 1 << pos[3]
    blocks = rho.shape[0] >> 4
    keep = 1.0 - p
    for k in range(blocks):
        base = k
        for j in range(4):
            base = _insert_zero(base, order[j])
        d0 = base
        d1 = base | rb | cb
        d2 = base | ra | ca
        d3 = base | ra | rb | ca | cb
        tr = rho[d0] + rho[d1] + rho[d2] + rho[d3]
        for x in range(4):
            rx = (ra if x & 2 else 0) | (rb if x & 1 else 0)
            for y in range(4):
                cy = (ca if y & 2 else 0) | (cb if y & 1 else 0)
                i = base | rx | cy
                rho[i] = keep * rho[i]
        add = p * tr / 4.0
        rho[d0] += add
        rho[d1] += add
        rho[d2] += add
        rho[d3] += add


@nb.njit(**_JIT)
def dm_relax(rho, n, q, gamma, coherence):
    """Amplitude damping gamma plus dephasing so off-diagonals scale by ``coherence``."""
    m = 2 * n
    pr = m - 1 - q
    pc = n - 1 - q
    lo = min(pr, pc)
    hi = max(pr, pc)
    mr = 1 << pr
    mc = 1 << pc
    blocks = rho.shape[0] >> 2
    for k in range(blocks):
        base = _insert_zero(_insert_zero(k, lo), hi)
        i00 = base
        i01 = base | mc
        i10 = base | mr
        i11 = base | mr | mc
        r11 = rho[i11]
        rho[i00] += gamma * r11
        rho[i11] = (1.0 - gamma) * r11
        rho[i01] *= coherence
        rho[i10] *= coherence
