"""Programmatic benchmark circuits: QFT, amplitude estimation, QAOA and a random stress family."""

from __future__ import annotations

import math

import networkx as nx
import numpy as np

from ..circuit import Circuit, CircuitBuilder, Gate, GateKind

AE_THETA0 = 2 * math.asin(math.sqrt(0.2))


def _qft_body(b: CircuitBuilder, qubits: list[int], inverse: bool = False) -> None:
    n = len(qubits)
    ops: list[tuple] = []
    for i in range(n):
        ops.append(("h", qubits[i]))
        for k in range(i + 1, n):
            ops.append(("cp", math.pi / 2 ** (k - i), qubits[k], qubits[i]))
    for i in range(n // 2):
        ops.append(("swap", qubits[i], qubits[n - 1 - i]))
    if inverse:
        ops = [(op[0], -op[1], *op[2:]) if op[0] == "cp" else op for op in reversed(ops)]
    for op in ops:
        if op[0] == "cp":
            b.cp(op[1], op[2], op[3])
        else:
            b.add(op[0], *op[1:])


def gen_qft(n: int, entangled: bool = False) -> Circuit:
    """Textbook QFT with the final qubit-reversal SWAP layer kept."""
    if n < 2:
        raise ValueError(f"QFT needs at least 2 qubits, got {n}")
    b = CircuitBuilder(n, f"qftentangled_{n}" if entangled else f"qft_{n}")
    if entangled:
        b.h(0)
        for q in range(n - 1):
            b.cx(q, q + 1)
    _qft_body(b, list(range(n)))
    return b.build()


def gen_amplitude_estimation(n: int) -> Circuit:
    """Amplitude-estimation skeleton: n - 1 evaluation qubits and one target.

    The target is prepared with RY(theta0), evaluation qubit k controls
    RY(2^k theta0) on the target, and an inverse QFT closes the evaluation
    register.
    """
    if n < 3:
        raise ValueError(f"amplitude estimation needs at least 3 qubits, got {n}")
    m = n - 1
    target = m
    b = CircuitBuilder(n, f"ae_{n}")
    b.ry(AE_THETA0, target)
    for q in range(m):
        b.h(q)
    for k in range(m):
        b.cry(2 ** k * AE_THETA0, k, target)
    _qft_body(b, list(range(m)), inverse=True)
    return b.build()


def _regular_like_graph(n: int, rng: np.random.Generator) -> nx.Graph:
    if (3 * n) % 2 == 0 and n >= 4:
        return nx.random_regular_graph(3, n, seed=int(rng.integers(2 ** 31)))
    g = nx.random_regular_graph(3, n + 1, seed=int(rng.integers(2 ** 31)))
    g.remove_node(n)
    return g


def gen_qaoa(n: int, layers: int = 1, seed: int = 0, portfolio: bool = False) -> Circuit:
    """QAOA ansatz with RZZ cost terms and an RX mixer.

    ``portfolio`` uses a complete graph with weights in [0.05, 0.5] (dense
    small-angle couplings); otherwise a seeded random 3-regular-like graph
    with unit weights.
    """
    if n < 3 or layers < 1:
        raise ValueError(f"need n >= 3 and layers >= 1, got n={n}, layers={layers}")
    rng = np.random.default_rng(seed)
    if portfolio:
        edges = [(i, j, float(rng.uniform(0.05, 0.5))) for i in range(n) for j in range(i + 1, n)]
    else:
        g = _regular_like_graph(n, rng)
        edges = [(min(i, j), max(i, j), 1.0) for i, j in sorted(g.edges())]
    gammas = rng.uniform(0, math.pi, layers)
    betas = rng.uniform(0, math.pi, layers)
    b = CircuitBuilder(n, f"{'portfolioqaoa' if portfolio else 'qaoa'}_{n}")
    for q in range(n):
        b.h(q)
    for gamma, beta in zip(gammas, betas):
        for i, j, w in edges:
            b.rzz(gamma * w, i, j)
        for q in range(n):
            b.rx(2 * beta, q)
    return b.build()


def gen_random_parametric(n: int, depth: int | None = None, seed: int = 0) -> Circuit:
    """Random mix of layers of single-qubit rotations and parametric two-qubit gates.

    Angles are drawn log-uniformly in [1e-3, pi] so many gates are small.
    """
    if n < 2:
        raise ValueError(f"need at least 2 qubits, got {n}")
    rng = np.random.default_rng(seed)
    depth = depth or 2 * n
    kinds = [GateKind.CRZ, GateKind.CRX, GateKind.CRY, GateKind.CP, GateKind.RZZ]
    gates: list[Gate] = [Gate(GateKind.H, (q,)) for q in range(n)]
    for _ in range(depth):
        for q in range(n):
            gates.append(Gate(GateKind.RY, (q,), float(rng.uniform(-math.pi, math.pi))))
        for _ in range(max(1, n // 2)):
            a, b = (int(x) for x in rng.choice(n, 2, replace=False))
            angle = float(np.exp(rng.uniform(math.log(1e-3), math.log(math.pi))))
            angle *= rng.choice([-1.0, 1.0])
            gates.append(Gate(kinds[int(rng.integers(len(kinds)))], (a, b), angle))
    return Circuit(n, tuple(gates), f"random_parametric_{n}")


FAMILIES = ("qft", "qft_entangled", "amplitude_estimation", "qaoa", "portfolio_qaoa", "random_parametric")


def generate(family: str, n: int, seed: int = 0, layers: int = 1) -> Circuit:
    if family == "qft":
        return gen_qft(n)
    if family == "qft_entangled":
        return gen_qft(n, entangled=True)
    if family == "amplitude_estimation":
        return gen_amplitude_estimation(n)
    if family == "qaoa":
        return gen_qaoa(n, layers, seed)
    if family == "portfolio_qaoa":
        return gen_qaoa(n, layers, seed, portfolio=True)
    if family == "random_parametric":
        return gen_random_parametric(n, seed=seed)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
