import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qprune.bench import FAMILIES, gen_qft, generate
from qprune.circuit import (
    PRUNABLE_KINDS, Circuit, CircuitBuilder, Gate, GateKind, count_gates, count_two_qubit,
    gate_unitary,
)
from qprune.qasm import QasmError, emit_qasm, parse_qasm

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def random_gate(rng, n):
    kind = list(GateKind)[rng.integers(len(GateKind))]
    qubits = rng.choice(n, kind.num_qubits, replace=False)
    angle = float(rng.uniform(-10, 10)) if kind.parametric else None
    return Gate(kind, tuple(int(q) for q in qubits), angle)


def random_circuit(rng, n, m):
    return Circuit(n, tuple(random_gate(rng, n) for _ in range(m)))


# -- IR ----------------------------------------------------------------------

def test_gate_validation():
    with pytest.raises(ValueError, match="duplicate"):
        Gate(GateKind.CX, (1, 1))
    with pytest.raises(ValueError, match="requires an angle"):
        Gate(GateKind.CRZ, (0, 1))
    with pytest.raises(ValueError, match="takes no angle"):
        Gate(GateKind.H, (0,), 0.3)
    with pytest.raises(ValueError, match="non-finite"):
        Gate(GateKind.RZ, (0,), math.nan)
    with pytest.raises(ValueError):
        Gate(GateKind.X, (0, 1))
    with pytest.raises(ValueError, match="out of range"):
        Circuit(2, (Gate(GateKind.CX, (0, 2)),))


def test_prunable_kinds():
    assert PRUNABLE_KINDS == {GateKind.CRZ, GateKind.CRX, GateKind.CRY, GateKind.CP, GateKind.RZZ}
    assert not GateKind.RZ.prunable and GateKind.RZ.parametric


def test_builder_and_counts():
    c = CircuitBuilder(2).cx(0, 1).cx(1, 0).rz(0.2, 0).build()
    assert count_gates(c, GateKind.CX) == 2
    assert count_gates(c, "rz") == 1
    assert count_gates(c) == 3
    assert count_two_qubit(c) == 2
    assert count_gates(Circuit(3)) == 0
    assert count_gates(gen_qft(4), GateKind.CP) == 6


def test_widen():
    c = gen_qft(3)
    w = c.widen(5)
    assert w.num_qubits == 5 and w.gates == c.gates
    with pytest.raises(ValueError):
        c.widen(2)


def test_unitary_examples():
    assert np.allclose(gate_unitary(Gate(GateKind.RZ, (0,), 0.0)), np.eye(2), atol=0)
    crz = gate_unitary(Gate(GateKind.CRZ, (0, 1), math.pi))
    assert np.allclose(crz, np.diag([1, 1, np.exp(-0.5j * math.pi), np.exp(0.5j * math.pi)]))
    cx = gate_unitary(Gate(GateKind.CX, (0, 1)))
    assert np.array_equal(cx.real, np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]))
    cp = gate_unitary(Gate(GateKind.CP, (0, 1), 0.4))
    assert np.allclose(cp, np.diag([1, 1, 1, np.exp(0.4j)]))


def test_unitarity_of_random_gates():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(1000):
        g = random_gate(rng, 3)
        u = gate_unitary(g)
        worst = max(worst, np.abs(u.conj().T @ u - np.eye(len(u))).max())
    assert worst <= 1e-12


# -- QASM --------------------------------------------------------------------

def test_parse_examples():
    c = parse_qasm("qreg q[2]; h q[0]; cx q[0],q[1];")
    assert c.num_qubits == 2
    assert c.gates == (Gate(GateKind.H, (0,)), Gate(GateKind.CX, (0, 1)))
    c = parse_qasm("qreg q[2]; crz(pi/6) q[0],q[1];")
    assert c.gates == (Gate(GateKind.CRZ, (0, 1), math.pi / 6),)


def test_parse_expressions_and_header():
    c = parse_qasm(HEADER + "qreg r[3];\nrz(-(pi + 1)/2*3) r[2];\nbarrier r;\ncu1(2e-3) r[0],r[1];\n")
    assert c.gates[0].angle == pytest.approx(-(math.pi + 1) / 2 * 3)
    assert c.gates[1].kind is GateKind.CP and c.gates[1].angle == 2e-3


@pytest.mark.parametrize("text, fragment", [
    ("qreg q[1]; cx q[0],q[0];", "duplicate"),
    ("qreg q[2]; h q[2];", "out of range"),
    ("qreg q[2]; ccx q[0],q[1],q[0];", "unsupported"),
    ("qreg q[2]; rz(pi*) q[0];", "expression"),
    ("h q[0];", "qreg"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(QasmError, match=fragment) as info:
        parse_qasm(text)
    assert info.value.line >= 1


def test_emit_examples():
    assert "x q[0];" in emit_qasm(Circuit(1, (Gate(GateKind.X, (0,)),)))
    text = emit_qasm(Circuit(2, (Gate(GateKind.CP, (0, 1), 0.1),)))
    assert "cp(0.1) q[0],q[1];" in text


def test_round_trip_random_20_gate_circuit():
    c = random_circuit(np.random.default_rng(3), 4, 20)
    assert parse_qasm(emit_qasm(c)).gates == c.gates


@pytest.mark.parametrize("family", FAMILIES)
def test_round_trip_generators(family):
    c = generate(family, 6, seed=2)
    back = parse_qasm(emit_qasm(c))
    assert back.num_qubits == c.num_qubits and back.gates == c.gates


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False).filter(lambda x: x != 0))
def test_angle_round_trip_precision(theta):
    c = Circuit(2, (Gate(GateKind.RZZ, (1, 0), theta),))
    back = parse_qasm(emit_qasm(c)).gates[0].angle
    assert abs(back - theta) <= 1e-12 * abs(theta)
