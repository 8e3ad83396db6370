import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qprune.circuit import rotation
from qprune.fidelity import (
    CostModelParams, p2_heuristic, relaxation_times, rotation_fidelity_bound, should_prune,
    swap_fidelity, swaps_per_qubit, wrap_angle,
)
from qprune.simulator import apply_matrix

P = CostModelParams(0.005, 1.25)


def test_rotation_bound_examples():
    assert rotation_fidelity_bound(0.0) == 1.0
    assert rotation_fidelity_bound(math.pi) == pytest.approx(0.0, abs=1e-15)
    assert rotation_fidelity_bound(math.pi / 6) == pytest.approx(0.9330127018922193, abs=1e-15)


def test_wrapping():
    assert wrap_angle(-math.pi) == math.pi
    assert wrap_angle(3 * math.pi) == pytest.approx(math.pi)
    assert rotation_fidelity_bound(2 * math.pi + 0.1) == pytest.approx(rotation_fidelity_bound(0.1))


@pytest.mark.parametrize("d, expected", [
    (0, 1.0),
    (1, 0.9777376146378994),
    (3, 0.9560525198979360),  # s = 2, g = 0.995**6
    (5, 0.9143511522498766),
])
def test_swap_fidelity_values(d, expected):
    assert swap_fidelity(P, d) == pytest.approx(expected, abs=1e-12)


def test_swap_counting():
    assert [swaps_per_qubit(d) for d in range(6)] == [0, 1, 2, 2, 3, 4]
    assert swaps_per_qubit(10, 1.1) == 6  # ceil(11 / 2), not ceil(11.000000000000002)


def test_swap_fidelity_monotone_grid():
    ds = range(50)
    p2s = np.linspace(0.0, 0.5, 50)
    table = np.array([[swap_fidelity(CostModelParams(p), d) for d in ds] for p in p2s])
    assert np.all(np.diff(table, axis=1) <= 0)
    assert np.all(np.diff(table, axis=0) <= 0)
    assert np.all((table >= 0) & (table <= 1))


def test_should_prune_examples():
    for theta in np.linspace(-math.pi, math.pi, 13):
        assert not should_prune(P, theta, 0)
    for d in range(30):
        assert not should_prune(P, math.pi, d)
    theta = math.pi / 6
    assert [should_prune(P, theta, d) for d in (0, 1, 3, 5)] == [False, False, False, True]


def test_swap_distance_four_is_not_pruned_at_pi_over_6():
    # F_swap(4) = 0.934928 sits just above cos^2(pi/12) = 0.933013
    assert swap_fidelity(P, 4) > rotation_fidelity_bound(math.pi / 6)
    assert not should_prune(P, math.pi / 6, 4)


def test_ties_keep_the_gate():
    params = CostModelParams(0.0)
    assert not should_prune(params, 1e-300, 3)
    assert should_prune(params, 0.0, 3) is False  # 1.0 < 1.0 is false


@settings(max_examples=1000, deadline=None)
@given(st.floats(-math.pi, math.pi), st.floats(0.0, 0.5))
def test_prune_monotone_in_distance(theta, p2):
    params = CostModelParams(p2)
    decisions = [should_prune(params, theta, d) for d in range(1, 25)]
    first = decisions.index(True) if True in decisions else len(decisions)
    assert all(decisions[first:])


@settings(max_examples=300, deadline=None)
@given(st.floats(-math.pi, math.pi), st.integers(1, 20), st.floats(0.0, 0.49), st.floats(0.0, 0.49))
def test_prune_monotone_in_p2(theta, d, p_a, p_b):
    lo, hi = sorted((p_a, p_b))
    if should_prune(CostModelParams(lo), theta, d):
        assert should_prune(CostModelParams(hi), theta, d)


def test_p2_heuristic_examples():
    assert p2_heuristic(100, 10) == pytest.approx(0.01)
    assert p2_heuristic(200, 10) == pytest.approx(0.0025)
    assert p2_heuristic(5, 10) == 0.5
    with pytest.raises(ValueError):
        p2_heuristic(0, 3)


def test_relaxation_times_examples():
    assert relaxation_times(10e-6) == pytest.approx((20e-6, 20e-6))
    assert relaxation_times(1.0) == (2.0, 2.0)
    with pytest.raises(ValueError):
        relaxation_times(0.0)


def test_params_validation():
    with pytest.raises(ValueError):
        CostModelParams(1.0)
    with pytest.raises(ValueError):
        CostModelParams(0.01, 0.9)


def _random_state(rng, n):
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return v / np.linalg.norm(v)


def test_rotation_bound_holds_on_random_states():
    rng = np.random.default_rng(5)
    worst = np.inf
    for _ in range(10_000):
        n = int(rng.integers(2, 5))
        psi = _random_state(rng, n)
        axis = rng.normal(size=3)
        theta = float(rng.uniform(-math.pi, math.pi))
        q = int(rng.integers(n))
        overlap = abs(np.vdot(psi, apply_matrix(psi, rotation(axis, theta), [q]))) ** 2
        worst = min(worst, overlap - math.cos(theta / 2) ** 2)
    assert worst >= -1e-10


def test_rotation_bound_is_tight():
    zero = np.array([1, 0], dtype=complex)
    for theta in np.linspace(-math.pi, math.pi, 101):
        overlap = abs(np.vdot(zero, rotation([1, 0, 0], theta) @ zero)) ** 2
        assert abs(overlap - math.cos(theta / 2) ** 2) <= 1e-12
