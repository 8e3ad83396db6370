"""
Pruning an 8-qubit QFT on a 2x4 grid
====================================

Compile the same circuit twice, once keeping every gate and once letting the
router drop far-apart small rotations, then compare CX counts and the noisy
fidelity against the exact QFT state.
"""

from qprune import CostModelParams, compile_pipeline, grid_for_width, p2_heuristic
from qprune.bench import gen_qft
from qprune.fidelity import relaxation_times
from qprune.simulator import (
    NoiseModel, circuit_duration, simulate_ideal, simulate_noisy_dm, state_fidelity,
)

n = 8
source = gen_qft(n)
grid = grid_for_width(n)
print(f"source: {len(source)} gates on {n} qubits, grid {grid.shape[0]}x{grid.shape[1]}")

# Compile without pruning first; its size sets the error rate heuristic.
noisy = compile_pipeline(source, grid, CostModelParams(0.0), "noisy")
p2 = p2_heuristic(len(noisy.compiled), n)
params = CostModelParams(p2)
pruned = compile_pipeline(source, grid, params, "pruned")
print(f"p2 = {p2:.3e}")

for p in pruned.pruned_gates:
    g = source.gates[p.index]
    print(f"  dropped {g.kind.value}({g.angle:.4f}) on {g.qubits} at swap distance {p.distance}")

print(f"CX: {noisy.cx_count} -> {pruned.cx_count}, SWAPs: {noisy.swaps_inserted} -> {pruned.swaps_inserted}")

# Same noise for both: depolarizing after each CX plus relaxation sized to the unpruned run.
t1, t2 = relaxation_times(circuit_duration(noisy.compiled))
noise = NoiseModel(p2, t1, t2)
ideal = simulate_ideal(source)
for name, res in (("noisy", noisy), ("pruned", pruned)):
    rho = simulate_noisy_dm(res.compiled, noise)
    print(f"{name:>6}: fidelity {state_fidelity(ideal, rho, res.final_layout):.4f}")
