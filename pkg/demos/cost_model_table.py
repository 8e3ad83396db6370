"""
When is a small rotation cheaper to drop than to route?
=======================================================

Prints the SWAP-chain fidelity for a range of distances and, for each
distance, the largest rotation angle that the pruning rule would delete.
"""

import math

import numpy as np

from qprune import CostModelParams, rotation_fidelity_bound, should_prune, swap_fidelity

# A typical two-qubit error rate for the devices we have in mind.
params = CostModelParams(p2=0.005)

print(" d   F_swap      largest pruned |theta|")
for d in range(0, 11):
    f = swap_fidelity(params, d)
    # rotation_fidelity_bound is cos^2(theta/2), so invert it on [0, pi]
    limit = 2 * math.acos(math.sqrt(f))
    print(f"{d:2d}   {f:.6f}    {limit:.4f} rad  ({math.degrees(limit):5.1f} deg)")

# The rule itself, checked on a few angles at distance 5
angles = np.array([math.pi / 16, math.pi / 8, math.pi / 6, math.pi / 4])
print()
for theta in angles:
    bound = rotation_fidelity_bound(theta)
    print(f"theta={theta:.4f}  bound={bound:.6f}  prune at d=5: {should_prune(params, theta, 5)}")

# Noisier hardware makes long SWAP chains worse, so larger angles become disposable.
print()
for p2 in (0.001, 0.005, 0.01, 0.02):
    f = swap_fidelity(CostModelParams(p2), 3)
    print(f"p2={p2:<6} F_swap(d=3)={f:.4f}  angle limit {2 * math.acos(math.sqrt(f)):.3f} rad")
