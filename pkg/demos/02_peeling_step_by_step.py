"""
Largest-weight peeling on a 3x3 matrix
======================================

Each step takes the heaviest perfect matching of the residual and removes
its smallest entry times the matching's permutation matrix.
"""

import numpy as np

from birkhoff_lcu import SupportGraph, decompose_largest_weight, max_weight_perfect_matching, reconstruct

np.set_printoptions(precision=3, suppress=True)

s = np.array([
    [0.5, 0.3, 0.2],
    [0.2, 0.5, 0.3],
    [0.3, 0.2, 0.5],
])

r = s.copy()
step = 0
while np.abs(r).sum() > 1e-12:
    m = max_weight_perfect_matching(SupportGraph(r))
    if m is None:
        break
    step += 1
    picked = np.zeros_like(r, dtype=bool)
    picked[np.arange(3), m.perm.mapping] = True
    print(f"step {step}: matching {m.perm.mapping}, weight {m.total_weight:.2f}, subtract {m.min_edge:.2f}")
    print(np.where(picked, r, np.nan))
    r[picked] -= m.min_edge
    print("residual after\n", r)

# %%
# the library call does the same thing and normalises the weights
d = decompose_largest_weight(s, 1e-12)
for w, p in d.terms:
    print(f"{w:.3f} * P{p.mapping}")
print("exact:", np.allclose(reconstruct(d), s))
