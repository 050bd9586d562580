"""
Turning a matrix into a doubly stochastic one
=============================================

Two routes: diagonal (Sinkhorn) scaling, and completion into a matrix of
twice the size that keeps the original as its principal block.
"""

import numpy as np

from birkhoff_lcu import complete_to_doubly_stochastic, reconstruct_original, sinkhorn_scale

np.set_printoptions(precision=4, suppress=True)

# %%
# Sinkhorn scaling: S = diag(d1) A diag(d2)
a = np.array([[1.0, 2.0], [3.0, 4.0]])
r = sinkhorn_scale(a, tol=1e-12)
print("S =\n", r.s)
print("row sums", r.s.sum(axis=1), "col sums", r.s.sum(axis=0))
print("sweeps:", r.iterations)

# undoing the scaling gives A back
print("A recovered =\n", reconstruct_original(r))

# %%
# Completion: M = [[A/c, diag(r)], [diag(r), A/c]]
sym = np.array([[0.3, 0.2, 0.1], [0.2, 0.1, 0.4], [0.1, 0.4, 0.2]])
c = complete_to_doubly_stochastic(sym)
print("scale", c.scale, "padding r", c.r)
print("M =\n", c.m)

# the spectrum of A/c sits untouched in the top-left block
print(np.linalg.eigvalsh(c.m[:3, :3]), np.linalg.eigvalsh(sym / c.scale))
