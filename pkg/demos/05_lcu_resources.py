"""
LCU footprint: permutations against Pauli strings
=================================================

For a random 16x16 doubly stochastic matrix (4 system qubits) compare the
ancilla register needed by each decomposition.
"""

import math

import numpy as np

from birkhoff_lcu import (
    cutoff_prune,
    decompose_bottleneck,
    decompose_largest_weight,
    decompose_original,
    pauli_term_count,
    random_doubly_stochastic,
    resource_report,
    success_probability,
)

s = random_doubly_stochastic(16, seed=1)
eps = 0.01

decs = {
    "original": decompose_original(s, eps),
    "largest": decompose_largest_weight(s, eps),
    "bottleneck": decompose_bottleneck(s, eps),
    "cutoff": cutoff_prune(decompose_original(s, 1e-9), s, eps),
}
for name, d in decs.items():
    rep = resource_report(d, s, singular_values=True)
    print(f"{name:>10}: K={rep.k:4d} ancillas={rep.ancilla_qubits} alpha={rep.alpha:.12f} "
          f"p_succ(+)={rep.p_succ_uniform:.12f} sigma2={rep.second_singular_value:.3f}")

pc = pauli_term_count(s)
print(f"{'pauli':>10}: K={pc.nonzero_terms:4d} ancillas={math.ceil(math.log2(pc.nonzero_terms))} "
      f"alpha={pc.coefficient_l1:.3f}")

# %%
# a generic state keeps mostly its overlap with the uniform vector, since
# the other singular values of S are small
psi = np.random.default_rng(0).normal(size=16)
psi /= np.linalg.norm(psi)
print("p_succ(random psi) =", success_probability(s, psi))
print("overlap^2 with uniform =", psi.sum() ** 2 / 16)
