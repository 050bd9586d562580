"""
Term count against precision
============================

Largest-weight peeling of 16x16 matrices for tolerances 1e-1 .. 1e-4.
"""

from birkhoff_lcu.bench import run_precision_experiment

for row in run_precision_experiment(16, [0.1, 0.01, 0.001, 0.0001], trials=5, base_seed=0):
    print(f"eps={row.eps:<8g} mean K={row.mean_k:6.1f}  std={row.std_k:.2f}")
