"""
Term count against dimension
============================

Paired-seed campaign over N = 4..64 at l1 tolerance 0.01. Original peeling
grows like N^2; largest-weight and bottleneck peeling grow roughly like N.
Writes ``scaling.csv`` next to this script.
"""

from pathlib import Path

from birkhoff_lcu.bench import emit_csv, run_scaling_experiment, summarize_scaling

rows = run_scaling_experiment(
    sizes=[4, 8, 16, 32, 64],
    variants=["original", "largest", "bottleneck"],
    eps=0.01,
    trials=5,
    base_seed=0,
)
emit_csv(rows, Path(__file__).with_name("scaling.csv"))

print(f"{'N':>4} {'variant':>10} {'mean K':>8} {'std':>6} {'K/N':>6}")
for s in summarize_scaling(rows):
    print(f"{s['n']:>4} {s['variant']:>10} {s['mean_k']:>8.1f} {s['std_k']:>6.2f} {s['mean_k_over_n']:>6.2f}")
