"""Seeded experiment campaigns: term count vs dimension and vs precision.

Trial seeds are ``base_seed + n * 1000 + trial`` so every variant sees the
same matrices at a given size. Rows come back ordered by
(size, variant, trial) whatever order the trials finish in.
"""

from __future__ import annotations

import csv
import dataclasses
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable, Sequence

from .bvn import Variant, decompose
from .matrix import random_doubly_stochastic


@dataclass(frozen=True)
class ScalingExperimentRow:
    n: int
    variant: str
    trial_seed: int
    k: int
    runtime_ms: float
    residual_l1: float
    eps: float
    error: str = ""


@dataclass(frozen=True)
class PrecisionExperimentRow:
    n: int
    eps: float
    mean_k: float
    std_k: float
    trials: int


def trial_seed(base_seed: int, n: int, trial: int) -> int:
    return base_seed + n * 1000 + trial


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _run_trial(n: int, variant: str, seed: int, eps: float, timed: bool) -> ScalingExperimentRow:
    try:
        s = random_doubly_stochastic(n, seed)
        t0 = time.perf_counter()
        d = decompose(s, eps, variant)
        elapsed = (time.perf_counter() - t0) * 1e3 if timed else 0.0
    except Exception as exc:  # a failed trial becomes an error row
        return ScalingExperimentRow(n, variant, seed, 0, 0.0, math.nan, eps, f"{type(exc).__name__}: {exc}")
    return ScalingExperimentRow(n, variant, seed, d.k, elapsed, d.residual_l1, eps)


def run_scaling_experiment(
    sizes: Sequence[int],
    variants: Sequence[str | Variant],
    eps: float = 0.01,
    trials: int = 5,
    base_seed: int = 0,
    workers: int = 1,
    timed: bool = True,
) -> list[ScalingExperimentRow]:
    """One row per (size, variant, trial).

    With ``timed=False`` the runtime column is zeroed, which makes repeated
    campaigns byte-identical.
    """
    for n in sizes:
        if n < 4 or not _is_power_of_two(n):
            raise ValueError(f"sizes must be powers of two >= 4, got {n}")
    jobs = [
        (n, Variant(v).value, trial_seed(base_seed, n, t), eps, timed)
        for n in sizes
        for v in variants
        for t in range(trials)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_trial, *zip(*jobs)))
    return [_run_trial(*job) for job in jobs]


def summarize_scaling(rows: Iterable[ScalingExperimentRow]) -> list[dict]:
    """Mean and population std of k (and k/n) per (n, variant), skipping error rows."""
    groups: dict[tuple[int, str], list[int]] = {}
    failures: dict[tuple[int, str], int] = {}
    for row in rows:
        key = (row.n, row.variant)
        groups.setdefault(key, [])
        if row.error:
            failures[key] = failures.get(key, 0) + 1
        else:
            groups[key].append(row.k)
    out = []
    for (n, variant), ks in groups.items():
        mean = statistics.fmean(ks) if ks else math.nan
        out.append({
            "n": n,
            "variant": variant,
            "trials": len(ks),
            "failed": failures.get((n, variant), 0),
            "mean_k": mean,
            "std_k": statistics.pstdev(ks) if ks else math.nan,
            "mean_k_over_n": mean / n,
        })
    return out


def run_precision_experiment(
    n: int,
    eps_list: Sequence[float],
    trials: int = 5,
    base_seed: int = 0,
    workers: int = 1,
) -> list[PrecisionExperimentRow]:
    """Largest-weight term count statistics for each tolerance in ``eps_list``.

    Failed trials are left out of the statistics; ``trials`` counts the ones
    that succeeded.
    """
    if not _is_power_of_two(n):
        raise ValueError(f"n must be a power of two, got {n}")
    out = []
    for eps in eps_list:
        rows = run_scaling_experiment([n], [Variant.LARGEST_WEIGHT], eps, trials, base_seed, workers, timed=False)
        ks = [r.k for r in rows if not r.error]
        out.append(PrecisionExperimentRow(
            n=n,
            eps=eps,
            mean_k=statistics.fmean(ks) if ks else math.nan,
            std_k=statistics.pstdev(ks) if ks else math.nan,
            trials=len(ks),
        ))
    return out


def emit_csv(rows: Sequence, path, row_type: type | None = None) -> Path:
    """Write ``rows`` (dataclass instances) as CSV with a header in field order.

    ``row_type`` supplies the header when ``rows`` is empty.
    """
    path = Path(path)
    row_type = row_type or (type(rows[0]) if rows else ScalingExperimentRow)
    names = [f.name for f in fields(row_type)]
    try:
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(names)
            for row in rows:
                writer.writerow([_cell(v) for v in dataclasses.astuple(row)])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc
    return path


def _cell(v):
    return repr(v) if isinstance(v, float) else v


def read_csv(path, row_type: type = ScalingExperimentRow) -> list:
    """Parse a file written by ``emit_csv`` back into ``row_type`` instances."""
    path = Path(path)
    types = {f.name: f.type for f in fields(row_type)}
    conv = {"int": int, "float": float, "str": str}
    try:
        with path.open(newline="") as fh:
            reader = csv.DictReader(fh)
            return [row_type(**{k: conv[types[k]](v) for k, v in rec.items()}) for rec in reader]
    except OSError as exc:
        raise OSError(f"cannot read CSV from {path}: {exc}") from exc
