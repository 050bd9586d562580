"""Birkhoff-von Neumann decompositions of doubly stochastic matrices.

Every variant runs the same peeling loop: pick a perfect matching on the
support of the residual, subtract its smallest entry times the matching's
permutation matrix, repeat until the entrywise l1 norm of the residual is
at most ``eps``. They differ only in which matching is picked:

================  ===========================================
Original          any perfect matching (Hopcroft-Karp)
LargestWeight     maximum total weight
Bottleneck        maximum smallest entry
Threshold         any matching avoiding entries <= theta
================  ===========================================

``cutoff_prune`` post-processes a finished decomposition by dropping its
lightest terms.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import Degenerate, IterationLimitExceeded, NotDoublyStochastic, ToleranceTooTight
from .matching import (
    MatchingResult,
    SupportGraph,
    bottleneck_perfect_matching,
    max_weight_perfect_matching,
    perfect_matching,
)
from .matrix import (
    DEFAULT_TOLERANCES,
    Permutation,
    ToleranceConfig,
    as_matrix,
    frobenius_norm,
    is_doubly_stochastic,
    l1_norm,
)


class Variant(str, enum.Enum):
    ORIGINAL = "original"
    LARGEST_WEIGHT = "largest"
    BOTTLENECK = "bottleneck"
    THRESHOLD = "threshold"
    CUTOFF_PRUNED = "cutoff"


@dataclass(frozen=True)
class Decomposition:
    """Convex combination ``sum_k weights[k] * P_k``.

    ``weights`` are normalised to sum to 1; ``raw_weights`` are the amounts
    actually subtracted from the residual. ``common_sums[t]`` is the shared
    row/column sum of the residual before step ``t`` (the last entry is the
    final residual).
    """

    weights: tuple[float, ...]
    permutations: tuple[Permutation, ...]
    raw_weights: tuple[float, ...]
    residual_l1: float
    variant: Variant
    epsilon: float
    theta: float | None = None
    common_sums: tuple[float, ...] = field(default=(), repr=False)

    @property
    def k(self) -> int:
        return len(self.permutations)

    @property
    def n(self) -> int:
        return self.permutations[0].n if self.permutations else 0

    @property
    def terms(self) -> list[tuple[float, Permutation]]:
        return list(zip(self.weights, self.permutations))

    def to_dict(self) -> dict:
        out = {
            "variant": self.variant.value,
            "eps": self.epsilon,
            "K": self.k,
            "weights": list(self.weights),
            "raw_weights": list(self.raw_weights),
            "permutations": [list(p.mapping) for p in self.permutations],
            "residual_l1": self.residual_l1,
        }
        if self.theta is not None:
            out["theta"] = self.theta
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Decomposition":
        weights = tuple(float(w) for w in data["weights"])
        return cls(
            weights=weights,
            permutations=tuple(Permutation(tuple(p)) for p in data["permutations"]),
            raw_weights=tuple(float(w) for w in data.get("raw_weights", weights)),
            residual_l1=float(data.get("residual_l1", 0.0)),
            variant=Variant(data["variant"]),
            epsilon=float(data["eps"]),
            theta=None if data.get("theta") is None else float(data["theta"]),
        )


def _normalise(raw: list[float]) -> tuple[float, ...]:
    total = math.fsum(raw)
    return tuple(w / total for w in raw)


def _common_sum(r: np.ndarray) -> float:
    return float(r.sum()) / r.shape[0]


Selector = Callable[[SupportGraph, Permutation | None], MatchingResult | None]


def _select_any(g, previous):
    return perfect_matching(g, initial=previous)


def _select_largest(g, previous):
    return max_weight_perfect_matching(g)


def _select_bottleneck(g, previous):
    return bottleneck_perfect_matching(g)


def _peel(
    s,
    eps: float,
    select: Selector,
    variant: Variant,
    theta: float | None,
    tolerances: ToleranceConfig,
) -> Decomposition:
    s = as_matrix(s)
    n = s.shape[0]
    if not is_doubly_stochastic(s, tolerances.ds_tolerance):
        raise NotDoublyStochastic(
            f"row/column sums or signs are off by more than {tolerances.ds_tolerance:g}"
        )
    if not eps > 0:
        raise ValueError("eps must be positive")
    edge_floor = tolerances.zero_threshold if theta is None else max(theta, tolerances.zero_threshold)

    r = s.copy()
    perms: list[Permutation] = []
    raw: list[float] = []
    sums = [_common_sum(r)]
    previous = None
    cap = n * n + 1
    residual = l1_norm(r)
    while residual > eps:
        if len(perms) >= cap:
            raise IterationLimitExceeded(f"{variant.value} decomposition exceeded {cap} steps")
        found = select(SupportGraph(r, edge_floor), previous)
        if found is None:
            break
        idx = np.asarray(found.perm.mapping)
        w = found.min_edge
        # w is the smallest picked entry, so no picked entry goes negative
        r[np.arange(n), idx] -= w
        perms.append(found.perm)
        raw.append(w)
        sums.append(_common_sum(r))
        previous = found.perm
        residual = l1_norm(r)

    if not perms:
        raise Degenerate("support graph has no perfect matching")
    return Decomposition(
        weights=_normalise(raw),
        permutations=tuple(perms),
        raw_weights=tuple(raw),
        residual_l1=residual,
        variant=variant,
        epsilon=eps,
        theta=theta,
        common_sums=tuple(sums),
    )


def decompose_original(s, eps: float, tolerances: ToleranceConfig = DEFAULT_TOLERANCES) -> Decomposition:
    """Classic greedy peeling with an arbitrary perfect matching per step.

    Each step re-augments the previous step's matching, which is a valid
    "any matching" choice and keeps a step at roughly O(N^2).
    """
    return _peel(s, eps, _select_any, Variant.ORIGINAL, None, tolerances)


def decompose_largest_weight(s, eps: float, tolerances: ToleranceConfig = DEFAULT_TOLERANCES) -> Decomposition:
    return _peel(s, eps, _select_largest, Variant.LARGEST_WEIGHT, None, tolerances)


def decompose_bottleneck(s, eps: float, tolerances: ToleranceConfig = DEFAULT_TOLERANCES) -> Decomposition:
    """Peel maximin matchings.

    On dense inputs each subtracted weight is typically at least
    ``common_sum / N``, so the common sum contracts by ``1 - 1/N`` per step.
    That is not guaranteed: small matrices exist whose best matching has a
    smaller minimum entry. The only unconditional bound is ``N^2 - 2N + 2``.
    """
    return _peel(s, eps, _select_bottleneck, Variant.BOTTLENECK, None, tolerances)


def decompose_threshold(
    s, eps: float, theta: float, tolerances: ToleranceConfig = DEFAULT_TOLERANCES
) -> Decomposition:
    """Original peeling restricted to residual entries strictly above ``theta``.

    Stops early once no perfect matching survives the pruning, so
    ``residual_l1`` may end above ``eps``.
    """
    if theta < 0:
        raise ValueError("theta must be non-negative")
    return _peel(s, eps, _select_any, Variant.THRESHOLD, float(theta), tolerances)


def find_threshold(
    s, eps: float, resolution: float = 1e-6, tolerances: ToleranceConfig = DEFAULT_TOLERANCES
) -> float:
    """Largest ``theta`` found by bisection on ``[0, max entry]`` whose
    threshold decomposition still ends with ``residual_l1 <= eps``."""
    s = as_matrix(s)
    if not eps > 0:
        raise ValueError("eps must be positive")

    def ok(theta: float) -> bool:
        try:
            return decompose_threshold(s, eps, theta, tolerances).residual_l1 <= eps
        except Degenerate:
            return False

    lo, hi = 0.0, float(s.max())
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def reconstruct(d: Decomposition, raw: bool = False) -> np.ndarray:
    """``sum_k w_k P_k`` with normalised weights (or the raw ones if ``raw``)."""
    return _combine(d.raw_weights if raw else d.weights, d.permutations)


def _combine(weights, perms) -> np.ndarray:
    n = perms[0].n
    out = np.zeros((n, n))
    rows = np.arange(n)
    for w, p in zip(weights, perms):
        out[rows, np.asarray(p.mapping)] += w
    return out


def _frobenius_error(s: np.ndarray, raw: list[float], perms: list[Permutation]) -> float:
    return frobenius_norm(s - _combine(_normalise(raw), perms))


def cutoff_prune(d: Decomposition, s, tol: float) -> Decomposition:
    """Drop the lightest terms while the renormalised Frobenius error stays <= ``tol``.

    Terms are ranked by raw weight (ties keep extraction order) and removed
    one at a time from the light end; pruning stops at the first removal
    that would push the error above ``tol`` or when one term is left.

    Raises:
        ToleranceTooTight: the unpruned decomposition already misses ``tol``.
    """
    s = as_matrix(s)
    order = sorted(range(d.k), key=lambda i: (-d.raw_weights[i], i))
    kept = order[:]
    err = _frobenius_error(s, [d.raw_weights[i] for i in kept], [d.permutations[i] for i in kept])
    if err > tol:
        raise ToleranceTooTight(f"full decomposition has Frobenius error {err:.3e} > {tol:.3e}")
    while len(kept) > 1:
        trial = kept[:-1]
        trial_err = _frobenius_error(s, [d.raw_weights[i] for i in trial], [d.permutations[i] for i in trial])
        if trial_err > tol:
            break
        kept, err = trial, trial_err
    # keep the surviving terms in their original extraction order
    kept.sort()
    raw = [d.raw_weights[i] for i in kept]
    perms = [d.permutations[i] for i in kept]
    return Decomposition(
        weights=_normalise(raw),
        permutations=tuple(perms),
        raw_weights=tuple(raw),
        residual_l1=l1_norm(s - _combine(raw, perms)),
        variant=Variant.CUTOFF_PRUNED,
        epsilon=tol,
        theta=None,
    )


DECOMPOSERS = {
    Variant.ORIGINAL: decompose_original,
    Variant.LARGEST_WEIGHT: decompose_largest_weight,
    Variant.BOTTLENECK: decompose_bottleneck,
}


def decompose(s, eps: float, variant: Variant | str = Variant.LARGEST_WEIGHT, **kwargs) -> Decomposition:
    """Dispatch on ``variant``; threshold and cutoff need ``theta`` / source settings.

    ``threshold`` uses ``theta`` if given, else ``find_threshold``.
    ``cutoff`` prunes a near-exact original decomposition (``source_eps``,
    default 1e-9) down to Frobenius tolerance ``eps``.
    """
    variant = Variant(variant)
    if variant in DECOMPOSERS:
        return DECOMPOSERS[variant](s, eps)
    if variant is Variant.THRESHOLD:
        theta = kwargs.get("theta")
        if theta is None:
            theta = find_threshold(s, eps)
        return decompose_threshold(s, eps, theta)
    source = decompose_original(s, kwargs.get("source_eps", 1e-9))
    return cutoff_prune(source, s, eps)
