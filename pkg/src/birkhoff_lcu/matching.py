"""Perfect matchings on the support graph of a non-negative square matrix.

Rows are the left vertex class and columns the right one; edge ``(i, j)``
exists iff ``weights[i, j] > threshold``. Three engines are provided:

* ``perfect_matching``: any perfect matching (Hopcroft-Karp, optionally
  warm-started from a previous matching),
* ``max_weight_perfect_matching``: maximum total weight (assignment problem),
* ``bottleneck_perfect_matching``: maximum smallest edge (maximin).

All three return ``None`` when no perfect matching exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .matrix import ZERO_THRESHOLD, Permutation, as_matrix

_INF = 1 << 30


@dataclass(frozen=True)
class SupportGraph:
    weights: np.ndarray
    threshold: float = ZERO_THRESHOLD

    @classmethod
    def from_matrix(cls, m, threshold: float = ZERO_THRESHOLD) -> "SupportGraph":
        return cls(as_matrix(m), float(threshold))

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def mask(self) -> np.ndarray:
        return self.weights > self.threshold

    def adjacency(self, floor: float | None = None) -> list[list[int]]:
        """Column lists per row, ascending; ``floor`` keeps only edges with weight >= floor."""
        mask = self.mask
        if floor is not None:
            mask = mask & (self.weights >= floor)
        return [np.flatnonzero(row).tolist() for row in mask]


@dataclass(frozen=True)
class MatchingResult:
    perm: Permutation
    min_edge: float
    total_weight: float


def _result(g: SupportGraph, mapping: Sequence[int]) -> MatchingResult:
    perm = Permutation(tuple(mapping))
    picked = perm.entries(g.weights)
    # fsum is exactly rounded, so the total does not depend on summation order
    return MatchingResult(perm, float(picked.min()), math.fsum(picked.tolist()))


def hopcroft_karp(adj: list[list[int]], n_cols: int, initial: Sequence[int] | None = None) -> list[int]:
    """Maximum-cardinality matching; returns ``match_row`` with -1 for unmatched rows.

    ``initial`` is a row->column assignment to start from; pairs that are
    not edges of ``adj`` or that clash on a column are dropped first.
    """
    n_rows = len(adj)
    match_row = [-1] * n_rows
    match_col = [-1] * n_cols
    if initial is not None:
        for u, v in enumerate(initial):
            if v >= 0 and match_col[v] == -1 and v in adj[u]:
                match_row[u] = v
                match_col[v] = u

    dist = [0] * n_rows

    def bfs() -> bool:
        queue = []
        for u in range(n_rows):
            if match_row[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        found = False
        for u in queue:
            for v in adj[u]:
                w = match_col[v]
                if w == -1:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_col[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_row[u] = v
                match_col[v] = u
                return True
        dist[u] = _INF
        return False

    while bfs():
        for u in range(n_rows):
            if match_row[u] == -1:
                dfs(u)
    return match_row


def perfect_matching(g: SupportGraph, initial: Sequence[int] | Permutation | None = None) -> MatchingResult | None:
    """Some perfect matching of ``g``, or ``None`` if Hall's condition fails.

    Passing the previous step's permutation as ``initial`` lets the search
    re-augment only the rows whose edges disappeared.
    """
    if isinstance(initial, Permutation):
        initial = initial.mapping
    match_row = hopcroft_karp(g.adjacency(), g.n, initial)
    if -1 in match_row:
        return None
    return _result(g, match_row)


def max_weight_perfect_matching(g: SupportGraph) -> MatchingResult | None:
    """Perfect matching of maximum total weight using only present edges.

    Absent edges get a sentinel weight so negative that any assignment
    touching one scores below every assignment that avoids them; such an
    assignment is rejected afterwards.
    """
    mask = g.mask
    if not mask.any(axis=1).all() or not mask.any(axis=0).all():
        return None
    w = g.weights
    top = float(np.abs(w[mask]).max())
    sentinel = -(g.n * top + 1.0) * 2.0
    cost = np.where(mask, w, sentinel)
    rows, cols = linear_sum_assignment(cost, maximize=True)
    if not mask[rows, cols].all():
        return None
    mapping = np.empty(g.n, dtype=int)
    mapping[rows] = cols
    return _result(g, mapping.tolist())


def bottleneck_perfect_matching(g: SupportGraph) -> MatchingResult | None:
    """Perfect matching maximising its smallest edge weight.

    Binary search over the sorted distinct edge weights; each probe asks
    whether the edges at or above the candidate still admit a perfect
    matching. Probes are warm-started from the last feasible matching.
    """
    levels = np.unique(g.weights[g.mask])
    if levels.size == 0:
        return None
    best = hopcroft_karp(g.adjacency(), g.n)
    if -1 in best:
        return None
    # the current best already certifies feasibility up to its own minimum
    lo = int(np.searchsorted(levels, g.weights[np.arange(g.n), best].min()))
    hi = levels.size - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        trial = hopcroft_karp(g.adjacency(floor=levels[mid]), g.n, best)
        if -1 in trial:
            hi = mid - 1
        else:
            best = trial
            lo = int(np.searchsorted(levels, g.weights[np.arange(g.n), best].min()))
            lo = max(lo, mid)
    return _result(g, best)
