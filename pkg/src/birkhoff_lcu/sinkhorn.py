"""Reduce non-negative matrices to doubly stochastic form.

Two routes are offered. ``sinkhorn_scale`` finds positive diagonals with
``S = diag(d1) @ A @ diag(d2)`` doubly stochastic, and ``reconstruct_original``
undoes it. ``complete_to_doubly_stochastic`` embeds ``A`` as the principal
block of a doubly stochastic matrix of twice the size, leaving it unscaled
up to a single overall factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NonConvergence, UnsupportedShape
from .matrix import DEFAULT_TOLERANCES, ToleranceConfig, as_matrix, ds_deviation


@dataclass(frozen=True)
class ScalingResult:
    d1: np.ndarray
    d2: np.ndarray
    s: np.ndarray
    iterations: int
    achieved_tol: float
    # max row/column deviation from 1 after each full sweep (index 0 = input)
    history: tuple[float, ...] = ()


@dataclass(frozen=True)
class CompletionResult:
    m: np.ndarray
    scale: float
    original_dim: int

    @property
    def r(self) -> np.ndarray:
        n = self.original_dim
        return np.diag(self.m[:n, n:]).copy()


def _check_scalable(a: np.ndarray, zero_threshold: float) -> None:
    if np.any(a < 0):
        raise InvalidInput("matrix has negative entries")
    support = a > zero_threshold
    if not support.any(axis=1).all():
        raise InvalidInput(f"row {int(np.argmin(support.any(axis=1)))} has no positive entry")
    if not support.any(axis=0).all():
        raise InvalidInput(f"column {int(np.argmin(support.any(axis=0)))} has no positive entry")


def sinkhorn_scale(
    a,
    tol: float = 1e-10,
    max_iter: int = 10_000,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> ScalingResult:
    """Alternate row and column normalisation until the matrix is doubly stochastic.

    Convergence is measured after each full sweep (rows then columns) as
    the largest deviation of any row or column sum from 1.

    Raises:
        InvalidInput: negative entries, or a row/column with nothing above
            the zero threshold.
        NonConvergence: ``max_iter`` sweeps without reaching ``tol``; the
            matrix most likely lacks total support.
    """
    a = as_matrix(a)
    _check_scalable(a, tolerances.zero_threshold)
    n = a.shape[0]
    d1 = np.ones(n)
    d2 = np.ones(n)
    dev = ds_deviation(a)
    history = [dev]
    it = 0
    while dev > tol:
        if it >= max_iter:
            raise NonConvergence(
                f"Sinkhorn stalled at deviation {dev:.3e} after {max_iter} sweeps"
            )
        d1 = 1.0 / (a @ d2)
        d2 = 1.0 / (a.T @ d1)
        it += 1
        s = d1[:, None] * a * d2[None, :]
        dev = ds_deviation(s)
        history.append(dev)
    s = d1[:, None] * a * d2[None, :]
    return ScalingResult(d1=d1, d2=d2, s=s, iterations=it, achieved_tol=dev, history=tuple(history))


def reconstruct_original(r: ScalingResult) -> np.ndarray:
    """Undo the scaling: ``diag(1/d1) @ S @ diag(1/d2)``."""
    if np.any(r.d1 <= 0) or np.any(r.d2 <= 0):
        raise ZeroDivisionError("scaling diagonals must be strictly positive")
    return r.s / r.d1[:, None] / r.d2[None, :]


def complete_to_doubly_stochastic(
    a, tolerances: ToleranceConfig = DEFAULT_TOLERANCES
) -> CompletionResult:
    """Embed ``a`` into the 2N x 2N doubly stochastic matrix ``[[B, D], [D, B]]``.

    ``B = a / scale`` with ``scale = max(1, largest row sum)`` and
    ``D = diag(1 - rowsum(B))``. Only matrices whose i-th row and i-th
    column sums agree (symmetric ones, for instance) can be completed this
    way.
    """
    a = as_matrix(a)
    if np.any(a < 0):
        raise InvalidInput("matrix has negative entries")
    rows, cols = a.sum(axis=1), a.sum(axis=0)
    bad = np.flatnonzero(np.abs(rows - cols) > tolerances.ds_tolerance)
    if bad.size:
        i = int(bad[0])
        raise UnsupportedShape(
            f"row sum {rows[i]:g} != column sum {cols[i]:g} at index {i}; "
            "diagonal completion needs matching sums"
        )
    scale = max(1.0, float(rows.max()))
    b = a / scale
    r = np.clip(1.0 - b.sum(axis=1), 0.0, None)
    n = a.shape[0]
    m = np.zeros((2 * n, 2 * n))
    m[:n, :n] = b
    m[n:, n:] = b
    m[:n, n:] = np.diag(r)
    m[n:, :n] = np.diag(r)
    return CompletionResult(m=m, scale=scale, original_dim=n)
