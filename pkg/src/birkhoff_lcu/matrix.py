"""Dense matrix and permutation primitives shared by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype float64. Permutations
are small immutable value objects; ``Permutation.mapping[i]`` is the column
selected in row ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import InvalidInput

ZERO_THRESHOLD = 1e-12
DS_TOLERANCE = 1e-8


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds.

    Entries ``<= zero_threshold`` are structural zeros (no graph edge);
    ``ds_tolerance`` bounds how far a row or column sum may stray from 1
    for a matrix to be accepted as doubly stochastic.
    """

    zero_threshold: float = ZERO_THRESHOLD
    ds_tolerance: float = DS_TOLERANCE

    def __post_init__(self):
        if not (self.zero_threshold > 0 and self.ds_tolerance > 0):
            raise ValueError("tolerances must be strictly positive")
        if not self.zero_threshold < self.ds_tolerance:
            raise ValueError("zero_threshold must be below ds_tolerance")


DEFAULT_TOLERANCES = ToleranceConfig()


@dataclass(frozen=True)
class Permutation:
    mapping: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.mapping)
        if sorted(m) != list(range(len(m))):
            raise ValueError(f"not a bijection on 0..{len(m) - 1}: {m}")
        object.__setattr__(self, "mapping", m)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __len__(self) -> int:
        return len(self.mapping)

    def __iter__(self):
        return iter(self.mapping)

    def __getitem__(self, i):
        return self.mapping[i]

    def to_matrix(self) -> np.ndarray:
        return permutation_to_matrix(self)

    def entries(self, m: np.ndarray) -> np.ndarray:
        """Entries ``m[i, mapping[i]]`` picked out by this permutation."""
        return m[np.arange(self.n), np.asarray(self.mapping)]


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Validate and convert ``m`` to a square finite float64 array."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise InvalidInput(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInput(f"{name} has non-finite entries")
    return a


def ds_deviation(m: np.ndarray) -> float:
    """Largest absolute deviation of any row or column sum from 1."""
    m = np.asarray(m, dtype=float)
    return float(max(np.max(np.abs(m.sum(axis=1) - 1.0)), np.max(np.abs(m.sum(axis=0) - 1.0))))


def is_doubly_stochastic(m, tol: float = DS_TOLERANCE) -> bool:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or not np.all(np.isfinite(m)):
        return False
    return bool(np.all(m >= -tol) and ds_deviation(m) <= tol)


def permutation_to_matrix(p: Permutation | Sequence[int]) -> np.ndarray:
    mapping = p.mapping if isinstance(p, Permutation) else tuple(p)
    n = len(mapping)
    out = np.zeros((n, n))
    out[np.arange(n), np.asarray(mapping, dtype=int)] = 1.0
    return out


def l1_norm(m) -> float:
    """Entrywise l1 norm (sum of absolute values), not the induced 1-norm."""
    return float(np.abs(np.asarray(m, dtype=float)).sum())


def frobenius_norm(m) -> float:
    a = np.abs(np.asarray(m, dtype=float))
    top = a.max(initial=0.0)
    if top == 0.0:
        return 0.0
    # rescale so squares of tiny entries do not underflow to zero
    return float(top * np.sqrt(np.sum((a / top) ** 2)))


def random_doubly_stochastic(n: int, seed: int, tol: float = 1e-10) -> np.ndarray:
    """Dense random doubly stochastic matrix.

    Draws i.i.d. uniform(0, 1) entries from ``numpy.random.default_rng(seed)``
    and Sinkhorn-scales them to ``tol``. Same ``(n, seed, tol)`` gives the
    same matrix bit for bit.
    """
    from .sinkhorn import sinkhorn_scale

    if n < 2:
        raise ValueError("n must be at least 2")
    rng = np.random.default_rng(seed)
    a = rng.uniform(size=(n, n))
    # uniform() is half-open at 0; keep the draw strictly positive
    a = np.maximum(a, np.finfo(float).tiny)
    return sinkhorn_scale(a, tol=tol).s


def format_matrix(m) -> str:
    """Render ``m`` in the text exchange format: ``N`` then N rows of N decimals."""
    m = as_matrix(m)
    lines = [str(m.shape[0])]
    lines += [" ".join(repr(float(x)) for x in row) for row in m]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    tokens = text.split()
    if not tokens:
        raise InvalidInput("empty matrix text")
    try:
        n = int(tokens[0])
        values = [float(t) for t in tokens[1:]]
    except ValueError as exc:
        raise InvalidInput(f"malformed matrix text: {exc}") from None
    if n <= 0 or len(values) != n * n:
        raise InvalidInput(f"expected {n}x{n}={n * n} entries after the size line, got {len(values)}")
    return as_matrix(np.array(values).reshape(n, n))


def read_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text())


def write_matrix(path, m) -> None:
    Path(path).write_text(format_matrix(m))
