"""LCU cost of a permutation decomposition, plus the Pauli-basis baseline."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .bvn import Decomposition
from .errors import DimensionMismatch, NotNormalized, NotPowerOfTwo
from .matrix import as_matrix


@dataclass(frozen=True)
class ResourceReport:
    k: int
    ancilla_qubits: int
    system_qubits: int | None
    alpha: float
    p_succ_uniform: float
    second_singular_value: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PauliCount:
    n_qubits: int
    nonzero_terms: int
    coefficient_l1: float

    def to_dict(self) -> dict:
        return asdict(self)


def ancilla_qubits(k: int) -> int:
    """``ceil(log2 k)`` computed on integers (exact for every k >= 1)."""
    if k < 1:
        raise ValueError("term count must be positive")
    return (k - 1).bit_length()


def _qubits(n: int) -> int | None:
    return n.bit_length() - 1 if n > 0 and n & (n - 1) == 0 else None


def success_probability(s, psi) -> float:
    """Post-selection probability ``||S psi||^2`` of an alpha = 1 block encoding."""
    s = np.asarray(s, dtype=float)
    psi = np.asarray(psi)
    if psi.shape != (s.shape[1],):
        raise DimensionMismatch(f"state of length {psi.shape} for a {s.shape} matrix")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-10:
        raise NotNormalized(f"|psi| = {norm!r}")
    return float(np.linalg.norm(s @ psi) ** 2)


def resource_report(d: Decomposition, s, singular_values: bool = False) -> ResourceReport:
    s = as_matrix(s)
    n = s.shape[0]
    if d.n != n:
        raise DimensionMismatch(f"decomposition acts on N={d.n}, matrix has N={n}")
    uniform = np.full(n, 1.0 / math.sqrt(n))
    sigma2 = None
    if singular_values and n > 1:
        sigma2 = float(np.linalg.svd(s, compute_uv=False)[1])
    return ResourceReport(
        k=d.k,
        ancilla_qubits=ancilla_qubits(d.k),
        system_qubits=_qubits(n),
        alpha=math.fsum(abs(w) for w in d.weights),
        p_succ_uniform=success_probability(s, uniform),
        second_singular_value=sigma2,
    )


# ---------------------------------------------------------------------------
# Pauli basis
#
# Coefficients are stored as a flat array of length 4**n; the index written
# in base 4 spells the Pauli string, most significant digit = first tensor
# factor, with digits 0,1,2,3 = I,X,Y,Z.
# ---------------------------------------------------------------------------

PAULI_LABELS = "IXYZ"


def pauli_coefficients(a) -> np.ndarray:
    """``c_P = tr(P A) / N`` for every Pauli string P, in O(N^2 log N).

    Splits A into 2x2 blocks per qubit and recurses on the four block
    combinations instead of forming 4**n Kronecker products.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"square matrix required, got {a.shape}")
    n_qubits = _qubits(a.shape[0])
    if n_qubits is None:
        raise NotPowerOfTwo(f"dimension {a.shape[0]} is not a power of two")
    # blocks has shape (terms, rows, cols); each pass peels one qubit off
    blocks = a[None, :, :]
    for _ in range(n_qubits):
        h = blocks.shape[1] // 2
        a00, a01 = blocks[:, :h, :h], blocks[:, :h, h:]
        a10, a11 = blocks[:, h:, :h], blocks[:, h:, h:]
        blocks = np.stack(
            [
                (a00 + a11) / 2,
                (a01 + a10) / 2,
                1j * (a01 - a10) / 2,
                (a00 - a11) / 2,
            ],
            axis=1,
        ).reshape(-1, h, h)
    return blocks.reshape(-1)


def pauli_reconstruct(coeffs) -> np.ndarray:
    """Inverse of ``pauli_coefficients``: ``sum_P c_P P``."""
    coeffs = np.asarray(coeffs, dtype=complex)
    n_qubits = _qubits(coeffs.size)
    if n_qubits is None or n_qubits % 2:
        raise NotPowerOfTwo(f"{coeffs.size} coefficients is not a power of four")
    n_qubits //= 2
    blocks = coeffs.reshape(-1, 1, 1)
    for _ in range(n_qubits):
        ci, cx, cy, cz = (blocks.reshape(-1, 4, *blocks.shape[1:])[:, j] for j in range(4))
        top = np.concatenate([ci + cz, cx - 1j * cy], axis=2)
        bottom = np.concatenate([cx + 1j * cy, ci - cz], axis=2)
        blocks = np.concatenate([top, bottom], axis=1)
    return blocks[0]


def pauli_label(index: int, n_qubits: int) -> str:
    digits = []
    for _ in range(n_qubits):
        index, d = divmod(index, 4)
        digits.append(PAULI_LABELS[d])
    return "".join(reversed(digits))


def pauli_term_count(a, tol: float = 1e-12) -> PauliCount:
    """Number of Pauli strings with ``|c_P| > tol`` and the l1 mass of all coefficients."""
    a = as_matrix(a)
    c = pauli_coefficients(a)
    mags = np.abs(c)
    return PauliCount(
        n_qubits=_qubits(a.shape[0]),
        nonzero_terms=int(np.count_nonzero(mags > tol)),
        coefficient_l1=float(mags.sum()),
    )
