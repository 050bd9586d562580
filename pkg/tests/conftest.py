import itertools
import math

import numpy as np
import pytest


def brute_force_matchings(w, threshold=1e-12):
    """All perfect matchings on entries > threshold, as (mapping, total, min_edge)."""
    n = w.shape[0]
    out = []
    for p in itertools.permutations(range(n)):
        picked = [w[i, p[i]] for i in range(n)]
        if min(picked) > threshold:
            out.append((p, math.fsum(picked), min(picked)))
    return out


def reference_sinkhorn(a, tol=1e-14, max_iter=100_000):
    """Plain alternating normalisation of the matrix itself (no scaling vectors)."""
    s = np.array(a, dtype=float)
    for _ in range(max_iter):
        s = s / s.sum(axis=1, keepdims=True)
        s = s / s.sum(axis=0, keepdims=True)
        if np.abs(s.sum(axis=1) - 1).max() <= tol:
            return s
    raise AssertionError("reference Sinkhorn did not converge")


PAULIS = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]]),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def explicit_pauli_coefficients(a):
    """tr(P^dagger A)/N by forming every Kronecker product."""
    n_qubits = int(round(math.log2(a.shape[0])))
    coeffs = []
    for idx in itertools.product(range(4), repeat=n_qubits):
        p = np.eye(1)
        for d in idx:
            p = np.kron(p, PAULIS[d])
        coeffs.append(np.trace(p.conj().T @ a) / a.shape[0])
    return np.array(coeffs)


def shift(n, k):
    """Permutation matrix with ones at (i, i+k mod n)."""
    m = np.zeros((n, n))
    m[np.arange(n), (np.arange(n) + k) % n] = 1.0
    return m


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import SCORECARD
    except ImportError:
        return
    if SCORECARD:
        terminalreporter.section("acceptance criteria")
        for line in sorted(SCORECARD):
            terminalreporter.write_line(line)
