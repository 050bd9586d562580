import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from birkhoff_lcu.bvn import (
    Decomposition,
    Variant,
    cutoff_prune,
    decompose,
    decompose_bottleneck,
    decompose_largest_weight,
    decompose_original,
    decompose_threshold,
    find_threshold,
    reconstruct,
)
from birkhoff_lcu.errors import Degenerate, NotDoublyStochastic, ToleranceTooTight
from birkhoff_lcu.matching import SupportGraph, max_weight_perfect_matching, perfect_matching
from birkhoff_lcu.matrix import (
    Permutation,
    frobenius_norm,
    is_doubly_stochastic,
    l1_norm,
    permutation_to_matrix,
    random_doubly_stochastic,
)

from conftest import shift

PEELERS = [decompose_original, decompose_largest_weight, decompose_bottleneck]
HALF = np.full((2, 2), 0.5)


def raw_residual(s, d, steps=None):
    steps = d.k if steps is None else steps
    r = np.array(s, dtype=float)
    for w, p in zip(d.raw_weights[:steps], d.permutations[:steps]):
        r = r - w * permutation_to_matrix(p)
    return r


@pytest.mark.parametrize("peel", PEELERS)
def test_identity_is_one_term(peel):
    d = peel(np.eye(4), 1e-6)
    assert d.k == 1 and d.weights == (1.0,)
    assert d.permutations[0] == Permutation.identity(4)


@pytest.mark.parametrize("peel", PEELERS)
def test_uniform_two_by_two(peel):
    d = peel(HALF, 1e-6)
    assert d.k == 2
    assert d.weights == (0.5, 0.5)
    assert {p.mapping for p in d.permutations} == {(0, 1), (1, 0)}
    np.testing.assert_array_equal(reconstruct(d), HALF)


@pytest.mark.parametrize("peel", PEELERS)
def test_rejects_non_doubly_stochastic(peel):
    with pytest.raises(NotDoublyStochastic):
        peel(np.array([[0.9, 0.2], [0.1, 0.8]]), 1e-3)


def test_original_respects_worst_case_bound_at_16():
    s = random_doubly_stochastic(16, seed=11)
    d = decompose_original(s, 0.01)
    assert d.k <= 16 * 16 - 2 * 16 + 2
    assert d.residual_l1 <= 0.01


def test_largest_weight_peels_circulant_shifts_in_order():
    # expected steps worked by hand: the heaviest matching on a circulant is
    # the heaviest shift class, which is then removed exactly
    coeffs = [0.4, 0.3, 0.2, 0.1]
    c = sum(w * shift(4, k) for k, w in enumerate(coeffs))
    d = decompose_largest_weight(c, 1e-9)
    assert d.k == 4
    np.testing.assert_allclose(d.weights, coeffs, rtol=1e-15)
    assert [p.mapping for p in d.permutations] == [tuple((np.arange(4) + k) % 4) for k in range(4)]
    np.testing.assert_allclose(reconstruct(d), c, atol=1e-15)


def test_largest_weight_reconstruction_bound():
    s = random_doubly_stochastic(8, seed=5)
    eps = 1e-8
    d = decompose_largest_weight(s, eps)
    assert l1_norm(s - reconstruct(d, raw=True)) <= eps
    assert l1_norm(s - reconstruct(d)) <= 2 * eps / (1 - eps)


def test_bottleneck_bound_at_8():
    bound = math.ceil(8 * math.log(100))
    assert bound == 37
    for seed in range(5):
        d = decompose_bottleneck(random_doubly_stochastic(8, seed), 0.01)
        assert d.k <= bound


def test_bottleneck_steps_on_dense_instance():
    # w >= r/N is not universal (see test_matching), but holds on dense inputs like this one
    n = 16
    d = decompose_bottleneck(random_doubly_stochastic(n, seed=2), 0.1)
    for t, w in enumerate(d.raw_weights):
        assert w >= d.common_sums[t] / n
        assert d.common_sums[t + 1] <= (1 - 1 / n) ** (t + 1)


@pytest.mark.parametrize("peel", PEELERS)
def test_residual_integrity(peel):
    n = 10
    s = random_doubly_stochastic(n, seed=9)
    d = peel(s, 1e-3)
    sums = np.array(d.common_sums)
    assert np.all(np.diff(sums) < 0)
    assert all(w > 0 for w in d.raw_weights)
    for t in range(d.k + 1):
        r = raw_residual(s, d, t)
        assert r.min() >= -n * np.finfo(float).eps
        np.testing.assert_allclose(r.sum(axis=0), sums[t], atol=n * 1e-12 + 1e-10)
        np.testing.assert_allclose(r.sum(axis=1), sums[t], atol=n * 1e-12 + 1e-10)
        if t < d.k:
            # support containment at extraction time
            assert np.all(d.permutations[t].entries(r) > 1e-12)
    assert math.fsum(d.weights) == pytest.approx(1.0, abs=1e-12)


def test_largest_weight_dominates_any_matching_on_same_residual():
    s = random_doubly_stochastic(12, seed=4)
    d = decompose_largest_weight(s, 1e-4)
    for t in range(d.k):
        g = SupportGraph(raw_residual(s, d, t))
        chosen = math.fsum(d.permutations[t].entries(g.weights).tolist())
        assert chosen >= perfect_matching(g).total_weight
        assert chosen == max_weight_perfect_matching(g).total_weight


def test_threshold_zero_equals_original():
    s = random_doubly_stochastic(8, seed=1)
    a, b = decompose_original(s, 0.01), decompose_threshold(s, 0.01, 0.0)
    assert a.permutations == b.permutations and a.raw_weights == b.raw_weights
    assert b.variant is Variant.THRESHOLD and b.theta == 0.0


def test_threshold_above_max_entry_is_degenerate():
    s = random_doubly_stochastic(6, seed=1)
    with pytest.raises(Degenerate):
        decompose_threshold(s, 0.01, float(s.max()))


def test_threshold_support_and_reduction():
    s = random_doubly_stochastic(16, seed=21)
    theta = find_threshold(s, 0.05)
    d = decompose_threshold(s, 0.05, theta)
    assert d.residual_l1 <= 0.05
    assert d.k < decompose_original(s, 0.05).k
    for t in range(d.k):
        assert np.all(d.permutations[t].entries(raw_residual(s, d, t)) > theta)


def test_find_threshold_small_cases():
    assert find_threshold(np.eye(3), 1e-6) >= 0.5
    assert find_threshold(HALF, 1e-3) < 0.5


def test_find_threshold_is_self_consistent():
    s = random_doubly_stochastic(8, seed=8)
    theta = find_threshold(s, 0.05)
    assert decompose_threshold(s, 0.05, theta).residual_l1 <= 0.05


def test_cutoff_drops_perturbation_term():
    n = 5
    p1, p2, p3 = Permutation((0, 1, 2, 3, 4)), Permutation((1, 2, 3, 4, 0)), Permutation((3, 0, 4, 1, 2))
    s = (0.7 * p1.to_matrix() + 0.3 * p2.to_matrix() + 1e-3 * p3.to_matrix()) / 1.001
    full = decompose_largest_weight(s, 1e-12)
    assert full.k == 3
    pruned = cutoff_prune(full, s, 0.1)
    assert pruned.k == 2 and set(pruned.permutations) == {p1, p2}
    np.testing.assert_allclose(pruned.weights, [0.7, 0.3], rtol=1e-12)
    # independent error check: S minus the renormalised two-term mixture
    err = frobenius_norm(s - (0.7 * p1.to_matrix() + 0.3 * p2.to_matrix()))
    assert err <= 0.1
    # p1, p2, p3 are pairwise disjoint: entries differ by +1e-3, -7e-4, -3e-4 (over 1.001)
    assert err == pytest.approx(1e-3 / 1.001 * np.sqrt(n * (1 + 0.49 + 0.09)), rel=1e-9)


def test_cutoff_with_loose_tolerance_keeps_heaviest_term():
    s = random_doubly_stochastic(6, seed=3)
    d = decompose_original(s, 1e-9)
    pruned = cutoff_prune(d, s, 1e6)
    assert pruned.k == 1
    assert pruned.raw_weights == (max(d.raw_weights),)
    assert pruned.weights == (1.0,)


def test_cutoff_tolerance_too_tight():
    s = random_doubly_stochastic(6, seed=3)
    d = decompose_original(s, 0.5)
    err = frobenius_norm(s - reconstruct(d))
    with pytest.raises(ToleranceTooTight):
        cutoff_prune(d, s, err / 2)


def test_cutoff_never_grows_k():
    s = random_doubly_stochastic(16, seed=6)
    d = decompose_original(s, 1e-9)
    pruned = cutoff_prune(d, s, 0.05)
    assert pruned.k <= d.k
    assert frobenius_norm(s - reconstruct(pruned)) <= 0.05


@pytest.mark.parametrize(
    "weights, perms, expected",
    [
        ((1.0,), [(0, 1, 2)], np.eye(3)),
        ((0.5, 0.5), [(0, 1), (1, 0)], HALF),
    ],
)
def test_reconstruct_simple(weights, perms, expected):
    d = Decomposition(weights, tuple(Permutation(p) for p in perms), weights, 0.0, Variant.ORIGINAL, 1e-6)
    np.testing.assert_array_equal(reconstruct(d), expected)


def test_decomposition_dict_roundtrip():
    d = decompose_threshold(random_doubly_stochastic(6, seed=0), 0.01, 0.0)
    back = Decomposition.from_dict(d.to_dict())
    assert back.permutations == d.permutations and back.weights == d.weights
    assert back.raw_weights == d.raw_weights and back.theta == d.theta and back.variant == d.variant


@pytest.mark.parametrize("variant", list(Variant))
def test_dispatch(variant):
    s = random_doubly_stochastic(8, seed=12)
    d = decompose(s, 0.05, variant)
    assert d.variant is variant
    assert math.fsum(d.weights) == pytest.approx(1.0, abs=1e-12)
    assert is_doubly_stochastic(reconstruct(d), 1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 12), st.integers(0, 2**32 - 1), st.sampled_from([0.1, 0.01, 1e-4]))
def test_bound_suite(n, seed, eps):
    s = random_doubly_stochastic(n, seed)
    for peel in PEELERS:
        d = peel(s, eps)
        assert d.k <= n * n - 2 * n + 2
        assert l1_norm(s - reconstruct(d, raw=True)) <= eps
        assert l1_norm(s - reconstruct(d)) <= 2 * eps
        assert abs(math.fsum(d.weights) - 1) <= 1e-12
