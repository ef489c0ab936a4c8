import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats as sps

from suitesearch.stats import (
    _approx_two_sided,
    _exact_u_counts,
    _midranks,
    mann_whitney_u,
    vargha_delaney_a12,
)

import numpy as np


def brute_force_a12(a, b):
    wins = sum(1.0 for x in a for y in b if x > y)
    ties = sum(1.0 for x in a for y in b if x == y)
    return (wins + 0.5 * ties) / (len(a) * len(b))


def brute_force_exact_u_p(a, b):
    """Two-sided exact p by enumerating every assignment of the pooled values."""
    pooled = list(a) + list(b)
    n = len(a)
    total = 0
    as_extreme = 0

    def u_of(first):
        second = [pooled[i] for i in range(len(pooled)) if i not in set(first)]
        x = [pooled[i] for i in first]
        wins = sum(1.0 for v in x for w in second if v > w)
        ties = sum(1.0 for v in x for w in second if v == w)
        return wins + 0.5 * ties

    observed = u_of(range(n))
    m = len(pooled) - n
    obs_lo = min(observed, n * m - observed)
    for combo in itertools.combinations(range(len(pooled)), n):
        total += 1
        u = u_of(combo)
        if min(u, n * m - u) <= obs_lo:
            as_extreme += 1
    return as_extreme / total


small_sample = st.lists(st.integers(0, 6), min_size=1, max_size=5)


class TestA12:
    def test_identical_constant_samples(self):
        assert vargha_delaney_a12([3, 3, 3], [3, 3, 3]) == 0.5

    def test_fully_separated_samples(self):
        assert vargha_delaney_a12([4, 5, 6], [1, 2, 3]) == 1.0
        assert vargha_delaney_a12([1, 2, 3], [4, 5, 6]) == 0.0

    def test_known_mixed_value(self):
        a, b = [1, 2, 3], [2, 2, 4]
        assert vargha_delaney_a12(a, b) == pytest.approx(brute_force_a12(a, b))

    def test_empty_sample_rejected(self):
        with pytest.raises(ValueError):
            vargha_delaney_a12([], [1])
        with pytest.raises(ValueError):
            vargha_delaney_a12([1], [])

    @settings(max_examples=200)
    @given(small_sample, small_sample)
    def test_matches_brute_force_on_small_samples(self, a, b):
        assert vargha_delaney_a12(a, b) == pytest.approx(brute_force_a12(a, b))

    @settings(max_examples=100)
    @given(small_sample, small_sample)
    def test_complement_identity(self, a, b):
        assert vargha_delaney_a12(a, b) + vargha_delaney_a12(b, a) == pytest.approx(1.0)

    @settings(max_examples=100)
    @given(small_sample, small_sample)
    def test_invariant_under_monotone_transforms(self, a, b):
        base = vargha_delaney_a12(a, b)
        for f in (lambda x: 2 * x + 1, lambda x: x**3, lambda x: math.exp(x / 3)):
            fa = [f(x) for x in a]
            fb = [f(x) for x in b]
            assert vargha_delaney_a12(fa, fb) == pytest.approx(base)


class TestMannWhitney:
    def test_identical_samples_give_no_evidence(self):
        assert mann_whitney_u([5, 5, 5], [5, 5, 5]) >= 0.99
        assert mann_whitney_u([7] * 40, [7] * 40) >= 0.99

    def test_three_vs_three_exact_enumeration(self):
        # All 20 assignments of {1..6} into two groups of three; the observed
        # split is one of the two most extreme, so p = 2/20.
        a, b = [1, 2, 3], [4, 5, 6]
        assert mann_whitney_u(a, b) == pytest.approx(0.1)
        assert mann_whitney_u(a, b) == pytest.approx(brute_force_exact_u_p(a, b))

    def test_disjoint_large_samples_are_significant(self):
        rng = random.Random(0)
        a = [rng.randint(50, 60) for _ in range(100)]
        b = [rng.randint(10, 20) for _ in range(100)]
        assert mann_whitney_u(a, b) < 0.001

    def test_symmetric_in_argument_order(self):
        rng = random.Random(1)
        a = [rng.randint(0, 9) for _ in range(30)]
        b = [rng.randint(0, 11) for _ in range(25)]
        assert mann_whitney_u(a, b) == pytest.approx(mann_whitney_u(b, a))

    @settings(max_examples=60, deadline=None)
    @given(st.sets(st.integers(0, 40), min_size=4, max_size=10), st.integers(2, 8))
    def test_exact_path_matches_enumeration_when_tie_free(self, pooled, cut):
        # The exact null distribution assumes distinct values, like any
        # standard exact U table; enumeration over assignments is the oracle.
        values = sorted(pooled)
        cut = max(2, min(cut, len(values) - 2))
        a, b = values[:cut], values[cut:]
        random.Random(7).shuffle(a)
        assert mann_whitney_u(a, b) == pytest.approx(brute_force_exact_u_p(a, b))

    def test_exact_and_approximate_agree_at_boundary(self):
        # Tie-free 20-vs-20 samples: both routes within 0.01 of each other.
        for seed in range(5):
            rng = random.Random(seed)
            pooled = rng.sample(range(1000), 40)
            a, b = pooled[:20], pooled[20:]
            ranks, tie_sizes = _midranks(np.asarray(a + b, dtype=float))
            u1 = ranks[:20].sum() - 20 * 21 / 2.0
            exact_p = mann_whitney_u(a, b)
            approx_p = _approx_two_sided(u1, 20, 20, tie_sizes)
            assert abs(exact_p - approx_p) < 0.01

    def test_exact_distribution_totals_binomial(self):
        counts = _exact_u_counts(5, 7)
        assert sum(counts) == math.comb(12, 5)
        assert len(counts) == 5 * 7 + 1

    def test_agrees_with_scipy_asymptotic(self):
        rng = random.Random(2)
        a = [rng.randint(0, 15) for _ in range(60)]
        b = [rng.randint(3, 18) for _ in range(55)]
        ours = mann_whitney_u(a, b)
        ref = sps.mannwhitneyu(a, b, alternative="two-sided", method="asymptotic").pvalue
        assert ours == pytest.approx(float(ref), abs=1e-9)

    def test_agrees_with_scipy_exact_when_tie_free(self):
        a, b = [1, 5, 9, 14], [2, 7, 11, 20, 25]
        ours = mann_whitney_u(a, b)
        ref = sps.mannwhitneyu(a, b, alternative="two-sided", method="exact").pvalue
        assert ours == pytest.approx(float(ref))

    def test_empty_sample_rejected(self):
        with pytest.raises(ValueError):
            mann_whitney_u([], [1, 2])
