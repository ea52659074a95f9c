from itertools import combinations

import numpy as np
import pytest

from tuning_errors import EmptyGroupError
from wilcoxon import wilcoxon_rank_sum, wilcoxon_signed_rank


def exact_rank_sum(a, b):
    """Two-sided p from the full permutation distribution of U (no ties)."""
    pooled = sorted(a + b)
    ranks = {value: rank for rank, value in enumerate(pooled, start=1)}
    n1, n2 = len(a), len(b)
    mean = n1 * n2 / 2.0
    observed = abs(sum(ranks[v] for v in a) - n1 * (n1 + 1) / 2.0 - mean)
    extreme = total = 0
    for chosen in combinations(range(1, n1 + n2 + 1), n1):
        total += 1
        if abs(sum(chosen) - n1 * (n1 + 1) / 2.0 - mean) >= observed:
            extreme += 1
    return extreme / total


def test_rank_sum_separated_groups():
    # exact two-sided p is 0.1; the corrected normal approximation is close
    p = wilcoxon_rank_sum([1, 2, 3], [10, 11, 12])
    assert p == pytest.approx(0.0808, abs=1e-3)
    assert p == pytest.approx(0.1, abs=0.02)


@pytest.mark.parametrize("a, b", [([1, 2, 3], [10, 11, 12]),
                                  ([1, 2, 3, 4, 5], [6, 7, 8, 9, 10]),
                                  ([1, 4, 6, 7, 9], [2, 3, 5, 8, 10])])
def test_rank_sum_tracks_the_exact_distribution(a, b):
    assert wilcoxon_rank_sum(a, b) == pytest.approx(exact_rank_sum(a, b), abs=0.02)


def test_rank_sum_is_symmetric():
    a, b = [1.0, 4.0, 2.5, 7.0], [3.0, 8.0, 9.5, 6.0, 5.5]
    assert wilcoxon_rank_sum(a, b) == wilcoxon_rank_sum(b, a)


def test_rank_sum_identical_groups():
    assert wilcoxon_rank_sum([1, 2, 3], [1, 2, 3]) == 1.0
    assert wilcoxon_rank_sum([4, 4, 4], [4, 4]) == 1.0


def test_rank_sum_clear_shift():
    assert wilcoxon_rank_sum(range(20), range(100, 120)) < 1e-6


def test_rank_sum_needs_two_values_per_group():
    with pytest.raises(EmptyGroupError):
        wilcoxon_rank_sum([1.0], [2.0, 3.0])


def test_signed_rank_mostly_positive_differences():
    # exact two-sided p is about 0.084
    d = np.array(list(range(1, 10)) + [-10], dtype=float)
    p = wilcoxon_signed_rank(d, np.zeros(10))
    assert p == pytest.approx(0.0745, abs=1e-3)
    assert p == pytest.approx(0.084, abs=0.02)


def test_signed_rank_constant_shift():
    base = np.arange(20, dtype=float)
    assert wilcoxon_signed_rank(base + 5.0, base) < 0.001


def test_signed_rank_single_nonzero_difference():
    a = [1.0] + [0.0] * 9
    assert wilcoxon_signed_rank(a, [0.0] * 10) == pytest.approx(0.3173, abs=1e-3)


def test_signed_rank_all_zero_differences():
    assert wilcoxon_signed_rank([1, 2, 3], [1, 2, 3]) == 1.0


def test_signed_rank_rejects_unequal_lengths():
    with pytest.raises(EmptyGroupError):
        wilcoxon_signed_rank([1, 2, 3], [1, 2])
