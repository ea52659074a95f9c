"""
Wilcoxon rank-sum and signed-rank tests (normal approximation).

Both return two-sided p values. Ties are given mid-ranks and the variance is
tie-corrected; the rank-sum statistic is continuity-corrected as well.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import math
from typing import Sequence

import numpy as np
from scipy.stats import norm, rankdata

from tuning_errors import EmptyGroupError


def _tie_term(ranks: np.ndarray) -> float:
    """Sum of t^3 - t over groups of tied values."""
    _, counts = np.unique(ranks, return_counts=True)
    return float(((counts.astype(np.float64) ** 3) - counts).sum())


def wilcoxon_rank_sum(group_a: Sequence[float], group_b: Sequence[float]) -> float:
    """Unpaired two-sample test on the Mann-Whitney U statistic."""
    a = np.asarray(group_a, dtype=np.float64)
    b = np.asarray(group_b, dtype=np.float64)
    if a.size < 2 or b.size < 2:
        raise EmptyGroupError("rank-sum test needs at least two values per group")
    n1, n2 = a.size, b.size
    n = n1 + n2
    ranks = rankdata(np.concatenate([a, b]))
    u1 = ranks[:n1].sum() - n1 * (n1 + 1) / 2.0
    mean = n1 * n2 / 2.0
    variance = n1 * n2 / 12.0 * ((n + 1) - _tie_term(ranks) / (n * (n - 1)))
    if variance <= 0:
        return 1.0
    z = max(abs(u1 - mean) - 0.5, 0.0) / math.sqrt(variance)
    return float(min(1.0, 2.0 * norm.sf(z)))


def wilcoxon_signed_rank(pairs_a: Sequence[float], pairs_b: Sequence[float]) -> float:
    """Paired test on the differences A - B; zero differences are dropped."""
    a = np.asarray(pairs_a, dtype=np.float64)
    b = np.asarray(pairs_b, dtype=np.float64)
    if a.size != b.size:
        raise EmptyGroupError(
            f"paired test needs equal lengths, got {a.size} and {b.size}")
    if a.size < 2:
        raise EmptyGroupError("signed-rank test needs at least two pairs")
    d = a - b
    d = d[d != 0]
    if d.size == 0:
        return 1.0
    n = d.size
    ranks = rankdata(np.abs(d))
    w_plus = ranks[d > 0].sum()
    mean = n * (n + 1) / 4.0
    variance = n * (n + 1) * (2 * n + 1) / 24.0 - _tie_term(ranks) / 48.0
    if variance <= 0:
        return 1.0
    z = abs(w_plus - mean) / math.sqrt(variance)
    return float(min(1.0, 2.0 * norm.sf(z)))
