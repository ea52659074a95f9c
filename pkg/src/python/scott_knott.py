"""
Scott-Knott clustering of treatment groups (classic lambda / chi-square form).

Groups are ordered by mean, then split recursively at the partition that
maximises the between-cluster sum of squares, as long as the lambda
statistic exceeds the chi-square critical value.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.stats import chi2

from tuning_errors import EmptyGroupError


@dataclass(frozen=True)
class SampleGroup:
    """Terminal results of one treatment, oriented so smaller is better."""

    label: str
    values: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise EmptyGroupError(f"group {self.label!r} has no values")

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))

    @property
    def stderr(self) -> float:
        if len(self.values) < 2:
            return 0.0
        return float(np.std(self.values, ddof=1) / math.sqrt(len(self.values)))


def _best_partition(means: np.ndarray) -> Tuple[int, float]:
    """Split index and between-cluster sum of squares B0 of the best partition."""
    total = means.sum()
    k = len(means)
    best_cut, best_b0 = 0, -1.0
    for cut in range(1, k):
        t1 = means[:cut].sum()
        t2 = total - t1
        b0 = t1 * t1 / cut + t2 * t2 / (k - cut) - total * total / k
        if b0 > best_b0:
            best_cut, best_b0 = cut, b0
    return best_cut, best_b0


def _split(groups: List[SampleGroup], error_variance: float, error_df: int,
           alpha: float) -> List[List[SampleGroup]]:
    k = len(groups)
    if k < 2:
        return [groups]
    means = np.array([g.mean for g in groups])
    cut, b0 = _best_partition(means)
    if b0 <= 0:
        return [groups]
    replicates = np.mean([len(g.values) for g in groups])
    sigma2 = (((means - means.mean()) ** 2).sum()
              + error_df * error_variance / replicates) / (k + error_df)
    if sigma2 <= 0:
        return [groups[:cut], groups[cut:]]
    statistic = math.pi / (2.0 * (math.pi - 2.0)) * b0 / sigma2
    critical = chi2.ppf(1.0 - alpha, k / (math.pi - 2.0))
    if statistic <= critical:
        return [groups]
    return (_split(groups[:cut], error_variance, error_df, alpha)
            + _split(groups[cut:], error_variance, error_df, alpha))


def scott_knott(groups: Sequence[SampleGroup], alpha: float = 0.05) -> List[List[str]]:
    """Ranked clusters of group labels, best (lowest mean) cluster first.

    Within a cluster labels are ordered by mean, then label.
    """
    if not groups:
        return []
    ordered = sorted(groups, key=lambda g: (g.mean, g.label))
    error_df = sum(len(g.values) - 1 for g in ordered)
    if error_df > 0:
        residual = sum(((np.asarray(g.values) - g.mean) ** 2).sum() for g in ordered)
        error_variance = float(residual) / error_df
    else:
        error_variance = 0.0
    clusters = _split(ordered, error_variance, error_df, alpha)
    return [[g.label for g in cluster] for cluster in clusters]


def cluster_ranks(clusters: Sequence[Sequence[str]]) -> Dict[str, int]:
    """Map each label to its 1-based cluster rank."""
    return {label: rank for rank, cluster in enumerate(clusters, start=1)
            for label in cluster}
