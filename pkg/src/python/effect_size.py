"""
Vargha-Delaney A12 effect size.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
from typing import Sequence

import numpy as np

from tuning_errors import EmptyGroupError

# (favourable, unfavourable) thresholds per magnitude
THRESHOLDS = (
    ("large", 0.71, 0.29),
    ("medium", 0.64, 0.36),
    ("small", 0.56, 0.44),
)


def a12(group_a: Sequence[float], group_b: Sequence[float],
        smaller_is_better: bool = True) -> float:
    """Probability that a value from A beats one from B, ties counted half.

    a12(A, B) + a12(B, A) == 1 always.
    """
    a = np.asarray(group_a, dtype=np.float64)
    b = np.asarray(group_b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise EmptyGroupError("A12 needs two non-empty groups")
    if smaller_is_better:
        wins = (a[:, None] < b[None, :]).sum()
    else:
        wins = (a[:, None] > b[None, :]).sum()
    ties = (a[:, None] == b[None, :]).sum()
    return float((wins + 0.5 * ties) / (a.size * b.size))


def effect_magnitude(effect: float) -> str:
    """Label an A12 value: negligible, small, medium or large (either direction)."""
    for label, high, low in THRESHOLDS:
        if effect >= high or effect <= low:
            return label
    return "negligible"


def is_non_negligible(effect: float) -> bool:
    return effect_magnitude(effect) != "negligible"
