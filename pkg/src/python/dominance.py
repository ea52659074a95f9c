"""
Pareto dominance and model-aware pairwise comparison.

Comparisons are exact; no epsilon is applied to floating-point values.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
from enum import Enum
from typing import Sequence

from optimization_model import EvaluatedConfig, ModelKind, OptimizationModel
from tuning_errors import ComparisonContextError, DimensionError


class Comparison(Enum):
    A_DOMINATES = "a-dominates"
    B_DOMINATES = "b-dominates"
    NONDOMINATED = "nondominated"
    EQUAL = "equal"


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and better somewhere."""
    if len(a) != len(b):
        raise DimensionError(f"cannot compare vectors of length {len(a)} and {len(b)}")
    strictly_better = False
    for x, y in zip(a, b):
        if x > y:
            return False
        if x < y:
            strictly_better = True
    return strictly_better


def compare_vectors(a: Sequence[float], b: Sequence[float]) -> Comparison:
    if len(a) != len(b):
        raise DimensionError(f"cannot compare vectors of length {len(a)} and {len(b)}")
    if tuple(a) == tuple(b):
        return Comparison.EQUAL
    if dominates(a, b):
        return Comparison.A_DOMINATES
    if dominates(b, a):
        return Comparison.B_DOMINATES
    return Comparison.NONDOMINATED


def compare_under_model(a: EvaluatedConfig, b: EvaluatedConfig,
                        model: OptimizationModel) -> Comparison:
    """Compare two evaluated configurations under ``model``.

    Single-objective compares normalized f_t only; PMO uses (f_t, f_a);
    MMO uses (g1, g2).
    """
    if a.model != model or b.model != model:
        raise ComparisonContextError("configurations were evaluated under another model")
    if a.bounds != b.bounds:
        raise ComparisonContextError("configurations use different bounds snapshots")
    if model.kind is ModelKind.SINGLE:
        return compare_vectors((a.target,), (b.target,))
    return compare_vectors(a.objective_vector(), b.objective_vector())
