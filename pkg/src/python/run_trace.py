"""
Best-so-far trajectories of tuning runs.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from config_space import Configuration
from objectives import RawObjectives


@dataclass(frozen=True)
class TracePoint:
    """State after the ``measurements``-th distinct measurement."""

    measurements: int
    best_target: float
    best_configuration: Configuration


@dataclass
class RunTrace:
    """Best-so-far f_t (oriented) indexed by distinct-measurement count."""

    points: List[TracePoint] = field(default_factory=list)
    best_raw: Optional[RawObjectives] = None

    @property
    def measurements(self) -> int:
        return self.points[-1].measurements if self.points else 0

    @property
    def best_target(self) -> float:
        return self.points[-1].best_target

    @property
    def best_configuration(self) -> Configuration:
        return self.points[-1].best_configuration

    def best_at(self, count: int) -> float:
        """Best f_t after ``count`` measurements, carried past the run's end."""
        if not self.points or count < self.points[0].measurements:
            return float("inf")
        index = min(count, self.measurements) - self.points[0].measurements
        return self.points[index].best_target

    def configuration_at(self, count: int) -> Optional[Configuration]:
        if not self.points or count < self.points[0].measurements:
            return None
        index = min(count, self.measurements) - self.points[0].measurements
        return self.points[index].best_configuration

    def change_rate(self, tail: float = 0.1, budget: Optional[int] = None) -> float:
        """Fraction of measurement steps in the final ``tail`` share of the
        budget that changed the best configuration."""
        horizon = budget if budget is not None else self.measurements
        start = int(np.floor(horizon * (1.0 - tail)))
        steps = range(max(start, 1) + 1, horizon + 1)
        if not steps:
            return 0.0
        changes = sum(1 for count in steps
                      if self.configuration_at(count) != self.configuration_at(count - 1))
        return changes / len(steps)


class TraceRecorder:
    """Accumulates a :class:`RunTrace` as measurements are charged."""

    def __init__(self):
        self._trace = RunTrace()

    def record(self, count: int, configuration: Configuration, raw: RawObjectives):
        trace = self._trace
        if trace.points and trace.points[-1].best_target <= raw.target:
            previous = trace.points[-1]
            trace.points.append(TracePoint(count, previous.best_target,
                                           previous.best_configuration))
            return
        trace.points.append(TracePoint(count, raw.target, configuration))
        trace.best_raw = raw

    @property
    def trace(self) -> RunTrace:
        return self._trace


def mean_trajectory(traces: Sequence[RunTrace], horizon: Optional[int] = None):
    """Mean and standard error of best-so-far at counts 1..horizon.

    Returns ``(counts, means, stderrs)`` as numpy arrays. Counts before a
    run's first measurement are excluded from that count's mean.
    """
    if horizon is None:
        horizon = max(trace.measurements for trace in traces)
    counts = np.arange(1, horizon + 1)
    values = np.array([[trace.best_at(int(c)) for c in counts] for trace in traces],
                      dtype=np.float64)
    finite = np.isfinite(values)
    masked = np.where(finite, values, 0.0)
    n = finite.sum(axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        means = np.where(n > 0, masked.sum(axis=0) / np.maximum(n, 1), np.inf)
        squares = np.where(finite, (values - means) ** 2, 0.0).sum(axis=0)
        stderrs = np.where(n > 1, np.sqrt(squares / np.maximum(n - 1, 1)) / np.sqrt(np.maximum(n, 1)),
                           0.0)
    return counts, means, stderrs
