"""
Comparison verdicts, best-candidate selection, speedup and budget calibration.

All sample values are oriented so that smaller is better.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from effect_size import a12, effect_magnitude
from run_trace import RunTrace, mean_trajectory
from scott_knott import SampleGroup, scott_knott
from tuning_errors import ConfigurationError, EmptyGroupError, ResultsComparisonError
from wilcoxon import wilcoxon_rank_sum, wilcoxon_signed_rank

logger = logging.getLogger(__name__)

SIGNIFICANCE_LEVEL = 0.05
CHANGE_RATE_THRESHOLD = 0.1
POPULATION_GRID = tuple(range(10, 101, 10))


class Outcome(Enum):
    WIN = "win"
    LOSE = "lose"
    TIE = "tie"


@dataclass(frozen=True)
class ComparisonVerdict:
    """One candidate-vs-baseline row; ``mean``/``stderr`` describe the candidate."""

    case: str
    candidate: str
    baseline: str
    mean: float
    stderr: float
    a12: float
    p: float
    outcome: Outcome

    @property
    def magnitude(self) -> str:
        return effect_magnitude(self.a12)

    @property
    def significant(self) -> bool:
        return self.magnitude != "negligible" and self.p < SIGNIFICANCE_LEVEL

    def as_row(self) -> Dict[str, object]:
        return {
            "case": self.case,
            "candidate": self.candidate,
            "baseline": self.baseline,
            "mean": self.mean,
            "stderr": self.stderr,
            "a12": self.a12,
            "p": self.p,
            "outcome": self.outcome.value,
            "significant": self.significant,
        }


def compare_groups(candidate: SampleGroup, baseline: SampleGroup, paired: bool = False,
                   case: str = "") -> ComparisonVerdict:
    """Verdict for ``candidate`` against ``baseline``.

    Paired comparisons use the signed-rank test and need equal run counts.
    """
    if paired:
        if len(candidate.values) != len(baseline.values):
            raise ResultsComparisonError(
                f"paired comparison needs equal run counts, got "
                f"{len(candidate.values)} and {len(baseline.values)}")
        p = wilcoxon_signed_rank(candidate.values, baseline.values)
    else:
        p = wilcoxon_rank_sum(candidate.values, baseline.values)
    effect = a12(candidate.values, baseline.values)
    if candidate.mean == baseline.mean or effect == 0.5:
        outcome = Outcome.TIE
    elif candidate.mean < baseline.mean:
        outcome = Outcome.WIN
    else:
        outcome = Outcome.LOSE
    return ComparisonVerdict(case, candidate.label, baseline.label, candidate.mean,
                             candidate.stderr, effect, p, outcome)


def select_best(groups: Sequence[SampleGroup], tie_rule: str = "mean") -> str:
    """Label of the best group: top Scott-Knott cluster, then best ``tie_rule``
    statistic (``mean`` or ``median``) inside it, then label order."""
    if not groups:
        raise EmptyGroupError("cannot select the best of no groups")
    if tie_rule == "mean":
        statistic = np.mean
    elif tie_rule == "median":
        statistic = np.median
    else:
        raise ConfigurationError(f"unknown tie rule {tie_rule!r}")
    by_label = {group.label: group for group in groups}
    top = scott_knott(groups)[0]
    return min(top, key=lambda label: (float(statistic(by_label[label].values)), label))


class SpeedupCategory(Enum):
    FASTER = "faster"
    EQUAL = "equal"
    SLOWER = "slower"
    NOT_REACHED = "not-reached"


@dataclass(frozen=True)
class SpeedupResult:
    """``value`` is b / m, or None when the candidate never reached T."""

    threshold: float
    baseline_count: int
    candidate_count: Optional[int]

    @property
    def value(self) -> Optional[float]:
        if self.candidate_count is None:
            return None
        return self.baseline_count / self.candidate_count

    @property
    def category(self) -> SpeedupCategory:
        value = self.value
        if value is None:
            return SpeedupCategory.NOT_REACHED
        if value > 1.0:
            return SpeedupCategory.FASTER
        if value == 1.0:
            return SpeedupCategory.EQUAL
        return SpeedupCategory.SLOWER

    def __str__(self):
        if self.value is None:
            return "not reached"
        return f"{self.value:.2f}x"


def _first_reaching(means: np.ndarray, threshold: float) -> Optional[int]:
    hits = np.flatnonzero(means <= threshold)
    return int(hits[0]) + 1 if hits.size else None


def speedup(baseline_traces: Sequence[RunTrace], candidate_traces: Sequence[RunTrace],
            budget: Optional[int] = None) -> SpeedupResult:
    """Measurements the baseline needs for its best mean result, divided by
    the measurements the candidate needs to match it."""
    if not baseline_traces or not candidate_traces:
        raise EmptyGroupError("speedup needs baseline and candidate traces")
    if budget is None:
        budget = max(trace.measurements for trace in [*baseline_traces, *candidate_traces])
    _, baseline_means, _ = mean_trajectory(baseline_traces, budget)
    _, candidate_means, _ = mean_trajectory(candidate_traces, budget)
    threshold = float(baseline_means[-1])
    b = _first_reaching(baseline_means, threshold)
    m = _first_reaching(candidate_means, threshold)
    return SpeedupResult(threshold, b, m)


TraceFamily = Mapping[int, Mapping[str, Sequence[RunTrace]]]


def _mean_change_rate(traces: Sequence[RunTrace], budget: int, tail: float) -> float:
    return float(np.mean([trace.change_rate(tail, budget) for trace in traces]))


def _converged(optimizers: Mapping[str, Sequence[RunTrace]], budget: int,
               threshold: float, tail: float) -> bool:
    for name, traces in optimizers.items():
        rate = _mean_change_rate(traces, budget, tail)
        logger.debug("budget %d: %s changes best in %.1f%% of the tail",
                     budget, name, 100 * rate)
        if rate >= threshold:
            return False
    return True


def calibrate_budget(family: TraceFamily, threshold: float = CHANGE_RATE_THRESHOLD,
                     tail: float = 0.1) -> int:
    """Smallest grid budget at which every optimizer has settled.

    ``family`` maps each budget to ``{optimizer: traces}`` recorded at that
    budget. Settled means the best configuration changed in fewer than
    ``threshold`` of the final ``tail`` share of measurements. Falls back to
    the largest budget.
    """
    if not family:
        raise ConfigurationError("budget grid is empty")
    grid = sorted(family)
    for budget in grid:
        if _converged(family[budget], budget, threshold, tail):
            return budget
    return grid[-1]


def calibrate_population(family: TraceFamily, budget: int,
                         threshold: float = CHANGE_RATE_THRESHOLD, tail: float = 0.1) -> int:
    """Largest grid population size at which every optimizer has settled
    under ``budget``; the smallest size when none has.

    ``family`` maps each population size to ``{optimizer: traces}``.
    """
    if not family:
        raise ConfigurationError("population grid is empty")
    grid = sorted(family)
    for size in reversed(grid):
        if _converged(family[size], budget, threshold, tail):
            return size
    return grid[0]


def min_weight_budget_proportion(sweeps: Mapping[float, Sequence[SampleGroup]]) -> float:
    """Smallest budget proportion whose best weight matches the full-budget one.

    ``sweeps`` maps each proportion to one SampleGroup per weight, labelled
    by weight. The largest proportion is taken as the full budget.
    """
    if not sweeps:
        raise ConfigurationError("no budget proportions to compare")
    proportions = sorted(sweeps)
    reference = select_best(sweeps[proportions[-1]])
    for proportion in proportions:
        best = select_best(sweeps[proportion])
        logger.info("proportion %.1f selects weight %s", proportion, best)
        if best == reference:
            return proportion
    return proportions[-1]


@dataclass(frozen=True)
class Tabulation:
    """Win/lose/tie shares, in percent, over a set of verdicts."""

    total: int
    wins: int
    losses: int
    ties: int
    significant_wins: int
    significant_losses: int

    def _percent(self, count: int) -> float:
        return 100.0 * count / self.total if self.total else 0.0

    @property
    def win_percent(self) -> float:
        return self._percent(self.wins)

    @property
    def lose_percent(self) -> float:
        return self._percent(self.losses)

    @property
    def tie_percent(self) -> float:
        return self._percent(self.ties)

    def __str__(self):
        return (f"{self.win_percent:.0f}%/{self.lose_percent:.0f}%/"
                f"{self.tie_percent:.0f}%")


def tabulate(verdicts: Sequence[ComparisonVerdict]) -> Tabulation:
    wins = [v for v in verdicts if v.outcome is Outcome.WIN]
    losses = [v for v in verdicts if v.outcome is Outcome.LOSE]
    return Tabulation(
        total=len(verdicts),
        wins=len(wins),
        losses=len(losses),
        ties=len(verdicts) - len(wins) - len(losses),
        significant_wins=sum(1 for v in wins if v.significant),
        significant_losses=sum(1 for v in losses if v.significant),
    )


class VerdictTable:
    """Collected verdicts with a printable summary."""

    def __init__(self, verdicts: Optional[List[ComparisonVerdict]] = None):
        self.verdicts: List[ComparisonVerdict] = list(verdicts or [])

    def add(self, verdict: ComparisonVerdict):
        self.verdicts.append(verdict)

    def rows(self) -> List[Dict[str, object]]:
        return [verdict.as_row() for verdict in self.verdicts]

    def print_table(self):
        print("\n" + "=" * 80)
        print("COMPARISON VERDICTS")
        print("=" * 80)
        print(f"{'case':<16}{'candidate':<14}{'baseline':<14}{'mean':>12}"
              f"{'a12':>7}{'p':>10}  outcome")
        for v in self.verdicts:
            mark = "*" if v.significant else " "
            print(f"{v.case:<16}{v.candidate:<14}{v.baseline:<14}{v.mean:>12.4g}"
                  f"{v.a12:>7.2f}{v.p:>10.3g}  {v.outcome.value}{mark} ({v.magnitude})")
        summary = tabulate(self.verdicts)
        print(f"\nOverall win/lose/tie: {summary}  "
              f"(significant: {summary.significant_wins} wins, "
              f"{summary.significant_losses} losses)")
        print("=" * 80)


def change_rate_table(family: TraceFamily, budget: Optional[int] = None,
                      tail: float = 0.1) -> Dict[int, Dict[str, float]]:
    """Mean tail change rate per grid point and optimizer.

    Grid keys are budgets unless ``budget`` fixes the horizon.
    """
    return {
        key: {name: _mean_change_rate(traces, budget if budget is not None else key, tail)
              for name, traces in optimizers.items()}
        for key, optimizers in sorted(family.items())
    }


@dataclass
class CalibrationReport:
    """Change rates over a budget or population grid and the chosen value."""

    axis: str
    rates: Dict[int, Dict[str, float]]
    selected: int

    def print_report(self):
        print("=" * 80)
        print(f"{self.axis.upper()} CALIBRATION")
        print("=" * 80)
        for key, by_optimizer in self.rates.items():
            cells = ", ".join(f"{name} {100 * rate:.1f}%"
                              for name, rate in by_optimizer.items())
            marker = "  <- selected" if key == self.selected else ""
            print(f"{self.axis} {key:>6}: {cells}{marker}")
        print("=" * 80)
        print()
