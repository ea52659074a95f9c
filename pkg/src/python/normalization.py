"""
Normalization bounds for the target and auxiliary objectives.

GLOBAL_SO_FAR bounds only ever widen over a run. CURRENT_POPULATION bounds are
rebuilt from scratch from whatever population is being ranked.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Tuple

from objectives import RawObjectives, normalize
from tuning_errors import BoundsError, BoundsModeError, EmptyPopulationError


class NormalizationMode(Enum):
    GLOBAL_SO_FAR = "global"
    CURRENT_POPULATION = "population"


@dataclass(frozen=True)
class Range:
    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise BoundsError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    def widen(self, lower: float, upper: float) -> "Range":
        return Range(min(self.lower, lower), max(self.upper, upper))


@dataclass(frozen=True)
class NormalizationBounds:
    """Per-objective bounds; ``target``/``auxiliary`` are None until seeded."""

    mode: NormalizationMode
    target: Optional[Range] = None
    auxiliary: Optional[Range] = None

    @property
    def initialized(self) -> bool:
        return self.target is not None and self.auxiliary is not None

    def normalize(self, raw: RawObjectives) -> Tuple[float, float]:
        if not self.initialized:
            raise BoundsError("normalization bounds used before initialization")
        return (normalize(raw.target, self.target.lower, self.target.upper),
                normalize(raw.auxiliary, self.auxiliary.lower, self.auxiliary.upper))

    @classmethod
    def unit(cls, mode: NormalizationMode = NormalizationMode.CURRENT_POPULATION
             ) -> "NormalizationBounds":
        """Identity bounds (0, 1) on both objectives."""
        return cls(mode, Range(0.0, 1.0), Range(0.0, 1.0))


def _extremes(population: Iterable[RawObjectives]) -> Tuple[Range, Range]:
    members = list(population)
    if not members:
        raise EmptyPopulationError("cannot derive bounds from an empty population")
    targets = [m.target for m in members]
    auxiliaries = [m.auxiliary for m in members]
    return (Range(min(targets), max(targets)),
            Range(min(auxiliaries), max(auxiliaries)))


def reset_population_bounds(population: Iterable[RawObjectives]) -> NormalizationBounds:
    """Bounds equal to the per-objective min and max of ``population``."""
    target, auxiliary = _extremes(population)
    return NormalizationBounds(NormalizationMode.CURRENT_POPULATION, target, auxiliary)


def update_global_bounds(existing: NormalizationBounds,
                         new: Iterable[RawObjectives]) -> NormalizationBounds:
    """Widen global bounds to cover ``new``; seeds them from the first batch."""
    if existing.mode is not NormalizationMode.GLOBAL_SO_FAR:
        raise BoundsModeError(
            f"global update applied to {existing.mode.value} bounds")
    members = list(new)
    if not members:
        return existing
    target, auxiliary = _extremes(members)
    if not existing.initialized:
        return NormalizationBounds(existing.mode, target, auxiliary)
    return NormalizationBounds(
        existing.mode,
        existing.target.widen(target.lower, target.upper),
        existing.auxiliary.widen(auxiliary.lower, auxiliary.upper))


def bounds_for(mode: NormalizationMode,
               previous: Optional[NormalizationBounds],
               pool: Iterable[RawObjectives]) -> NormalizationBounds:
    """Bounds for ranking ``pool`` under ``mode`` (measure, update, normalize)."""
    if mode is NormalizationMode.CURRENT_POPULATION:
        return reset_population_bounds(pool)
    if previous is None:
        previous = NormalizationBounds(NormalizationMode.GLOBAL_SO_FAR)
    return update_global_bounds(previous, pool)
