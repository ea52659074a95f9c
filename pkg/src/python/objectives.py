"""
Objective orientation, normalization and the MMO meta-objectives.

All model arithmetic works on minimized values: maximized objectives are
negated once, when they leave the measurement oracle.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import math
from dataclasses import dataclass
from enum import Enum

from tuning_errors import BoundsError, InvalidMeasurementError, InvalidWeightError


class ObjectiveSense(Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"

    @classmethod
    def parse(cls, text: str) -> "ObjectiveSense":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"objective sense must be 'min' or 'max', got {text!r}") from None


def orient(value: float, sense: ObjectiveSense) -> float:
    """Convert a native objective value into minimized orientation."""
    if not math.isfinite(value):
        raise InvalidMeasurementError(f"non-finite measurement: {value!r}")
    if sense is ObjectiveSense.MAXIMIZE:
        return -value
    return value


def native(value: float, sense: ObjectiveSense) -> float:
    """Inverse of :func:`orient`."""
    return -value if sense is ObjectiveSense.MAXIMIZE else value


@dataclass(frozen=True)
class RawObjectives:
    """Target and auxiliary values of one configuration, already oriented."""

    target: float
    auxiliary: float

    def __post_init__(self):
        for value in (self.target, self.auxiliary):
            if not math.isfinite(value):
                raise InvalidMeasurementError(f"non-finite measurement: {value!r}")


def normalize(value: float, lower: float, upper: float) -> float:
    """Min-max normalization; a zero-width range maps everything to 0.0."""
    if lower > upper:
        raise BoundsError(f"lower bound {lower} exceeds upper bound {upper}")
    if upper == lower:
        return 0.0
    return (value - lower) / (upper - lower)


@dataclass(frozen=True)
class MetaObjectives:
    g1: float
    g2: float

    def as_vector(self):
        return (self.g1, self.g2)


def meta_objectives(ft_norm: float, fa_norm: float, w: float = 1.0) -> MetaObjectives:
    """Linear MMO transform: g1 = f_t + w·f_a, g2 = f_t − w·f_a."""
    if not w > 0:
        raise InvalidWeightError(f"MMO weight must be > 0, got {w}")
    spread = w * fa_norm
    return MetaObjectives(g1=ft_norm + spread, g2=ft_norm - spread)
