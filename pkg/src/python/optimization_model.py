"""
Optimization models (single-objective, PMO, MMO) and evaluated configurations.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from config_space import Configuration
from normalization import NormalizationBounds, NormalizationMode
from objectives import MetaObjectives, RawObjectives, meta_objectives
from tuning_errors import InvalidWeightError


class ModelKind(Enum):
    SINGLE = "single"
    PMO = "pmo"
    MMO = "mmo"


@dataclass(frozen=True)
class OptimizationModel:
    """Which comparison semantics drive a search."""

    kind: ModelKind = ModelKind.MMO
    weight: float = 1.0
    normalization: NormalizationMode = NormalizationMode.CURRENT_POPULATION

    def __post_init__(self):
        if not self.weight > 0:
            raise InvalidWeightError(f"MMO weight must be > 0, got {self.weight}")

    @classmethod
    def single(cls) -> "OptimizationModel":
        return cls(ModelKind.SINGLE)

    @classmethod
    def pmo(cls, normalization: NormalizationMode = NormalizationMode.CURRENT_POPULATION
            ) -> "OptimizationModel":
        return cls(ModelKind.PMO, normalization=normalization)

    @classmethod
    def mmo(cls, weight: float = 1.0,
            normalization: NormalizationMode = NormalizationMode.CURRENT_POPULATION
            ) -> "OptimizationModel":
        return cls(ModelKind.MMO, weight, normalization)

    @property
    def objective_count(self) -> int:
        return 1 if self.kind is ModelKind.SINGLE else 2

    def describe(self) -> str:
        if self.kind is ModelKind.SINGLE:
            return "single-objective"
        if self.kind is ModelKind.PMO:
            return f"PMO ({self.normalization.value} normalization)"
        return f"MMO w={self.weight:g} ({self.normalization.value} normalization)"


@dataclass(frozen=True)
class EvaluatedConfig:
    """A configuration with raw, normalized and (for MMO) meta objectives."""

    configuration: Optional[Configuration]
    raw: RawObjectives
    normalized: Tuple[float, float]
    model: OptimizationModel
    bounds: NormalizationBounds
    meta: Optional[MetaObjectives] = None

    @property
    def target(self) -> float:
        return self.normalized[0]

    @property
    def auxiliary(self) -> float:
        return self.normalized[1]

    def objective_vector(self) -> Tuple[float, ...]:
        """The vector the model ranks on, minimized."""
        if self.model.kind is ModelKind.SINGLE:
            return (self.normalized[0],)
        if self.model.kind is ModelKind.PMO:
            return self.normalized
        return self.meta.as_vector()


def evaluate(configuration: Optional[Configuration], raw: RawObjectives,
             model: OptimizationModel, bounds: NormalizationBounds) -> EvaluatedConfig:
    """Normalize ``raw`` under ``bounds`` and build the model's objective vector."""
    ft, fa = bounds.normalize(raw)
    meta = meta_objectives(ft, fa, model.weight) if model.kind is ModelKind.MMO else None
    return EvaluatedConfig(configuration, raw, (ft, fa), model, bounds, meta)
