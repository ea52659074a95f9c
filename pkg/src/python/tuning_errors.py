"""
Exception hierarchy for configuration tuning.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""


class TuningError(Exception):
    """Base class for every error raised by the tuning toolkit."""


class InvalidMeasurementError(TuningError):
    """A measured objective value is not a finite number."""


class BoundsError(TuningError):
    """Normalization bounds are inverted (lower > upper)."""


class BoundsModeError(TuningError):
    """Bounds were updated under the wrong normalization mode."""


class InvalidWeightError(TuningError):
    """The MMO weight is not strictly positive."""


class DimensionError(TuningError):
    """Objective vectors of different lengths were compared."""


class ComparisonContextError(TuningError):
    """Two evaluated configurations do not share a model and bounds snapshot."""


class EmptyPopulationError(TuningError):
    """An operation needing at least one member got none."""


class SpaceMismatchError(TuningError):
    """A configuration does not belong to the configuration space in use."""


class ScheduleError(TuningError):
    """Simulated annealing schedule parameters are out of range."""


class TrainingError(TuningError):
    """A surrogate could not be trained."""


class ConfigurationError(TuningError):
    """Optimizer parameters are inconsistent with each other or the space."""


class DatasetError(TuningError):
    """Base class for dataset ingestion problems."""


class DatasetCoverageError(DatasetError):
    """The dataset does not cover the full Cartesian space."""

    def __init__(self, found: int, expected: int):
        super().__init__(f"dataset covers {found}/{expected} configurations")
        self.found = found
        self.expected = expected


class DuplicateRowError(DatasetError):
    """The same configuration appears on more than one row."""

    def __init__(self, levels, line_number: int):
        super().__init__(f"line {line_number}: duplicate configuration {levels}")
        self.levels = levels
        self.line_number = line_number


class DatasetFormatError(DatasetError):
    """A dataset file violates the CSV grammar."""

    def __init__(self, message: str, line_number: int = 0):
        prefix = f"line {line_number}: " if line_number else ""
        super().__init__(prefix + message)
        self.line_number = line_number


class MissingMeasurementError(DatasetError):
    """A configuration has no row in the dataset."""


class GenerationError(TuningError):
    """A synthetic landscape cannot be generated."""


class EmptyGroupError(TuningError):
    """A statistical test received an empty or too-small sample group."""


class ResultsComparisonError(TuningError):
    """Two results files cannot be compared."""


class SpecError(TuningError):
    """An experiment specification is invalid (usage error)."""


class BudgetExhausted(Exception):
    """Stop signal: the distinct-measurement budget is used up."""

    def __init__(self, limit: int):
        super().__init__(f"measurement budget of {limit} exhausted")
        self.limit = limit
