"""
Measured-dataset ingestion and export.

A dataset is a CSV file with one row per configuration:

    opt1,opt2,...,optN,<target>:<min|max>,<auxiliary>:<min|max>

Columns carrying a ``:min`` / ``:max`` suffix are objectives; all others are
options. Option levels are the distinct values of a column, sorted ascending.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from config_space import ConfigSpace, Configuration, OptionSpec
from objectives import ObjectiveSense, RawObjectives, orient
from tuning_errors import (DatasetCoverageError, DatasetFormatError,
                           DuplicateRowError, MissingMeasurementError)

logger = logging.getLogger(__name__)

SENSE_SEPARATOR = ":"


@dataclass(frozen=True)
class Dataset:
    """A full-coverage table of measured objectives, in native units."""

    name: str
    space: ConfigSpace
    table: Dict[Configuration, Tuple[float, float]]
    target_label: str
    auxiliary_label: str
    target_sense: ObjectiveSense
    auxiliary_sense: ObjectiveSense

    def lookup(self, config: Configuration) -> RawObjectives:
        """Oriented objectives of ``config``."""
        try:
            target, auxiliary = self.table[config]
        except KeyError:
            raise MissingMeasurementError(
                f"{self.name}: no measurement for configuration {config}") from None
        return RawObjectives(orient(target, self.target_sense),
                             orient(auxiliary, self.auxiliary_sense))

    def print_summary(self):
        targets = [t for t, _ in self.table.values()]
        auxiliaries = [a for _, a in self.table.values()]
        print("=" * 80)
        print(f"DATASET {self.name}")
        print("=" * 80)
        print(f"Options: {self.space.option_count}, configurations: {self.space.size:,}")
        print(f"Target {self.target_label} ({self.target_sense.value}): "
              f"[{min(targets):g}, {max(targets):g}]")
        print(f"Auxiliary {self.auxiliary_label} ({self.auxiliary_sense.value}): "
              f"[{min(auxiliaries):g}, {max(auxiliaries):g}]")
        print("=" * 80)
        print()


def _number(cell: str, line_number: int, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise DatasetFormatError(
            f"column {column!r}: cannot parse {cell!r} as a number", line_number) from None
    if not math.isfinite(value):
        raise DatasetFormatError(f"column {column!r}: {cell!r} is not finite", line_number)
    return value


def _level_value(value: float):
    return int(value) if value.is_integer() else value


def _split_header(header: List[str]) -> Tuple[List[int], Dict[str, Tuple[int, ObjectiveSense]]]:
    options = []
    objectives = {}
    for index, column in enumerate(header):
        column = column.strip()
        if SENSE_SEPARATOR in column:
            label, _, sense = column.rpartition(SENSE_SEPARATOR)
            try:
                objectives[label] = (index, ObjectiveSense.parse(sense))
            except ValueError as exc:
                raise DatasetFormatError(str(exc), 1) from None
        else:
            options.append(index)
    if not options:
        raise DatasetFormatError("header has no option columns", 1)
    if len(objectives) < 2:
        raise DatasetFormatError(
            "header needs two objective columns named <label>:<min|max>", 1)
    return options, objectives


def load_dataset(path: Path, target_column: Optional[str] = None,
                 auxiliary_column: Optional[str] = None) -> Dataset:
    """Load a dataset CSV, enforcing full coverage and unique rows.

    ``target_column`` / ``auxiliary_column`` name objective columns without
    their sense suffix; by default the first two objective columns are used.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    if not rows:
        raise DatasetFormatError(f"{path}: empty file")

    header = [column.strip() for column in rows[0]]
    option_indices, objectives = _split_header(header)
    labels = list(objectives)
    target_column = target_column or labels[0]
    auxiliary_column = auxiliary_column or next(l for l in labels if l != target_column)
    for label in (target_column, auxiliary_column):
        if label not in objectives:
            raise DatasetFormatError(f"{path}: no objective column {label!r}", 1)
    target_index, target_sense = objectives[target_column]
    auxiliary_index, auxiliary_sense = objectives[auxiliary_column]

    parsed = []
    for line_number, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise DatasetFormatError(
                f"expected {len(header)} cells, found {len(row)}", line_number)
        options = tuple(_number(row[i], line_number, header[i]) for i in option_indices)
        target = _number(row[target_index], line_number, target_column)
        auxiliary = _number(row[auxiliary_index], line_number, auxiliary_column)
        parsed.append((line_number, options, target, auxiliary))

    levels = [sorted({options[k] for _, options, _, _ in parsed})
              for k in range(len(option_indices))]
    space = ConfigSpace(tuple(
        OptionSpec(header[i], tuple(_level_value(v) for v in values))
        for i, values in zip(option_indices, levels)))
    index_maps = [{value: level for level, value in enumerate(values)} for values in levels]

    table: Dict[Configuration, Tuple[float, float]] = {}
    for line_number, options, target, auxiliary in parsed:
        config = Configuration(tuple(m[v] for m, v in zip(index_maps, options)))
        if config in table:
            raise DuplicateRowError(config.levels, line_number)
        table[config] = (target, auxiliary)

    if len(table) != space.size:
        raise DatasetCoverageError(len(table), space.size)

    logger.info("loaded %s: %d configurations over %d options",
                path, len(table), space.option_count)
    return Dataset(path.stem, space, table, target_column, auxiliary_column,
                   target_sense, auxiliary_sense)


def export_dataset(dataset: Dataset, path: Path):
    """Write ``dataset`` in the CSV grammar read by :func:`load_dataset`."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(dataset.space.names + [
            f"{dataset.target_label}{SENSE_SEPARATOR}{dataset.target_sense.value}",
            f"{dataset.auxiliary_label}{SENSE_SEPARATOR}{dataset.auxiliary_sense.value}",
        ])
        for config in dataset.space:
            target, auxiliary = dataset.table[config]
            values = [option.values[level]
                      for option, level in zip(dataset.space.options, config.levels)]
            writer.writerow([repr(v) if isinstance(v, float) else str(v) for v in values]
                            + [repr(float(target)), repr(float(auxiliary))])
    logger.info("exported %s (%d rows) to %s", dataset.name, len(dataset.table), path)
