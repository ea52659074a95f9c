"""
Results, trace and report files.

A results file is a CSV whose first line is ``# `` followed by a JSON header
holding the resolved experiment spec and the case identity. Objective values
are stored in native units; the header records their senses. Each results
file has a companion ``<name>.traces.csv`` with every run's best-so-far
trajectory.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from config_space import Configuration
from objectives import ObjectiveSense, native, orient
from run_trace import RunTrace, TracePoint
from scott_knott import SampleGroup
from tuning_errors import DatasetFormatError, ResultsComparisonError

logger = logging.getLogger(__name__)

HEADER_PREFIX = '# '
RESULTS_COLUMNS = ['run_index', 'seed', 'distinct_measurements',
                   'best_ft_raw', 'best_fa_raw', 'best_config']
TRACE_COLUMNS = ['run_index', 'measurements', 'best_ft_raw', 'best_config']
VERDICT_COLUMNS = ['case', 'candidate', 'baseline', 'mean', 'stderr',
                   'a12', 'p', 'outcome', 'significant']
TRAJECTORY_COLUMNS = ['measurements', 'mean_best_ft', 'stderr']


@dataclass(frozen=True)
class RunResult:
    """Terminal outcome of one seeded run, objectives in native units."""

    run_index: int
    seed: int
    distinct_measurements: int
    best_ft_raw: float
    best_fa_raw: float
    best_config: Configuration
    trace: Optional[RunTrace] = field(default=None, compare=False)


@dataclass
class ResultsFile:
    """A results file read back: header plus one row per run."""

    path: Path
    header: dict
    runs: List[RunResult]

    @property
    def case(self) -> str:
        return self.header['case']

    @property
    def label(self) -> str:
        return self.header.get('label', self.path.stem)

    @property
    def target_sense(self) -> ObjectiveSense:
        return ObjectiveSense(self.header['target_sense'])

    def oriented_targets(self) -> List[float]:
        return [orient(run.best_ft_raw, self.target_sense) for run in self.runs]

    def sample_group(self, label: Optional[str] = None) -> SampleGroup:
        return SampleGroup(label or self.label, tuple(self.oriented_targets()))


def traces_path(results_path: Path) -> Path:
    results_path = Path(results_path)
    return results_path.with_name(results_path.stem + '.traces.csv')


def _number(value: float) -> str:
    return repr(float(value))


def write_results(path: Path, header: dict, runs: Sequence[RunResult],
                  target_sense: ObjectiveSense):
    """Write the results CSV and, when runs carry traces, the traces file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(HEADER_PREFIX + json.dumps(header, sort_keys=True) + '\n')
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(RESULTS_COLUMNS)
        for run in runs:
            writer.writerow([run.run_index, run.seed, run.distinct_measurements,
                             _number(run.best_ft_raw), _number(run.best_fa_raw),
                             str(run.best_config)])
    logger.info("wrote %d runs to %s", len(runs), path)

    if all(run.trace is not None for run in runs):
        with open(traces_path(path), 'w', encoding='utf-8', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(TRACE_COLUMNS)
            for run in runs:
                for point in run.trace.points:
                    writer.writerow([run.run_index, point.measurements,
                                     _number(native(point.best_target, target_sense)),
                                     str(point.best_configuration)])


def _read_header(path: Path, line: str) -> dict:
    if not line.startswith(HEADER_PREFIX):
        raise DatasetFormatError(f"{path}: missing results header", 1)
    try:
        return json.loads(line[len(HEADER_PREFIX):])
    except json.JSONDecodeError as e:
        raise DatasetFormatError(f"{path}: unreadable results header: {e}", 1) from e


def read_results(path: Path) -> ResultsFile:
    path = Path(path)
    with open(path, 'r', encoding='utf-8', newline='') as f:
        header = _read_header(path, f.readline())
        reader = csv.DictReader(f)
        if reader.fieldnames != RESULTS_COLUMNS:
            raise DatasetFormatError(f"{path}: unexpected columns {reader.fieldnames}", 2)
        runs = []
        for line_number, row in enumerate(reader, start=3):
            try:
                runs.append(RunResult(int(row['run_index']), int(row['seed']),
                                      int(row['distinct_measurements']),
                                      float(row['best_ft_raw']), float(row['best_fa_raw']),
                                      Configuration.parse(row['best_config'])))
            except ValueError as e:
                raise DatasetFormatError(f"{path}: {e}", line_number) from e
    return ResultsFile(path, header, runs)


def read_traces(results: ResultsFile) -> List[RunTrace]:
    """Trajectories of ``results``, oriented, in run-index order."""
    path = traces_path(results.path)
    sense = results.target_sense
    traces: Dict[int, RunTrace] = {}
    with open(path, 'r', encoding='utf-8', newline='') as f:
        for row in csv.DictReader(f):
            trace = traces.setdefault(int(row['run_index']), RunTrace())
            trace.points.append(TracePoint(int(row['measurements']),
                                           orient(float(row['best_ft_raw']), sense),
                                           Configuration.parse(row['best_config'])))
    return [traces[index] for index in sorted(traces)]


def check_same_case(a: ResultsFile, b: ResultsFile):
    if a.case != b.case:
        raise ResultsComparisonError(
            f"{a.path} is case {a.case!r} but {b.path} is case {b.case!r}")


def write_verdicts(path: Path, rows: Sequence[dict]):
    """Verdict rows as JSON (``.json`` suffix) or CSV (anything else)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        if path.suffix == '.json':
            json.dump(list(rows), f, indent=2, sort_keys=True)
            f.write('\n')
            return
        writer = csv.DictWriter(f, fieldnames=VERDICT_COLUMNS, lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)


def write_trajectory(path: Path, counts, means, stderrs):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(TRAJECTORY_COLUMNS)
        for count, mean, stderr in zip(counts, means, stderrs):
            writer.writerow([int(count), _number(mean), _number(stderr)])
