"""
Seeded experiment execution: repeats, optimizer dispatch and weight sweeps.

Run ``i`` of a spec uses ``numpy.random.default_rng(spec.seed + i)`` and its
own measurement ledger, so runs are independent and may execute in worker
processes; results are always collected in run-index order.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from budget_ledger import MeasurementOracle, MeasurementSource
from dataset_downloader import DatasetDownloader, is_remote
from dataset_loader import load_dataset
from experiment_spec import ExperimentSpec, cache_dir, fixture_path
from flash import FlashParams, flash, flash_mmo
from landscape import load_landscape
from nsga2 import mmo_on_nsga2
from objectives import ObjectiveSense, native
from results_io import RunResult, write_results
from run_trace import RunTrace
from scott_knott import SampleGroup, cluster_ranks, scott_knott
from single_objective import hill_climb_restart, random_search, simulated_annealing, soga
from tuning_errors import ConfigurationError, SpecError
from tuning_statistics import TraceFamily, min_weight_budget_proportion, select_best
from variation import GAParams

logger = logging.getLogger(__name__)


def open_source(spec: ExperimentSpec) -> MeasurementSource:
    """Load the landscape or dataset a spec points at."""
    if spec.landscape is not None:
        return load_landscape(fixture_path(spec.landscape))
    location = spec.dataset
    path = DatasetDownloader(cache_dir()).download(location) if is_remote(location) \
        else fixture_path(location)
    return load_dataset(path, spec.target, spec.auxiliary)


def case_name(spec: ExperimentSpec, source: MeasurementSource) -> str:
    """Identity shared by every treatment run on the same problem."""
    target = spec.target or 'target'
    return f"{source.name}/{target}"


def _run_optimizer(spec: ExperimentSpec, oracle: MeasurementOracle,
                   rng: np.random.Generator) -> RunTrace:
    params = GAParams(spec.population, spec.mutation_rate, spec.crossover_rate)
    flash_params = FlashParams(initial_sample=spec.initial_sample,
                               eval_budget=spec.surrogate_evaluations,
                               inner_population=spec.population,
                               inner_generations=max(1, spec.surrogate_evaluations
                                                     // spec.population))
    optimizer = spec.optimizer
    if optimizer == 'nsga2':
        return mmo_on_nsga2(oracle, spec.optimization_model(), params, rng)
    if optimizer == 'rs':
        return random_search(oracle, rng)
    if optimizer == 'shc':
        return hill_climb_restart(oracle, rng)
    if optimizer == 'soga':
        return soga(oracle, params, rng)
    if optimizer == 'sa':
        return simulated_annealing(oracle, rng)
    if optimizer == 'flash':
        return flash(oracle, rng, flash_params)
    if optimizer == 'flash-mmo':
        return flash_mmo(oracle, rng, flash_params, spec.optimization_model())
    raise SpecError(f"unknown optimizer {optimizer!r}")


def run_once(source: MeasurementSource, spec: ExperimentSpec, run_index: int) -> RunResult:
    """One independent run; its ledger and generator are private to it."""
    seed = spec.seed + run_index
    rng = np.random.default_rng(seed)
    oracle = MeasurementOracle(source, spec.budget)
    trace = _run_optimizer(spec, oracle, rng)
    if not trace.points:
        raise ConfigurationError(f"run {run_index} measured nothing")
    best = trace.best_raw
    return RunResult(run_index, seed, oracle.measured,
                     native(best.target, source.target_sense),
                     native(best.auxiliary, source.auxiliary_sense),
                     trace.best_configuration, trace)


def run_repeats(source: MeasurementSource, spec: ExperimentSpec, jobs: int = 1) -> List[RunResult]:
    indices = range(spec.repeats)
    worker = partial(run_once, source, spec)
    if jobs <= 1:
        return [worker(i) for i in indices]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, indices))


@dataclass
class Experiment:
    """A finished batch of runs and the context needed to write it out."""

    spec: ExperimentSpec
    case: str
    target_sense: ObjectiveSense
    auxiliary_sense: ObjectiveSense
    runs: List[RunResult]

    def header(self) -> dict:
        return {
            'case': self.case,
            'label': self.spec.label,
            'spec': self.spec.to_dict(),
            'target_sense': self.target_sense.value,
            'auxiliary_sense': self.auxiliary_sense.value,
        }

    def sample_group(self, label: Optional[str] = None) -> SampleGroup:
        values = [run.trace.best_target for run in self.runs]
        return SampleGroup(label or self.spec.label, tuple(values))

    def traces(self) -> List[RunTrace]:
        return [run.trace for run in self.runs]

    def write(self, path: Path):
        write_results(path, self.header(), self.runs, self.target_sense)


def run_experiment(spec: ExperimentSpec, jobs: int = 1,
                   source: Optional[MeasurementSource] = None) -> Experiment:
    source = source if source is not None else open_source(spec)
    logger.info("running %s on %s: %d repeats, budget %d", spec.label, source.name,
                spec.repeats, spec.budget)
    runs = run_repeats(source, spec, jobs)
    return Experiment(spec, case_name(spec, source), source.target_sense,
                      source.auxiliary_sense, runs)


@dataclass
class WeightSweep:
    """Best MMO weight under global normalization at full budget and, optionally, per budget share."""

    weights: Sequence[float]
    groups: List[SampleGroup]
    best_weight: str
    clusters: List[List[str]]
    proportion_groups: Optional[Dict[float, List[SampleGroup]]] = None
    min_proportion: Optional[float] = None

    def print_report(self):
        print("=" * 80)
        print("WEIGHT SWEEP (MMO, global normalization)")
        print("=" * 80)
        rank = cluster_ranks(self.clusters)
        for group in self.groups:
            marker = "  <- best" if group.label == self.best_weight else ""
            print(f"w={group.label:<8} rank {rank[group.label]}  mean best f_t "
                  f"{group.mean:.6g} ± {group.stderr:.3g}{marker}")
        if self.min_proportion is not None:
            print(f"\nSmallest budget share finding the same weight: "
                  f"{self.min_proportion:.0%}")
        print("=" * 80)
        print()


def _weight_groups(spec: ExperimentSpec, source: MeasurementSource,
                   weights: Sequence[float], jobs: int) -> List[SampleGroup]:
    groups = []
    for weight in weights:
        weighted = spec.replace(model='mmo', normalization='global', weight=weight)
        experiment = run_experiment(weighted, jobs, source)
        groups.append(experiment.sample_group(f"{weight:g}"))
    return groups


def sweep_weights(spec: ExperimentSpec, weights: Sequence[float],
                  proportions: Optional[Sequence[float]] = None, jobs: int = 1,
                  source: Optional[MeasurementSource] = None) -> WeightSweep:
    """Run every weight with global normalization and pick the best one.

    With ``proportions``, the sweep is repeated at each share of the budget
    to find the smallest share that already selects the same weight.
    """
    if not weights:
        raise SpecError("weight list is empty")
    if spec.optimizer != 'nsga2':
        raise SpecError("weight sweeps run on nsga2")
    source = source if source is not None else open_source(spec)
    groups = _weight_groups(spec, source, weights, jobs)
    best = select_best(groups)
    sweep = WeightSweep(weights, groups, best, scott_knott(groups))
    logger.info("best weight at full budget: %s", best)

    if proportions:
        per_share: Dict[float, List[SampleGroup]] = {}
        for proportion in sorted(proportions):
            if proportion == 1.0:
                per_share[proportion] = groups
                continue
            budget = max(spec.population, int(round(spec.budget * proportion)))
            per_share[proportion] = _weight_groups(spec.replace(budget=budget), source,
                                                   weights, jobs)
        if 1.0 not in per_share:
            per_share[1.0] = groups
        sweep.proportion_groups = per_share
        sweep.min_proportion = min_weight_budget_proportion(per_share)
    return sweep


def budget_family(spec: ExperimentSpec, optimizers: Sequence[str], budgets: Sequence[int],
                  jobs: int = 1, source: Optional[MeasurementSource] = None) -> TraceFamily:
    """Traces of every optimizer at every grid budget."""
    source = source if source is not None else open_source(spec)
    family = {}
    for budget in sorted(budgets):
        family[budget] = {
            name: run_experiment(spec.replace(optimizer=name, model=None, budget=budget),
                                 jobs, source).traces()
            for name in optimizers
        }
    return family


def population_family(spec: ExperimentSpec, optimizers: Sequence[str],
                      populations: Sequence[int], budget: int, jobs: int = 1,
                      source: Optional[MeasurementSource] = None) -> TraceFamily:
    """Traces of every optimizer at every grid population size, at ``budget``."""
    source = source if source is not None else open_source(spec)
    family = {}
    for size in sorted(populations):
        family[size] = {
            name: run_experiment(spec.replace(optimizer=name, model=None, budget=budget,
                                              population=size), jobs, source).traces()
            for name in optimizers
        }
    return family
