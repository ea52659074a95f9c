"""
NSGA-II driven by the single-objective, PMO or MMO model.

Each generation: mate, vary, measure the offspring (unique ones cost budget),
recompute the normalization bounds over parents and offspring, rebuild the
model objectives, nondominated-sort, keep the top n.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from budget_ledger import MeasurementOracle
from config_space import Configuration
from normalization import NormalizationBounds, bounds_for
from objectives import RawObjectives
from optimization_model import EvaluatedConfig, OptimizationModel, evaluate
from pareto_sorting import Population, nondominated_sort, select_survivors
from run_trace import RunTrace
from tuning_errors import ConfigurationError
from variation import (GAParams, binary_tournament, boundary_mutation,
                       random_population, uniform_crossover)

logger = logging.getLogger(__name__)

Measured = Tuple[Configuration, RawObjectives]

# generations in a row without a new distinct measurement before giving up
MAX_STALE_GENERATIONS = 100


def evaluate_pool(pool: Sequence[Measured], model: OptimizationModel,
                  previous: Optional[NormalizationBounds] = None
                  ) -> Tuple[List[EvaluatedConfig], NormalizationBounds]:
    """Evaluate ``pool`` under one bounds snapshot derived per the model's mode."""
    bounds = bounds_for(model.normalization, previous, [raw for _, raw in pool])
    return [evaluate(config, raw, model, bounds) for config, raw in pool], bounds


def model_fronts(raws: Sequence[RawObjectives], model: OptimizationModel,
                 bounds: Optional[NormalizationBounds] = None) -> List[List[int]]:
    """Fronts of a population of raw objectives under ``model``.

    With explicit ``bounds`` those are used as-is; otherwise they are derived
    from ``raws`` according to the model's normalization mode.
    """
    if bounds is None:
        bounds = bounds_for(model.normalization, None, raws)
    members = [evaluate(None, raw, model, bounds) for raw in raws]
    return nondominated_sort([m.objective_vector() for m in members])


class MMOSearch:
    """NSGA-II over a measurement oracle under a given optimization model."""

    def __init__(self, oracle: MeasurementOracle, model: OptimizationModel,
                 params: GAParams, rng: np.random.Generator,
                 max_generations: Optional[int] = None, quiet: bool = False):
        space = oracle.space
        if oracle.ledger.limit < min(params.population_size, space.size):
            raise ConfigurationError(
                f"budget {oracle.ledger.limit} is smaller than the population "
                f"size {params.population_size}")
        self.oracle = oracle
        self.model = model
        self.params = params
        self.rng = rng
        self.max_generations = max_generations
        # surrogate searches report progress at DEBUG only
        self.progress_level = logging.DEBUG if quiet else logging.INFO
        self.population: Optional[Population] = None
        self.bounds: Optional[NormalizationBounds] = None

    def _measure_all(self, configs: Sequence[Configuration]) -> Tuple[List[Measured], bool]:
        measured = []
        for config in configs:
            if not self.oracle.can_measure(config):
                return measured, True
            measured.append((config, self.oracle.measure(config)))
        return measured, False

    def _offspring(self) -> Tuple[List[Measured], bool]:
        n = self.params.population_size
        space = self.oracle.space
        offspring: List[Measured] = []
        while len(offspring) < n:
            mother = binary_tournament(self.population, self.model, self.rng)
            father = binary_tournament(self.population, self.model, self.rng)
            children = uniform_crossover(mother.configuration, father.configuration,
                                         self.params.crossover_rate, self.rng)
            children = [boundary_mutation(space, child, self.params.mutation_rate, self.rng)
                        for child in children]
            measured, stopped = self._measure_all(children[:n - len(offspring)])
            offspring.extend(measured)
            if stopped:
                return offspring, True
        return offspring, False

    def _rank(self, pool: Sequence[Measured], generation: int):
        members, self.bounds = evaluate_pool(pool, self.model, self.bounds)
        survivors = select_survivors(members, self.params.population_size)
        self.population = Population(survivors, generation)

    def run(self) -> RunTrace:
        initial = random_population(self.oracle.space, self.params.population_size, self.rng)
        measured, _ = self._measure_all(initial)
        self._rank(measured, 0)
        logger.log(self.progress_level, "%s: initial population of %d measured",
                   self.model.describe(), len(measured))

        generation = 0
        stale = 0
        while not self.oracle.exhausted:
            if self.max_generations is not None and generation >= self.max_generations:
                break
            if stale >= MAX_STALE_GENERATIONS:
                logger.warning("no new configurations for %d generations, stopping",
                               stale)
                break
            before = self.oracle.measured
            offspring, stopped = self._offspring()
            stale = stale + 1 if self.oracle.measured == before else 0
            parents = [(m.configuration, m.raw) for m in self.population.members]
            generation += 1
            self._rank(parents + offspring, generation)
            logger.debug("generation %d: %d offspring, %d measurements used",
                         generation, len(offspring), self.oracle.measured)
            if stopped:
                break

        trace = self.oracle.trace()
        logger.log(self.progress_level,
                   "%s finished after %d generations, %d measurements, best f_t %g",
                   self.model.describe(), generation, self.oracle.measured,
                   trace.best_target)
        return trace


def mmo_on_nsga2(oracle: MeasurementOracle, model: OptimizationModel,
                 params: GAParams, rng: np.random.Generator) -> RunTrace:
    """Run NSGA-II under ``model`` until the oracle's budget is spent."""
    return MMOSearch(oracle, model, params, rng).run()
