"""
Single-objective optimizers on f_t: random search, stochastic hill climbing
with restarts, a generational GA and simulated annealing.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Set, Tuple

import numpy as np

from budget_ledger import MeasurementOracle
from config_space import Configuration
from normalization import reset_population_bounds
from objectives import RawObjectives
from optimization_model import OptimizationModel, evaluate
from pareto_sorting import Population
from run_trace import RunTrace
from tuning_errors import ConfigurationError, ScheduleError
from variation import (GAParams, binary_tournament, boundary_mutation,
                       random_population, uniform_crossover)

logger = logging.getLogger(__name__)

# consecutive cache-hit proposals after which a walker gives up
MAX_IDLE_PROPOSALS = 10_000
MAX_STALE_GENERATIONS = 100


def random_search(oracle: MeasurementOracle, rng: np.random.Generator) -> RunTrace:
    """Uniform sampling without replacement until the budget or space runs out."""
    space = oracle.space
    seen: Set[int] = set()
    while not oracle.exhausted:
        if len(seen) * 2 < space.size:
            index = int(rng.integers(space.size))
            if index in seen:
                continue
        else:
            unseen = [i for i in range(space.size) if i not in seen]
            index = unseen[int(rng.integers(len(unseen)))]
        seen.add(index)
        oracle.measure(space.config_at(index))
    return oracle.trace()


def hill_climb_restart(oracle: MeasurementOracle, rng: np.random.Generator,
                       stall_limit: Optional[int] = None) -> RunTrace:
    """Stochastic hill climbing over single-option neighbours with restarts.

    After ``stall_limit`` consecutive non-improving neighbours the climb
    restarts from a fresh random configuration (default: twice the option
    count). A limit of 0 degenerates to pure random restarts.
    """
    space = oracle.space
    if stall_limit is None:
        stall_limit = 2 * space.option_count
    if stall_limit < 0:
        raise ConfigurationError("stall limit must be non-negative")
    if oracle.exhausted:
        return oracle.trace()

    current = space.random_configuration(rng)
    current_raw = oracle.measure(current)
    stall = 0
    idle = 0
    restarts = 0
    while not oracle.exhausted and idle < MAX_IDLE_PROPOSALS:
        before = oracle.measured
        if stall >= stall_limit:
            current = space.random_configuration(rng)
            current_raw = oracle.measure(current)
            stall = 0
            restarts += 1
        else:
            candidate = space.neighbour(current, rng)
            raw = oracle.measure(candidate)
            if raw.target < current_raw.target:
                current, current_raw, stall = candidate, raw, 0
            else:
                stall += 1
        idle = idle + 1 if oracle.measured == before else 0
    logger.info("hill climbing finished: %d restarts, %d measurements",
                restarts, oracle.measured)
    return oracle.trace()


def _ranked(pool: List[Tuple[Configuration, RawObjectives]], generation: int) -> Population:
    model = OptimizationModel.single()
    bounds = reset_population_bounds(raw for _, raw in pool)
    return Population([evaluate(c, raw, model, bounds) for c, raw in pool], generation)


def soga(oracle: MeasurementOracle, params: GAParams, rng: np.random.Generator) -> RunTrace:
    """Generational GA on f_t with elitism of one."""
    space = oracle.space
    if oracle.ledger.limit < min(params.population_size, space.size):
        raise ConfigurationError(
            f"budget {oracle.ledger.limit} is smaller than the population "
            f"size {params.population_size}")
    model = OptimizationModel.single()
    n = params.population_size
    pool = [(c, oracle.measure(c)) for c in random_population(space, n, rng)]
    population = _ranked(pool, 0)

    stale = 0
    while not oracle.exhausted and stale < MAX_STALE_GENERATIONS:
        before = oracle.measured
        offspring: List[Tuple[Configuration, RawObjectives]] = []
        stopped = False
        while len(offspring) < n and not stopped:
            mother = binary_tournament(population, model, rng)
            father = binary_tournament(population, model, rng)
            for child in uniform_crossover(mother.configuration, father.configuration,
                                           params.crossover_rate, rng):
                child = boundary_mutation(space, child, params.mutation_rate, rng)
                if len(offspring) >= n:
                    break
                if not oracle.can_measure(child):
                    stopped = True
                    break
                offspring.append((child, oracle.measure(child)))
        if stopped:
            break
        stale = stale + 1 if oracle.measured == before else 0

        elite = population.best_target()
        worst = max(range(n), key=lambda i: (offspring[i][1].target, i))
        offspring[worst] = (elite.configuration, elite.raw)
        population = _ranked(offspring, population.generation + 1)
    return oracle.trace()


@dataclass(frozen=True)
class AnnealingSchedule:
    """Geometric cooling. ``initial_temperature`` None means: the standard
    deviation of f_t over the warm-up sample."""

    initial_temperature: Optional[float] = None
    alpha: float = 0.95
    warmup: int = 10

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ScheduleError(f"cooling factor must lie in (0, 1), got {self.alpha}")
        if self.initial_temperature is not None and self.initial_temperature < 0:
            raise ScheduleError("initial temperature must be non-negative")
        if self.warmup < 1:
            raise ScheduleError("warm-up sample needs at least one configuration")


def accept_move(delta: float, temperature: float, rng: np.random.Generator) -> bool:
    """Metropolis rule: improvements and ties always, worsening with exp(-Δ/T)."""
    if delta <= 0:
        return True
    if temperature <= 0:
        return False
    return rng.random() < math.exp(-delta / temperature)


def simulated_annealing(oracle: MeasurementOracle, rng: np.random.Generator,
                        schedule: AnnealingSchedule = AnnealingSchedule()) -> RunTrace:
    """Single-option-neighbour annealing; the trace keeps the best-so-far.

    The temperature follows ``T0 * alpha**k`` after the k-th measurement past
    the warm-up; cache hits leave it unchanged.
    """
    space = oracle.space
    warmup = random_population(space, min(schedule.warmup, oracle.ledger.limit), rng)
    sample = [(c, oracle.measure(c)) for c in warmup]
    if not sample:
        return oracle.trace()
    if schedule.initial_temperature is None:
        temperature = float(np.std([raw.target for _, raw in sample]))
    else:
        temperature = schedule.initial_temperature
    current, current_raw = min(sample, key=lambda item: item[1].target)

    idle = 0
    while not oracle.exhausted and idle < MAX_IDLE_PROPOSALS:
        before = oracle.measured
        candidate = space.neighbour(current, rng)
        raw = oracle.measure(candidate)
        if accept_move(raw.target - current_raw.target, temperature, rng):
            current, current_raw = candidate, raw
        if oracle.measured == before:
            idle += 1
        else:
            # cools once per charged measurement
            temperature *= schedule.alpha
            idle = 0
    logger.info("annealing finished at T=%g after %d measurements",
                temperature, oracle.measured)
    return oracle.trace()
