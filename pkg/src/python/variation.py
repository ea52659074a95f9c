"""
Genetic operators: mating selection, uniform crossover, boundary mutation.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from config_space import ConfigSpace, Configuration
from optimization_model import EvaluatedConfig, ModelKind, OptimizationModel
from pareto_sorting import Population
from tuning_errors import ConfigurationError, EmptyPopulationError, SpaceMismatchError


@dataclass(frozen=True)
class GAParams:
    """Population size and variation rates of the GA-family optimizers."""

    population_size: int = 50
    mutation_rate: float = 0.1
    crossover_rate: float = 0.9

    def __post_init__(self):
        if self.population_size < 1:
            raise ConfigurationError("population size must be positive")
        for label, rate in (("mutation", self.mutation_rate),
                            ("crossover", self.crossover_rate)):
            if not 0.0 <= rate <= 1.0:
                raise ConfigurationError(f"{label} rate must lie in [0, 1], got {rate}")


def random_population(space: ConfigSpace, n: int, rng: np.random.Generator
                      ) -> List[Configuration]:
    """``n`` configurations, distinct while the space allows it."""
    distinct = min(n, space.size)
    indices = rng.choice(space.size, size=distinct, replace=False)
    population = [space.config_at(int(i)) for i in indices]
    while len(population) < n:
        population.append(space.random_configuration(rng))
    return population


def _beats(population: Population, model: OptimizationModel, i: int, j: int) -> bool:
    """True when candidate ``j`` strictly beats candidate ``i``."""
    if model.kind is ModelKind.SINGLE:
        return population.members[j].target < population.members[i].target
    if population.ranks[j] != population.ranks[i]:
        return population.ranks[j] < population.ranks[i]
    return population.crowding[j] > population.crowding[i]


def binary_tournament(population: Population, model: OptimizationModel,
                      rng: np.random.Generator) -> EvaluatedConfig:
    """Draw two members uniformly; the better one wins, the first drawn on ties."""
    if len(population) == 0:
        raise EmptyPopulationError("tournament over an empty population")
    first = int(rng.integers(len(population)))
    second = int(rng.integers(len(population)))
    winner = second if _beats(population, model, first, second) else first
    return population.members[winner]


def uniform_crossover(p1: Configuration, p2: Configuration, rate: float,
                      rng: np.random.Generator) -> Tuple[Configuration, Configuration]:
    """With probability ``rate``, swap each option between the children with
    probability 0.5; otherwise return copies of the parents."""
    if len(p1.levels) != len(p2.levels):
        raise SpaceMismatchError("parents come from different configuration spaces")
    if rng.random() >= rate:
        return p1, p2
    swap = rng.random(len(p1.levels)) < 0.5
    child1 = tuple(b if s else a for a, b, s in zip(p1.levels, p2.levels, swap))
    child2 = tuple(a if s else b for a, b, s in zip(p1.levels, p2.levels, swap))
    return Configuration(child1), Configuration(child2)


def boundary_mutation(space: ConfigSpace, config: Configuration, rate: float,
                      rng: np.random.Generator) -> Configuration:
    """Each option, with probability ``rate``, jumps to its min or max level."""
    mutate = rng.random(space.option_count) < rate
    upper = rng.random(space.option_count) < 0.5
    levels = tuple(
        (option.max_level if up else 0) if hit else level
        for level, option, hit, up in zip(config.levels, space.options, mutate, upper))
    return Configuration(levels)
