"""
Sequential model-based tuning with CART surrogates.

``flash`` measures, each iteration, the best-predicted configuration among a
random sample of unmeasured ones. ``flash_mmo`` replaces that acquisition
with an MMO/NSGA-II search over the surrogate-predicted objectives.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from budget_ledger import MeasurementOracle
from cart_tree import SurrogateBundle, cart_fit
from config_space import ConfigSpace, Configuration
from nsga2 import MMOSearch
from objectives import RawObjectives
from optimization_model import OptimizationModel
from run_trace import RunTrace
from tuning_errors import ConfigurationError
from variation import GAParams, random_population

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FlashParams:
    """Initial sample size and surrogate-search effort."""

    initial_sample: int = 30
    eval_budget: int = 1000
    inner_population: int = 50
    inner_generations: int = 20
    min_leaf: int = 2

    def __post_init__(self):
        if self.initial_sample < 1:
            raise ConfigurationError("initial sample must hold at least one configuration")
        if self.eval_budget < 1 or self.inner_population < 1 or self.inner_generations < 1:
            raise ConfigurationError("surrogate search effort must be positive")


class SurrogateSource:
    """Measurement source answering from surrogate predictions."""

    def __init__(self, space: ConfigSpace, bundle: SurrogateBundle):
        self.name = "surrogate"
        self._space = space
        self.bundle = bundle

    @property
    def space(self) -> ConfigSpace:
        return self._space

    def lookup(self, config: Configuration) -> RawObjectives:
        return self.bundle.predict(config)


def _check_budget(oracle: MeasurementOracle, params: FlashParams):
    budget = oracle.ledger.limit
    if params.initial_sample > budget:
        raise ConfigurationError(
            f"initial sample {params.initial_sample} exceeds the budget {budget}")
    if budget > oracle.space.size:
        raise ConfigurationError(
            f"budget {budget} exceeds the search space of {oracle.space.size}")


def _initial_sample(oracle: MeasurementOracle, params: FlashParams,
                    rng: np.random.Generator):
    for config in random_population(oracle.space, params.initial_sample, rng):
        oracle.measure(config)


def sample_unmeasured(oracle: MeasurementOracle, count: int,
                      rng: np.random.Generator) -> List[Configuration]:
    """``count`` uniform draws (with replacement) from the unmeasured configurations."""
    space = oracle.space
    unmeasured = space.size - oracle.measured
    if unmeasured <= 0:
        return []
    if oracle.measured * 2 >= space.size:
        pool = [c for c in space if not oracle.is_measured(c)]
        return [pool[int(i)] for i in rng.integers(len(pool), size=count)]
    drawn = []
    while len(drawn) < count:
        config = space.config_at(int(rng.integers(space.size)))
        if not oracle.is_measured(config):
            drawn.append(config)
    return drawn


def _first_unmeasured(oracle: MeasurementOracle, rng: np.random.Generator
                      ) -> Optional[Configuration]:
    drawn = sample_unmeasured(oracle, 1, rng)
    return drawn[0] if drawn else None


def flash(oracle: MeasurementOracle, rng: np.random.Generator,
          params: FlashParams = FlashParams()) -> RunTrace:
    """CART-guided tuning on f_t with random-search acquisition."""
    _check_budget(oracle, params)
    _initial_sample(oracle, params, rng)
    while not oracle.exhausted:
        tree = cart_fit([(c, raw.target) for c, raw in oracle.ledger.cache.items()],
                        params.min_leaf)
        candidates = sample_unmeasured(oracle, params.eval_budget, rng)
        if not candidates:
            break
        predictions = [tree.predict(c) for c in candidates]
        choice = candidates[int(np.argmin(predictions))]
        oracle.measure(choice)
        logger.debug("flash measured %s (predicted %g)", choice, min(predictions))
    return oracle.trace()


def acquire_mmo(oracle: MeasurementOracle, bundle: SurrogateBundle,
                params: FlashParams, rng: np.random.Generator,
                model: OptimizationModel = OptimizationModel.mmo()) -> Optional[Configuration]:
    """Pick the next configuration by MMO/NSGA-II over the surrogates.

    The inner search may evolve through measured configurations; only the
    returned candidate must be unmeasured.
    """
    space = oracle.space
    inner = MeasurementOracle(SurrogateSource(space, bundle), space.size)
    search = MMOSearch(inner, model,
                       GAParams(population_size=params.inner_population), rng,
                       max_generations=params.inner_generations - 1, quiet=True)
    search.run()

    candidates = [m for m in search.population.members
                  if not oracle.is_measured(m.configuration)]
    if candidates:
        return min(candidates, key=lambda m: m.raw.target).configuration
    evaluated = [(c, raw) for c, raw in inner.ledger.cache.items()
                 if not oracle.is_measured(c)]
    if evaluated:
        return min(evaluated, key=lambda item: item[1].target)[0]
    return _first_unmeasured(oracle, rng)


def flash_mmo(oracle: MeasurementOracle, rng: np.random.Generator,
              params: FlashParams = FlashParams(),
              model: OptimizationModel = OptimizationModel.mmo()) -> RunTrace:
    """Flash with the acquisition search done in the MMO meta-objective space."""
    _check_budget(oracle, params)
    _initial_sample(oracle, params, rng)
    while not oracle.exhausted:
        bundle = SurrogateBundle.fit(list(oracle.ledger.cache.items()), params.min_leaf)
        choice = acquire_mmo(oracle, bundle, params, rng, model)
        if choice is None:
            break
        oracle.measure(choice)
        logger.debug("flash-mmo measured %s", choice)
    return oracle.trace()
