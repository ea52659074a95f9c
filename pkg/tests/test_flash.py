import logging

import numpy as np
import pytest

from budget_ledger import MeasurementOracle
from cart_tree import SurrogateBundle
from flash import (FlashParams, SurrogateSource, acquire_mmo, flash, flash_mmo,
                   sample_unmeasured)
from optimization_model import OptimizationModel
from tuning_errors import ConfigurationError

QUICK = FlashParams(initial_sample=10, eval_budget=50, inner_population=8,
                    inner_generations=3)


@pytest.mark.parametrize("kwargs", [{"initial_sample": 0}, {"eval_budget": 0},
                                    {"inner_population": 0}, {"inner_generations": 0}])
def test_params_are_validated(kwargs):
    with pytest.raises(ConfigurationError):
        FlashParams(**kwargs)


def test_initial_sample_larger_than_budget(tiny_landscape):
    with pytest.raises(ConfigurationError):
        flash(MeasurementOracle(tiny_landscape, 5), np.random.default_rng(0), QUICK)


def test_budget_larger_than_space(tiny_landscape):
    with pytest.raises(ConfigurationError):
        flash_mmo(MeasurementOracle(tiny_landscape, 65), np.random.default_rng(0), QUICK)


def test_sample_unmeasured(tiny_landscape, rng):
    oracle = MeasurementOracle(tiny_landscape, 64)
    for config in list(tiny_landscape.space)[:40]:
        oracle.measure(config)
    drawn = sample_unmeasured(oracle, 30, rng)
    assert len(drawn) == 30
    assert not any(oracle.is_measured(c) for c in drawn)
    for config in tiny_landscape.space:
        oracle.measure(config)
    assert sample_unmeasured(oracle, 5, rng) == []


def test_flash_spends_the_budget_on_distinct_configurations(tiny_landscape):
    oracle = MeasurementOracle(tiny_landscape, 20)
    trace = flash(oracle, np.random.default_rng(1), QUICK)
    assert trace.measurements == 20
    assert [p.measurements for p in trace.points] == list(range(1, 21))


def test_flash_with_full_budget_finds_the_optimum(tiny_landscape):
    oracle = MeasurementOracle(tiny_landscape, tiny_landscape.space.size)
    trace = flash(oracle, np.random.default_rng(2), QUICK)
    assert trace.best_target == tiny_landscape.optimum_value


def test_flash_mmo_spends_the_budget(tiny_landscape):
    oracle = MeasurementOracle(tiny_landscape, 20)
    trace = flash_mmo(oracle, np.random.default_rng(3), QUICK)
    assert trace.measurements == 20


def test_flash_mmo_is_seeded(tiny_landscape):
    runs = []
    for _ in range(2):
        oracle = MeasurementOracle(tiny_landscape, 16)
        flash_mmo(oracle, np.random.default_rng(4), QUICK,
                  OptimizationModel.mmo(0.5))
        runs.append(list(oracle.ledger.cache))
    assert runs[0] == runs[1]


def test_acquisition_returns_an_unmeasured_configuration(tiny_landscape):
    oracle = MeasurementOracle(tiny_landscape, 64)
    for config in list(tiny_landscape.space)[::2]:
        oracle.measure(config)
    bundle = SurrogateBundle.fit(list(oracle.ledger.cache.items()))
    choice = acquire_mmo(oracle, bundle, QUICK, np.random.default_rng(5))
    assert choice is not None
    assert not oracle.is_measured(choice)


def test_surrogate_source_answers_from_predictions(tiny_landscape):
    oracle = MeasurementOracle(tiny_landscape, 64)
    for config in tiny_landscape.space:
        oracle.measure(config)
    bundle = SurrogateBundle.fit(list(oracle.ledger.cache.items()), min_leaf=1)
    source = SurrogateSource(tiny_landscape.space, bundle)
    config = tiny_landscape.space.config_at(11)
    assert source.lookup(config) == tiny_landscape.lookup(config)


def test_flash_mmo_with_budget_equal_to_initial_sample_matches_flash(tiny_landscape):
    params = FlashParams(initial_sample=12, eval_budget=50, inner_population=8,
                         inner_generations=3)
    plain = flash(MeasurementOracle(tiny_landscape, 12), np.random.default_rng(6), params)
    mmo = flash_mmo(MeasurementOracle(tiny_landscape, 12), np.random.default_rng(6), params)
    assert mmo.points == plain.points
    assert mmo.best_configuration == plain.best_configuration


def test_acquisition_picks_the_last_unmeasured_configuration(tiny_landscape):
    space = tiny_landscape.space
    last = space.config_at(37)
    oracle = MeasurementOracle(tiny_landscape, space.size)
    for config in space:
        if config != last:
            oracle.measure(config)
    bundle = SurrogateBundle.fit(list(oracle.ledger.cache.items()))
    assert acquire_mmo(oracle, bundle, QUICK, np.random.default_rng(7)) == last


def test_flash_mmo_measures_the_last_unmeasured_configuration(tiny_landscape):
    space = tiny_landscape.space
    last = space.config_at(37)
    oracle = MeasurementOracle(tiny_landscape, space.size)
    for config in space:
        if config != last:
            oracle.measure(config)
    trace = flash_mmo(oracle, np.random.default_rng(8), QUICK)
    assert oracle.is_measured(last)
    assert trace.measurements == space.size


def test_surrogate_searches_stay_out_of_the_info_log(tiny_landscape, caplog):
    caplog.set_level(logging.INFO)
    flash_mmo(MeasurementOracle(tiny_landscape, 14), np.random.default_rng(9), QUICK)
    assert not [r for r in caplog.records if r.name == "nsga2" and r.levelno >= logging.INFO]
