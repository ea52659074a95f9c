import numpy as np
import pytest

import single_objective
from budget_ledger import MeasurementOracle
from config_space import ConfigSpace
from single_objective import (AnnealingSchedule, accept_move, hill_climb_restart,
                              random_search, simulated_annealing, soga)
from tuning_errors import ConfigurationError, ScheduleError
from variation import GAParams


def test_random_search_never_repeats(sum_source):
    oracle = MeasurementOracle(sum_source, 20)
    trace = random_search(oracle, np.random.default_rng(1))
    assert trace.measurements == 20
    assert sum_source.lookups == 20


def test_random_search_enumerates_small_spaces(sum_source):
    oracle = MeasurementOracle(sum_source, 100)
    trace = random_search(oracle, np.random.default_rng(2))
    assert trace.measurements == sum_source.space.size
    assert trace.best_target == 0


def test_random_search_is_seeded(tiny_landscape):
    runs = []
    for _ in range(2):
        oracle = MeasurementOracle(tiny_landscape, 25)
        random_search(oracle, np.random.default_rng(5))
        runs.append(list(oracle.ledger.cache))
    assert runs[0] == runs[1]


def test_hill_climbing_with_full_budget_finds_the_minimum(sum_source):
    oracle = MeasurementOracle(sum_source, sum_source.space.size)
    trace = hill_climb_restart(oracle, np.random.default_rng(3))
    assert trace.best_target == 0
    assert sum_source.lookups == oracle.measured


def test_hill_climbing_respects_budget(tiny_landscape):
    oracle = MeasurementOracle(tiny_landscape, 15)
    trace = hill_climb_restart(oracle, np.random.default_rng(4), stall_limit=0)
    assert trace.measurements == 15


def test_hill_climbing_rejects_negative_stall(sum_source):
    with pytest.raises(ConfigurationError):
        hill_climb_restart(MeasurementOracle(sum_source, 5), np.random.default_rng(0),
                           stall_limit=-1)


def test_hill_climbing_with_zero_budget(sum_source):
    trace = hill_climb_restart(MeasurementOracle(sum_source, 0), np.random.default_rng(0))
    assert trace.measurements == 0


def test_soga_stays_within_budget(tiny_landscape):
    oracle = MeasurementOracle(tiny_landscape, 40)
    trace = soga(oracle, GAParams(population_size=8), np.random.default_rng(6))
    assert oracle.measured <= 40
    assert trace.best_target >= tiny_landscape.optimum_value


def test_soga_rejects_budget_below_population(sum_source):
    with pytest.raises(ConfigurationError):
        soga(MeasurementOracle(sum_source, 4), GAParams(population_size=8),
             np.random.default_rng(0))


def test_accept_move_rules(rng):
    assert accept_move(-1.0, 1.0, rng)
    assert accept_move(0.0, 0.0, rng)
    assert not accept_move(1.0, 0.0, rng)
    accepted = sum(accept_move(1.0, 1.0, rng) for _ in range(10_000))
    assert accepted / 10_000 == pytest.approx(np.exp(-1.0), abs=0.02)


@pytest.mark.parametrize("kwargs", [{"alpha": 1.0}, {"alpha": 0.0},
                                    {"initial_temperature": -1.0}, {"warmup": 0}])
def test_schedule_validation(kwargs):
    with pytest.raises(ScheduleError):
        AnnealingSchedule(**kwargs)


def test_schedule_defaults():
    schedule = AnnealingSchedule()
    assert (schedule.initial_temperature, schedule.alpha, schedule.warmup) == (None, 0.95, 10)


def test_annealing_stays_within_budget(tiny_landscape):
    oracle = MeasurementOracle(tiny_landscape, 30)
    trace = simulated_annealing(oracle, np.random.default_rng(7))
    assert 10 <= trace.measurements <= 30
    assert trace.best_target == min(raw.target for raw in oracle.ledger.cache.values())


def test_annealing_warmup_larger_than_budget(sum_source):
    oracle = MeasurementOracle(sum_source, 4)
    trace = simulated_annealing(oracle, np.random.default_rng(8))
    assert trace.measurements == 4


def scrambled(space):
    """Integer-valued rugged f_t over ``space``."""
    return lambda c: ((space.index_of(c) * 7) % 11, 0)


def recorded_decisions(monkeypatch):
    decisions = []

    def recording(delta, temperature, rng):
        accepted = accept_move(delta, temperature, rng)
        decisions.append((delta, temperature, accepted))
        return accepted

    monkeypatch.setattr(single_objective, "accept_move", recording)
    return decisions


def test_annealing_near_zero_temperature_never_moves_uphill(monkeypatch, small_space,
                                                             table_source):
    decisions = recorded_decisions(monkeypatch)
    schedule = AnnealingSchedule(initial_temperature=1e-9)
    for seed in range(20):
        source = table_source(small_space, scrambled(small_space))
        simulated_annealing(MeasurementOracle(source, 24), np.random.default_rng(seed),
                            schedule)
    uphill = [accepted for delta, _, accepted in decisions if delta > 0]
    assert uphill
    assert not any(uphill)


def test_annealing_cools_once_per_measurement(monkeypatch, small_space, table_source):
    decisions = recorded_decisions(monkeypatch)
    oracle = MeasurementOracle(table_source(small_space, scrambled(small_space)), 24)
    trace = simulated_annealing(oracle, np.random.default_rng(3),
                                AnnealingSchedule(initial_temperature=1.0, alpha=0.5))
    walked = trace.measurements - 10
    temperatures = sorted({temperature for _, temperature, _ in decisions}, reverse=True)
    assert temperatures == [0.5 ** k for k in range(len(temperatures))]
    assert walked <= len(temperatures) <= walked + 1


def test_annealing_is_seeded(tiny_landscape):
    runs = []
    for _ in range(2):
        oracle = MeasurementOracle(tiny_landscape, 30)
        simulated_annealing(oracle, np.random.default_rng(11))
        runs.append(list(oracle.ledger.cache))
    assert runs[0] == runs[1]


def test_hill_climbing_reaches_a_unimodal_optimum_before_restarting(monkeypatch,
                                                                     table_source):
    space = ConfigSpace.from_level_counts([6])
    starts = []
    original = ConfigSpace.random_configuration

    def counting(self, rng):
        starts.append(source.lookups)
        return original(self, rng)

    monkeypatch.setattr(ConfigSpace, "random_configuration", counting)
    for seed in range(20):
        starts.clear()
        visited = []

        def valley(c):
            visited.append(c.levels[0])
            return abs(c.levels[0] - 2), 0

        source = table_source(space, valley)
        hill_climb_restart(MeasurementOracle(source, 6), np.random.default_rng(seed),
                           stall_limit=100)
        before_restart = visited[:starts[1]] if len(starts) > 1 else visited
        assert 2 in before_restart


def test_hill_climbing_is_seeded(tiny_landscape):
    runs = []
    for _ in range(2):
        oracle = MeasurementOracle(tiny_landscape, 30)
        hill_climb_restart(oracle, np.random.default_rng(12))
        runs.append(list(oracle.ledger.cache))
    assert runs[0] == runs[1]


def test_soga_population_best_never_worsens(monkeypatch, tiny_landscape):
    bests = []
    original = single_objective._ranked

    def recording(pool, generation):
        population = original(pool, generation)
        bests.append(population.best_target().raw.target)
        return population

    monkeypatch.setattr(single_objective, "_ranked", recording)
    soga(MeasurementOracle(tiny_landscape, 60), GAParams(population_size=8),
         np.random.default_rng(13))
    assert len(bests) >= 2
    assert all(later <= earlier for earlier, later in zip(bests, bests[1:]))


def test_soga_budget_equal_to_population(tiny_landscape):
    oracle = MeasurementOracle(tiny_landscape, 8)
    trace = soga(oracle, GAParams(population_size=8), np.random.default_rng(14))
    assert trace.measurements == 8
    assert trace.best_target == min(raw.target for raw in oracle.ledger.cache.values())


def test_soga_is_seeded(tiny_landscape):
    runs = []
    for _ in range(2):
        oracle = MeasurementOracle(tiny_landscape, 40)
        soga(oracle, GAParams(population_size=8), np.random.default_rng(15))
        runs.append(list(oracle.ledger.cache))
    assert runs[0] == runs[1]
