"""
Shared fixtures: small spaces, in-memory measurement sources and landscapes.
"""
from pathlib import Path

import numpy as np
import pytest

from config_space import ConfigSpace, Configuration
from landscape import LandscapeSpec, generate_landscape
from objectives import ObjectiveSense, RawObjectives


class TableSource:
    """In-memory measurement source driven by a value function.

    Counts lookups so tests can check that cache hits never reach it.
    """

    target_sense = ObjectiveSense.MINIMIZE
    auxiliary_sense = ObjectiveSense.MINIMIZE

    def __init__(self, space: ConfigSpace, values, name: str = "table"):
        self.name = name
        self._space = space
        self.values = values
        self.lookups = 0

    @property
    def space(self) -> ConfigSpace:
        return self._space

    def lookup(self, config: Configuration) -> RawObjectives:
        self.lookups += 1
        target, auxiliary = self.values(config)
        return RawObjectives(float(target), float(auxiliary))


class ScriptedRng:
    """Stand-in generator returning scripted integer draws."""

    def __init__(self, integers):
        self._integers = list(integers)

    def integers(self, high, size=None):
        return self._integers.pop(0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def small_space():
    return ConfigSpace.from_level_counts([2, 3, 4])


@pytest.fixture
def table_source():
    return TableSource


@pytest.fixture
def scripted_rng():
    return ScriptedRng


@pytest.fixture
def sum_source(small_space):
    """f_t = sum of levels, f_a = number of options at level 0."""
    return TableSource(small_space,
                       lambda c: (sum(c.levels), sum(1 for level in c.levels if level == 0)),
                       name="sum")


@pytest.fixture(scope="session")
def tiny_landscape():
    return generate_landscape(LandscapeSpec(seed=3, level_counts=(4, 4, 4), bumps=4,
                                            ruggedness=0.2, name="tiny"))


@pytest.fixture(scope="session")
def rugged_landscape():
    return generate_landscape(LandscapeSpec(seed=1, level_counts=(5, 5, 5, 5, 5), bumps=20,
                                            ruggedness=0.5, name="rugged3k"))


@pytest.fixture
def write_csv(tmp_path):
    """Write ``lines`` to a CSV file under tmp_path and return its path."""
    def write(name: str, lines) -> Path:
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path
    return write
