"""
Discrete configuration spaces and the configurations in them.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import math
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np

from tuning_errors import SpaceMismatchError

Level = Union[int, float, str]


@dataclass(frozen=True)
class OptionSpec:
    """One configurable option and its ordered discrete levels."""

    name: str
    values: Tuple[Level, ...]

    def __post_init__(self):
        if not self.values:
            raise SpaceMismatchError(f"option {self.name!r} has no levels")

    @property
    def level_count(self) -> int:
        return len(self.values)

    @property
    def max_level(self) -> int:
        return len(self.values) - 1


@dataclass(frozen=True)
class Configuration:
    """A point in a configuration space, stored as per-option level indices."""

    levels: Tuple[int, ...]

    def __str__(self) -> str:
        return ";".join(str(level) for level in self.levels)

    @classmethod
    def parse(cls, text: str) -> "Configuration":
        """Inverse of ``str()``: semicolon-joined level indices."""
        return cls(tuple(int(part) for part in text.split(";") if part != ""))


@dataclass(frozen=True)
class ConfigSpace:
    """Immutable Cartesian product of option levels."""

    options: Tuple[OptionSpec, ...]

    def __post_init__(self):
        if not self.options:
            raise SpaceMismatchError("a configuration space needs at least one option")

    @classmethod
    def from_level_counts(cls, counts: Sequence[int]) -> "ConfigSpace":
        """Build an anonymous space with integer levels 0..count-1 per option."""
        return cls(tuple(OptionSpec(f"o{i}", tuple(range(count)))
                         for i, count in enumerate(counts)))

    @property
    def option_count(self) -> int:
        return len(self.options)

    @property
    def level_counts(self) -> Tuple[int, ...]:
        return tuple(option.level_count for option in self.options)

    @property
    def size(self) -> int:
        """Number of configurations: product of per-option level counts."""
        return math.prod(self.level_counts)

    @property
    def names(self) -> List[str]:
        return [option.name for option in self.options]

    def validate(self, config: Configuration) -> Configuration:
        """Return ``config`` unchanged, or raise if it is not in this space."""
        if len(config.levels) != self.option_count:
            raise SpaceMismatchError(
                f"configuration has {len(config.levels)} levels, "
                f"space has {self.option_count} options")
        for level, option in zip(config.levels, self.options):
            if not 0 <= level < option.level_count:
                raise SpaceMismatchError(
                    f"level {level} out of range for option {option.name!r}")
        return config

    def index_of(self, config: Configuration) -> int:
        """Mixed-radix rank of a configuration (last option varies fastest)."""
        index = 0
        for level, count in zip(config.levels, self.level_counts):
            index = index * count + level
        return index

    def config_at(self, index: int) -> Configuration:
        """Inverse of :meth:`index_of`."""
        if not 0 <= index < self.size:
            raise SpaceMismatchError(f"index {index} outside space of {self.size}")
        levels = []
        for count in reversed(self.level_counts):
            index, level = divmod(index, count)
            levels.append(level)
        return Configuration(tuple(reversed(levels)))

    def __iter__(self) -> Iterator[Configuration]:
        for index in range(self.size):
            yield self.config_at(index)

    def random_configuration(self, rng: np.random.Generator) -> Configuration:
        return Configuration(tuple(int(rng.integers(count)) for count in self.level_counts))

    def neighbour(self, config: Configuration, rng: np.random.Generator) -> Configuration:
        """Change one option to a different level, both chosen uniformly.

        Options with a single level are never picked. A space whose options
        all have one level has no neighbours; the configuration is returned.
        """
        mutable = [i for i, count in enumerate(self.level_counts) if count > 1]
        if not mutable:
            return config
        option = mutable[int(rng.integers(len(mutable)))]
        current = config.levels[option]
        level = int(rng.integers(self.level_counts[option] - 1))
        if level >= current:
            level += 1
        levels = list(config.levels)
        levels[option] = level
        return Configuration(tuple(levels))

    def print_summary(self):
        """Print the option grid."""
        print("=" * 80)
        print("CONFIGURATION SPACE")
        print("=" * 80)
        for option in self.options:
            print(f"  {option.name}: {option.level_count} levels "
                  f"({option.values[0]} .. {option.values[-1]})")
        print(f"Search space: {' × '.join(str(c) for c in self.level_counts)} = "
              f"{self.size:,} configurations")
        print("=" * 80)
        print()
