"""
Synthetic rugged configuration landscapes.

The target surface is a sum of Gaussian wells over the level-index grid plus
seeded per-configuration roughness. The auxiliary surface mixes the target
with an independent surface according to a correlation regime. Every value is
a deterministic function of the spec (and hence the seed); arithmetic is
float64 in a fixed order.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import json
import logging
from dataclasses import asdict, dataclass
from enum import Enum
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from config_space import ConfigSpace, Configuration
from dataset_loader import Dataset
from objectives import ObjectiveSense, RawObjectives
from tuning_errors import GenerationError

logger = logging.getLogger(__name__)

MAX_LANDSCAPE_SIZE = 10 ** 6
CORRELATION_STRENGTH = 0.7


class CorrelationRegime(Enum):
    HARMONIC = "harmonic"
    CONFLICTING = "conflicting"
    MIXED = "mixed"


@dataclass(frozen=True)
class LandscapeSpec:
    """Everything that determines a synthetic landscape."""

    seed: int
    level_counts: Tuple[int, ...]
    bumps: int = 20
    ruggedness: float = 0.3
    correlation: CorrelationRegime = CorrelationRegime.MIXED
    name: str = "landscape"

    def __post_init__(self):
        object.__setattr__(self, "level_counts", tuple(int(c) for c in self.level_counts))
        if not self.level_counts or min(self.level_counts) < 1:
            raise GenerationError("every option needs at least one level")
        if self.bumps < 1:
            raise GenerationError("a landscape needs at least one bump")
        if self.ruggedness < 0:
            raise GenerationError("ruggedness must be non-negative")

    @property
    def size(self) -> int:
        return int(np.prod(self.level_counts, dtype=np.int64))

    def to_dict(self) -> dict:
        data = asdict(self)
        data["level_counts"] = list(self.level_counts)
        data["correlation"] = self.correlation.value
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "LandscapeSpec":
        return cls(seed=int(data["seed"]),
                   level_counts=tuple(data["level_counts"]),
                   bumps=int(data.get("bumps", 20)),
                   ruggedness=float(data.get("ruggedness", 0.3)),
                   correlation=CorrelationRegime(data.get("correlation", "mixed")),
                   name=str(data.get("name", "landscape")))


def _grid(level_counts: Tuple[int, ...]) -> np.ndarray:
    """(size, options) level indices in mixed-radix order, last option fastest."""
    return np.indices(level_counts).reshape(len(level_counts), -1).T.astype(np.float64)


def _well_surface(rng: np.random.Generator, grid: np.ndarray,
                  level_counts: Tuple[int, ...], bumps: int) -> np.ndarray:
    span = max(level_counts)
    surface = np.zeros(grid.shape[0], dtype=np.float64)
    for _ in range(bumps):
        centre = np.array([rng.integers(count) for count in level_counts], dtype=np.float64)
        width = max(0.5, rng.uniform(0.1, 0.35) * span)
        depth = rng.uniform(0.5, 1.5)
        distance = ((grid - centre) ** 2).sum(axis=1)
        surface -= depth * np.exp(-distance / (2.0 * width * width))
    return surface


def _standardize(values: np.ndarray) -> np.ndarray:
    spread = values.std()
    if spread == 0:
        return np.zeros_like(values)
    return (values - values.mean()) / spread


def count_local_optima(values: np.ndarray, level_counts: Tuple[int, ...]) -> int:
    """Strict local minima under the one-option-change neighbourhood.

    A configuration qualifies when it is strictly below every configuration
    that differs from it in exactly one option.
    """
    grid = values.reshape(level_counts)
    strict = np.ones(grid.shape, dtype=bool)
    for axis in range(grid.ndim):
        lowest = grid.min(axis=axis, keepdims=True)
        ties = (grid == lowest).sum(axis=axis, keepdims=True)
        strict &= (grid == lowest) & (ties == 1)
    return int(strict.sum())


class SyntheticLandscape:
    """A fully enumerated synthetic measurement source (both objectives minimized)."""

    target_sense = ObjectiveSense.MINIMIZE
    auxiliary_sense = ObjectiveSense.MINIMIZE

    def __init__(self, spec: LandscapeSpec, target: np.ndarray, auxiliary: np.ndarray):
        self.spec = spec
        self.name = spec.name
        self._space = ConfigSpace.from_level_counts(spec.level_counts)
        self.target = target
        self.auxiliary = auxiliary
        self.optimum_index = int(np.argmin(target))
        self.local_optima = count_local_optima(target, spec.level_counts)
        # budget, population, repeats and hits of a frozen fixture run
        self.hit_threshold: Optional[dict] = None

    @property
    def space(self) -> ConfigSpace:
        return self._space

    @property
    def optimum(self) -> Configuration:
        return self._space.config_at(self.optimum_index)

    @property
    def optimum_value(self) -> float:
        return float(self.target[self.optimum_index])

    def lookup(self, config: Configuration) -> RawObjectives:
        index = self._space.index_of(config)
        return RawObjectives(float(self.target[index]), float(self.auxiliary[index]))

    def correlation(self) -> float:
        """Realised Pearson correlation between the two objectives."""
        if self.target.std() == 0 or self.auxiliary.std() == 0:
            return 0.0
        return float(np.corrcoef(self.target, self.auxiliary)[0, 1])

    def to_dataset(self) -> Dataset:
        table = {self._space.config_at(i): (float(t), float(a))
                 for i, (t, a) in enumerate(zip(self.target, self.auxiliary))}
        return Dataset(self.name, self._space, table, "target", "auxiliary",
                       self.target_sense, self.auxiliary_sense)

    def manifest(self) -> dict:
        manifest = {
            "spec": self.spec.to_dict(),
            "size": self.spec.size,
            "global_optimum": {
                "configuration": list(self.optimum.levels),
                "value": self.optimum_value,
            },
            "local_optima": self.local_optima,
        }
        if self.hit_threshold is not None:
            manifest["hit_threshold"] = dict(self.hit_threshold)
        return manifest

    def write_manifest(self, path: Path):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.manifest(), f, indent=2, sort_keys=True)
            f.write("\n")
        logger.info("landscape manifest written to %s", path)

    def print_summary(self):
        print("=" * 80)
        print(f"SYNTHETIC LANDSCAPE {self.name} (seed {self.spec.seed})")
        print("=" * 80)
        print(f"Options: {' × '.join(str(c) for c in self.spec.level_counts)} = "
              f"{self.spec.size:,} configurations")
        print(f"Wells: {self.spec.bumps}, ruggedness: {self.spec.ruggedness:g}, "
              f"correlation regime: {self.spec.correlation.value}")
        print(f"Target range: [{self.target.min():.4f}, {self.target.max():.4f}]")
        print(f"Auxiliary range: [{self.auxiliary.min():.4f}, {self.auxiliary.max():.4f}]")
        print(f"Realised correlation: {self.correlation():+.3f}")
        print(f"Global optimum: {self.optimum} -> {self.optimum_value:.4f}")
        print(f"Strict local optima: {self.local_optima}")
        print("=" * 80)
        print()


def generate_landscape(spec: LandscapeSpec) -> SyntheticLandscape:
    """Build the landscape described by ``spec``."""
    if spec.size > MAX_LANDSCAPE_SIZE:
        raise GenerationError(
            f"space of {spec.size:,} configurations exceeds {MAX_LANDSCAPE_SIZE:,}")
    rng = np.random.default_rng(spec.seed)
    grid = _grid(spec.level_counts)

    surface = _well_surface(rng, grid, spec.level_counts, spec.bumps)
    surface += spec.ruggedness * rng.uniform(-1.0, 1.0, size=grid.shape[0])
    target = 10.0 + 100.0 * (surface - surface.min())

    other = _well_surface(rng, grid, spec.level_counts, spec.bumps)
    other += spec.ruggedness * rng.uniform(-1.0, 1.0, size=grid.shape[0])
    z_target, z_other = _standardize(target), _standardize(other)
    if spec.correlation is CorrelationRegime.HARMONIC:
        rho = np.full(grid.shape[0], CORRELATION_STRENGTH)
    elif spec.correlation is CorrelationRegime.CONFLICTING:
        rho = np.full(grid.shape[0], -CORRELATION_STRENGTH)
    else:
        # sign of the correlation flips across the first option's range
        half = spec.level_counts[0] / 2.0
        rho = np.where(grid[:, 0] < half, CORRELATION_STRENGTH, -CORRELATION_STRENGTH)
    mixed = rho * z_target + np.sqrt(1.0 - rho * rho) * z_other
    auxiliary = 5.0 + 50.0 * (mixed - mixed.min())

    landscape = SyntheticLandscape(spec, target, auxiliary)
    logger.info("generated landscape %s: %d configurations, %d local optima",
                spec.name, spec.size, landscape.local_optima)
    return landscape


def load_landscape(path: Path) -> SyntheticLandscape:
    """Regenerate a landscape from a manifest (or a bare spec) JSON file.

    When the file records a global optimum or a local-optima count, the
    regenerated landscape must reproduce them exactly. A hand-written fixture
    may give ``minimum_local_optima`` instead of the exact count.
    """
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    spec = LandscapeSpec.from_dict(data.get("spec", data))
    landscape = generate_landscape(spec)
    recorded = data.get("global_optimum")
    if recorded is not None:
        if (tuple(recorded["configuration"]) != landscape.optimum.levels
                or recorded["value"] != landscape.optimum_value):
            raise GenerationError(
                f"{path}: regenerated optimum {landscape.optimum} does not match manifest")
    if "size" in data and data["size"] != spec.size:
        raise GenerationError(f"{path}: manifest size {data['size']} does not match "
                              f"the spec's {spec.size}")
    if "local_optima" in data and data["local_optima"] != landscape.local_optima:
        raise GenerationError(f"{path}: regenerated landscape has {landscape.local_optima} "
                              f"local optima, manifest records {data['local_optima']}")
    minimum = data.get("minimum_local_optima")
    if minimum is not None and landscape.local_optima < minimum:
        raise GenerationError(f"{path}: regenerated landscape has {landscape.local_optima} "
                              f"local optima, fewer than {minimum}")
    landscape.hit_threshold = data.get("hit_threshold")
    return landscape
