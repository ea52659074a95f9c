"""
Nondominated sorting, crowding distance and ranked populations.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from optimization_model import EvaluatedConfig
from tuning_errors import DimensionError, EmptyPopulationError


def _as_matrix(vectors: Sequence[Sequence[float]]) -> np.ndarray:
    if len(vectors) == 0:
        raise EmptyPopulationError("cannot sort an empty population")
    lengths = {len(v) for v in vectors}
    if len(lengths) != 1:
        raise DimensionError(f"objective vectors have mixed lengths {sorted(lengths)}")
    return np.asarray(vectors, dtype=np.float64)


def dominance_matrix(vectors: Sequence[Sequence[float]]) -> np.ndarray:
    """``result[i, j]`` is True iff member i dominates member j."""
    f = _as_matrix(vectors)
    no_worse = (f[:, None, :] <= f[None, :, :]).all(axis=2)
    better = (f[:, None, :] < f[None, :, :]).any(axis=2)
    return no_worse & better


def nondominated_sort(vectors: Sequence[Sequence[float]]) -> List[List[int]]:
    """Partition member indices into fronts; front 0 is nondominated.

    Indices within a front are in ascending order.
    """
    dominated_by = dominance_matrix(vectors)
    remaining = dominated_by.sum(axis=0)
    assigned = np.zeros(len(remaining), dtype=bool)
    fronts = []
    while not assigned.all():
        front = np.flatnonzero((remaining == 0) & ~assigned)
        assigned[front] = True
        remaining = remaining - dominated_by[front, :].sum(axis=0)
        fronts.append([int(i) for i in front])
    return fronts


def crowding_distance(vectors: Sequence[Sequence[float]]) -> List[float]:
    """Crowding distance of each member of one front.

    Boundary members on any objective get +inf. An objective whose values
    are all equal adds nothing to interior members.
    """
    f = _as_matrix(vectors)
    size, objectives = f.shape
    distances = np.zeros(size, dtype=np.float64)
    if size <= 2:
        return [float("inf")] * size
    for m in range(objectives):
        order = np.argsort(f[:, m], kind="stable")
        column = f[order, m]
        span = column[-1] - column[0]
        distances[order[0]] = np.inf
        distances[order[-1]] = np.inf
        if span == 0:
            continue
        distances[order[1:-1]] += (column[2:] - column[:-2]) / span
    return [float(d) for d in distances]


@dataclass
class Population:
    """Evaluated members plus their front rank and crowding distance."""

    members: List[EvaluatedConfig]
    generation: int = 0
    ranks: List[int] = field(init=False)
    crowding: List[float] = field(init=False)

    def __post_init__(self):
        vectors = [m.objective_vector() for m in self.members]
        self.ranks = [0] * len(self.members)
        self.crowding = [0.0] * len(self.members)
        for rank, front in enumerate(nondominated_sort(vectors)):
            distances = crowding_distance([vectors[i] for i in front])
            for i, distance in zip(front, distances):
                self.ranks[i] = rank
                self.crowding[i] = distance

    def __len__(self) -> int:
        return len(self.members)

    def best_target(self) -> EvaluatedConfig:
        """Member with the lowest raw f_t; first in population order on ties."""
        return min(self.members, key=lambda m: m.raw.target)


def select_survivors(members: Sequence[EvaluatedConfig], n: int) -> List[EvaluatedConfig]:
    """Keep ``n`` members by front order, truncating the last front by crowding."""
    vectors = [m.objective_vector() for m in members]
    survivors: List[EvaluatedConfig] = []
    for front in nondominated_sort(vectors):
        if len(survivors) + len(front) <= n:
            survivors.extend(members[i] for i in front)
            continue
        distances = crowding_distance([vectors[i] for i in front])
        order = sorted(range(len(front)), key=lambda k: -distances[k])
        keep = sorted(order[:n - len(survivors)])
        survivors.extend(members[front[k]] for k in keep)
        break
    return survivors
