import math

import numpy as np
import pytest

from dominance import dominates
from normalization import NormalizationBounds
from objectives import RawObjectives
from optimization_model import OptimizationModel, evaluate
from pareto_sorting import (Population, crowding_distance, dominance_matrix,
                            nondominated_sort, select_survivors)
from tuning_errors import DimensionError, EmptyPopulationError


def brute_force_ranks(vectors):
    """Front index of each member: longest chain of dominators above it."""
    order = sorted(range(len(vectors)), key=lambda i: sum(vectors[i]))
    ranks = [0] * len(vectors)
    for i in order:
        dominators = [j for j in range(len(vectors)) if dominates(vectors[j], vectors[i])]
        ranks[i] = 1 + max((ranks[j] for j in dominators), default=-1)
    return ranks


def test_sort_example():
    assert nondominated_sort([(1, 1), (2, 2), (0, 3)]) == [[0, 2], [1]]


def test_identical_vectors_share_one_front():
    assert nondominated_sort([(1, 1)] * 4) == [[0, 1, 2, 3]]


def test_chain_gives_singleton_fronts():
    assert nondominated_sort([(1, 1), (2, 2), (3, 3)]) == [[0], [1], [2]]


def test_sort_rejects_bad_input():
    with pytest.raises(EmptyPopulationError):
        nondominated_sort([])
    with pytest.raises(DimensionError):
        nondominated_sort([(1, 2), (1, 2, 3)])


def test_sort_matches_brute_force():
    rng = np.random.default_rng(99)
    for _ in range(200):
        size = int(rng.integers(1, 201))
        vectors = [tuple(int(x) for x in row) for row in rng.integers(0, 20, size=(size, 2))]
        fronts = nondominated_sort(vectors)
        ranks = brute_force_ranks(vectors)
        assert sorted(i for front in fronts for i in front) == list(range(size))
        for rank, front in enumerate(fronts):
            assert all(ranks[i] == rank for i in front)


def test_dominance_matrix_is_irreflexive():
    matrix = dominance_matrix([(1, 1), (1, 1), (0, 2)])
    assert not matrix.diagonal().any()
    assert not matrix[0, 1] and not matrix[1, 0]


def test_crowding_two_members_are_boundaries():
    assert crowding_distance([(0, 1), (1, 0)]) == [math.inf, math.inf]


def test_crowding_evenly_spaced_line():
    distances = crowding_distance([(0, 2), (1, 1), (2, 0)])
    assert distances[0] == math.inf and distances[2] == math.inf
    assert distances[1] == pytest.approx(2.0)


def test_crowding_identical_vectors():
    distances = crowding_distance([(1, 1)] * 4)
    interior = [d for d in distances if d != math.inf]
    assert interior == [0.0, 0.0]


def evaluated(pairs, model=OptimizationModel.pmo()):
    bounds = NormalizationBounds.unit(model.normalization)
    return [evaluate(None, RawObjectives(t, a), model, bounds) for t, a in pairs]


def test_select_survivors_keeps_whole_fronts_then_most_crowded():
    members = evaluated([(0.0, 1.0), (0.5, 0.5), (1.0, 0.0), (0.6, 0.6),
                         (0.2, 0.9), (0.9, 0.95)])
    survivors = select_survivors(members, 4)
    assert len(survivors) == 4
    # first front: (0,1), (0.2,0.9), (0.5,0.5), (1,0)
    assert {(m.raw.target, m.raw.auxiliary) for m in survivors} == \
        {(0.0, 1.0), (0.2, 0.9), (0.5, 0.5), (1.0, 0.0)}

    truncated = select_survivors(members, 3)
    kept = {(m.raw.target, m.raw.auxiliary) for m in truncated}
    assert (0.0, 1.0) in kept and (1.0, 0.0) in kept


def test_population_ranks_and_best_target():
    members = evaluated([(0.5, 0.5), (0.1, 0.9), (0.1, 0.2), (0.9, 0.9)])
    population = Population(members, generation=3)
    assert population.ranks == [1, 1, 0, 2]
    assert population.best_target() is members[1]
    assert len(population) == 4
