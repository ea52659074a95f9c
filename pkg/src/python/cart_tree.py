"""
CART regression tree over option level indices.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from config_space import Configuration
from objectives import RawObjectives
from tuning_errors import TrainingError


@dataclass(frozen=True)
class CartLeaf:
    value: float
    count: int


@dataclass(frozen=True)
class CartSplit:
    option: int
    threshold: float
    left: "CartNode"
    right: "CartNode"


CartNode = Union[CartLeaf, CartSplit]


def _best_split(x: np.ndarray, y: np.ndarray) -> Optional[Tuple[int, float]]:
    """Split minimising the summed child squared error; first found on ties."""
    n = len(y)
    best_loss = np.inf
    best = None
    for option in range(x.shape[1]):
        order = np.argsort(x[:, option], kind="stable")
        xs, ys = x[order, option], y[order]
        boundaries = np.flatnonzero(xs[1:] != xs[:-1]) + 1
        if boundaries.size == 0:
            continue
        sums = np.cumsum(ys)
        squares = np.cumsum(ys * ys)
        left_n = boundaries.astype(np.float64)
        right_n = n - left_n
        left_sum, left_sq = sums[boundaries - 1], squares[boundaries - 1]
        right_sum, right_sq = sums[-1] - left_sum, squares[-1] - left_sq
        loss = (left_sq - left_sum ** 2 / left_n) + (right_sq - right_sum ** 2 / right_n)
        k = int(np.argmin(loss))
        if loss[k] < best_loss:
            best_loss = loss[k]
            cut = boundaries[k]
            best = (option, (xs[cut - 1] + xs[cut]) / 2.0)
    return best


def _grow(x: np.ndarray, y: np.ndarray, min_leaf: int) -> CartNode:
    leaf = CartLeaf(float(np.mean(y)), len(y))
    if len(y) <= min_leaf or np.all(y == y[0]):
        return leaf
    split = _best_split(x, y)
    if split is None:
        return leaf
    option, threshold = split
    mask = x[:, option] <= threshold
    return CartSplit(option, float(threshold),
                     _grow(x[mask], y[mask], min_leaf),
                     _grow(x[~mask], y[~mask], min_leaf))


class CartTree:
    """Greedy variance-reduction regression tree."""

    def __init__(self, root: CartNode, min_leaf: int):
        self.root = root
        self.min_leaf = min_leaf

    def predict(self, config: Configuration) -> float:
        node = self.root
        while isinstance(node, CartSplit):
            node = node.left if config.levels[node.option] <= node.threshold else node.right
        return node.value

    @property
    def leaf_count(self) -> int:
        stack, leaves = [self.root], 0
        while stack:
            node = stack.pop()
            if isinstance(node, CartLeaf):
                leaves += 1
            else:
                stack.extend((node.left, node.right))
        return leaves


def cart_fit(samples: Sequence[Tuple[Configuration, float]], min_leaf: int = 2) -> CartTree:
    """Fit a tree; nodes of at most ``min_leaf`` samples or zero variance are leaves."""
    if not samples:
        raise TrainingError("cannot fit a regression tree without samples")
    if min_leaf < 1:
        raise TrainingError("min_leaf must be at least 1")
    x = np.array([config.levels for config, _ in samples], dtype=np.float64)
    y = np.array([value for _, value in samples], dtype=np.float64)
    return CartTree(_grow(x, y, min_leaf), min_leaf)


def cart_predict(tree: CartTree, config: Configuration) -> float:
    return tree.predict(config)


class SurrogateBundle:
    """One tree per objective, trained on the same measured sample."""

    def __init__(self, target: CartTree, auxiliary: CartTree):
        self.target = target
        self.auxiliary = auxiliary

    @classmethod
    def fit(cls, measured: Sequence[Tuple[Configuration, RawObjectives]],
            min_leaf: int = 2) -> "SurrogateBundle":
        return cls(cart_fit([(c, raw.target) for c, raw in measured], min_leaf),
                   cart_fit([(c, raw.auxiliary) for c, raw in measured], min_leaf))

    def predict(self, config: Configuration) -> RawObjectives:
        return RawObjectives(self.target.predict(config), self.auxiliary.predict(config))
