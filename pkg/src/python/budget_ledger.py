"""
Distinct-measurement budget accounting and the measurement oracle.

Only the first measurement of a configuration is charged; repeats are
served from the run's cache.

Copyright (c) 2025 John Byrd

SPDX-License-Identifier: BSD-3-Clause
"""
import logging
from typing import Dict, Optional, Protocol

from config_space import ConfigSpace, Configuration
from objectives import RawObjectives
from run_trace import RunTrace, TraceRecorder
from tuning_errors import BudgetExhausted, ConfigurationError

logger = logging.getLogger(__name__)


class MeasurementSource(Protocol):
    """Anything that can produce oriented objectives for a configuration."""

    name: str

    @property
    def space(self) -> ConfigSpace: ...

    def lookup(self, config: Configuration) -> RawObjectives: ...


class BudgetLedger:
    """Cache of measured configurations plus the charged-measurement count."""

    def __init__(self, limit: int):
        if limit < 0:
            raise ConfigurationError(f"budget must be non-negative, got {limit}")
        self.limit = limit
        self.cache: Dict[Configuration, RawObjectives] = {}

    @property
    def count(self) -> int:
        return len(self.cache)

    @property
    def remaining(self) -> int:
        return self.limit - self.count

    def __contains__(self, config: Configuration) -> bool:
        return config in self.cache


def measure(ledger: BudgetLedger, source: MeasurementSource,
            config: Configuration) -> RawObjectives:
    """Measure ``config`` through ``ledger``, charging only cache misses."""
    cached = ledger.cache.get(config)
    if cached is not None:
        return cached
    source.space.validate(config)
    if ledger.count >= ledger.limit:
        raise BudgetExhausted(ledger.limit)
    raw = source.lookup(config)
    ledger.cache[config] = raw
    return raw


class MeasurementOracle:
    """One run's view of a measurement source: ledger, cache and trace."""

    def __init__(self, source: MeasurementSource, budget: int):
        self.source = source
        self.ledger = BudgetLedger(budget)
        self._recorder = TraceRecorder()

    @property
    def space(self) -> ConfigSpace:
        return self.source.space

    @property
    def remaining(self) -> int:
        return self.ledger.remaining

    @property
    def measured(self) -> int:
        return self.ledger.count

    @property
    def exhausted(self) -> bool:
        """No budget left, or every configuration is already measured."""
        return self.ledger.remaining <= 0 or self.ledger.count >= self.space.size

    def is_measured(self, config: Configuration) -> bool:
        return config in self.ledger

    def can_measure(self, config: Configuration) -> bool:
        return config in self.ledger or self.ledger.remaining > 0

    def cached(self, config: Configuration) -> Optional[RawObjectives]:
        return self.ledger.cache.get(config)

    def measure(self, config: Configuration) -> RawObjectives:
        if config in self.ledger:
            return self.ledger.cache[config]
        raw = measure(self.ledger, self.source, config)
        self._recorder.record(self.ledger.count, config, raw)
        logger.debug("measured %s -> (%g, %g) [%d/%d]", config, raw.target,
                     raw.auxiliary, self.ledger.count, self.ledger.limit)
        return raw

    def trace(self) -> RunTrace:
        return self._recorder.trace
