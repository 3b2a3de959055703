"""Wall-time and work counters for suites and solvers.

Kept in memory and logged; reports never contain them, so report bytes stay
reproducible.
"""

import logging
import time
from collections import defaultdict
from typing import Dict, Optional

logger = logging.getLogger(__name__)


class TimingLedger:
    """Durations per block name and counters of solver work (steps, iterations)."""

    def __init__(self):
        self.durations: Dict[str, list] = defaultdict(list)
        self.counters: Dict[str, int] = defaultdict(int)

    def record(self, name: str, seconds: float) -> None:
        self.durations[name].append(seconds)

    def count(self, name: str, amount: int = 1) -> None:
        self.counters[name] += amount

    def summary(self) -> Dict[str, dict]:
        """Per-name call count, total and slowest duration, plus the counters."""
        out = {
            name: {"calls": len(values), "total": sum(values), "max": max(values)}
            for name, values in self.durations.items()
            if values
        }
        if self.counters:
            out["counters"] = dict(self.counters)
        return out

    def clear(self) -> None:
        self.durations.clear()
        self.counters.clear()


ledger = TimingLedger()


class PerformanceMonitor:
    """Context manager timing a block into the ledger.

    Example:
        with PerformanceMonitor("simulate", {"steps": "1000"}) as timer:
            ...
        timer.duration
    """

    def __init__(self, name: str, tags: Optional[Dict[str, str]] = None):
        self.name = name
        self.tags = tags or {}
        self.duration = 0.0
        self._start = 0.0

    def __enter__(self) -> "PerformanceMonitor":
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.duration = time.perf_counter() - self._start
        ledger.record(self.name, self.duration)
        tags = " ".join(f"{k}={v}" for k, v in sorted(self.tags.items()))
        if exc_type is None:
            logger.info("%s finished in %.3fs %s", self.name, self.duration, tags)
        else:
            logger.info("%s aborted after %.3fs (%s)", self.name, self.duration, exc_type.__name__)
        return False
