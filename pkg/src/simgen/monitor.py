"""Run monitor: thread-safe counters shared by the solver, generator and pipelines."""

# standard
import logging
import threading
from collections import defaultdict

main_logger = logging.getLogger("main")
event_logger = logging.getLogger("events")

__all__ = ["runmon"]


class _RunMonitor:
    """
    Run monitor Singleton: stores counters about the current run.

    Worker threads of the generator and experiment grid all report into the
    same instance, so every mutation takes the lock.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self.reset()

    def reset(self) -> None:
        with self._lock:
            self.integrations: int = 0
            self.stiff_fallbacks: int = 0
            self.series_generated: int = 0
            self.series_failed: int = 0
            self.models_fitted: dict[str, int] = defaultdict(int)
            self.cells_failed: int = 0

    def add_count(self, attr: str, count: int = 1) -> None:
        with self._lock:
            v = self.__getattribute__(attr) + count
            self.__setattr__(attr, v)
        return None

    def add_named_count(self, attr: str, name: str, count: int = 1) -> None:
        """For counts associated with a named model family."""
        with self._lock:
            self.__getattribute__(attr)[name] += count

    def snapshot(self) -> dict:
        with self._lock:
            return {
                "integrations": self.integrations,
                "stiff_fallbacks": self.stiff_fallbacks,
                "series_generated": self.series_generated,
                "series_failed": self.series_failed,
                "models_fitted": dict(sorted(self.models_fitted.items())),
                "cells_failed": self.cells_failed,
            }

    def report(self) -> dict:
        """Log the current counters and return them."""
        snap = self.snapshot()
        event_logger.info(
            f"Integrations: {snap['integrations']} "
            f"(stiff fallbacks: {snap['stiff_fallbacks']}), "
            f"series generated: {snap['series_generated']}."
        )
        for family, count in snap["models_fitted"].items():
            event_logger.info(f"Models fitted for {family}: {count}")
        if snap["series_failed"] or snap["cells_failed"]:
            main_logger.warning(
                f"Failures this run: {snap['series_failed']} series, "
                f"{snap['cells_failed']} experiment cells."
            )
        return snap


runmon = _RunMonitor()
