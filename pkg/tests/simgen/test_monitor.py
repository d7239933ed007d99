"""Test monitor.py"""

# standard
import logging
from concurrent.futures import ThreadPoolExecutor

# internal
from simgen.monitor import runmon


class TestRunMonitor:
    """Test the run counters."""

    def test_counts(self):
        runmon.add_count("integrations")
        runmon.add_count("integrations", 4)
        runmon.add_named_count("models_fitted", "knn")
        runmon.add_named_count("models_fitted", "knn")
        runmon.add_named_count("models_fitted", "forest")
        snap = runmon.snapshot()
        assert snap["integrations"] == 5
        assert snap["models_fitted"] == {"forest": 1, "knn": 2}
        assert list(snap["models_fitted"]) == ["forest", "knn"]

    def test_threads_do_not_lose_counts(self):
        def bump(_):
            for _ in range(1000):
                runmon.add_count("series_generated")

        with ThreadPoolExecutor(max_workers=8) as pool:
            list(pool.map(bump, range(8)))
        assert runmon.snapshot()["series_generated"] == 8000

    def test_reset(self):
        runmon.add_count("cells_failed")
        runmon.reset()
        assert runmon.snapshot()["cells_failed"] == 0

    def test_failures_are_reported(self, caplog):
        runmon.add_count("series_failed", 2)
        with caplog.at_level(logging.WARNING, logger="main"):
            runmon.report()
        assert "2 series" in caplog.text
