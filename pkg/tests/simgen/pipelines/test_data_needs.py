"""Test pipelines/data_needs.py and pipelines/reports.py"""

# external
import numpy as np
import pytest

# internal
from simgen.config import load_config_file
from simgen.exceptions import ExperimentError
from simgen.monitor import runmon
from simgen.paths import CONFIG_DIR
from simgen.pipelines import (
    REPORT_HEADER,
    ExperimentConfig,
    cell_seed,
    read_report,
    run_data_needs,
    split_series,
)


@pytest.fixture
def needs_config(decay_config) -> ExperimentConfig:
    return ExperimentConfig.model_validate(
        {
            "schema": 1,
            "name": "decay_needs",
            "kind": "data_needs",
            "generation": decay_config,
            "models": [{"family": "linear"}, {"family": "knn", "k": 1}],
            "dataset_sizes": [5, 10],
            "master_seed": 7,
        }
    )


class TestSplitSeries:
    """Test the train/test partition of series ids."""

    def test_partition_without_leakage(self):
        train, test = split_series(10, 0.2, seed=3)
        assert len(test) == 2
        assert not set(train) & set(test)
        assert sorted(train + test) == list(range(10))

    def test_seeded(self):
        assert split_series(20, 0.25, seed=1) == split_series(20, 0.25, seed=1)
        assert split_series(20, 0.25, seed=1) != split_series(20, 0.25, seed=2)

    def test_cell_seeds_differ(self):
        seeds = {cell_seed(7, m, s) for m in range(3) for s in range(3)}
        assert len(seeds) == 9


class TestRunDataNeeds:
    """Test the model x size experiment grid."""

    def test_grid_rows(self, needs_config, tmp_path):
        rows = run_data_needs(needs_config, out_dir=tmp_path, workers=2)
        assert [(r.model, r.size) for r in rows] == [
            ("knn", 5), ("knn", 10), ("linear", 5), ("linear", 10)
        ]
        assert all(r.seconds is None and r.nll is None for r in rows)
        assert rows[2].seed == cell_seed(7, 0, 0)
        assert runmon.snapshot()["models_fitted"] == {"knn": 2, "linear": 2}

    def test_linear_model_learns_linear_dynamics(self, needs_config, tmp_path):
        rows = run_data_needs(needs_config, out_dir=tmp_path)
        for row in rows:
            if row.model == "linear":
                assert row.nrmse < 1e-6

    def test_report_file(self, needs_config, tmp_path):
        rows = run_data_needs(needs_config, out_dir=tmp_path)
        written = read_report(tmp_path / "report.csv")
        assert list(written[0]) == REPORT_HEADER
        assert [float(w["nrmse"]) for w in written] == [r.nrmse for r in rows]
        assert written[0]["seconds"] == ""
        assert (tmp_path / "manifest.json").exists()

    def test_rerun_is_bit_identical(self, needs_config, tmp_path):
        run_data_needs(needs_config, out_dir=tmp_path / "a", workers=1)
        run_data_needs(needs_config, out_dir=tmp_path / "b", workers=4)
        assert (tmp_path / "a" / "report.csv").read_bytes() == (
            tmp_path / "b" / "report.csv"
        ).read_bytes()

    def test_timings_when_requested(self, needs_config, tmp_path):
        config = needs_config.model_copy(update={"record_timings": True})
        rows = run_data_needs(config, out_dir=tmp_path)
        assert all(r.seconds is not None and r.seconds >= 0 for r in rows)

    def test_failed_cell_names_model_and_size(self, needs_config, tmp_path):
        config = ExperimentConfig.model_validate(
            {**needs_config.dump(), "models": [{"family": "knn", "k": 500}]}
        )
        with pytest.raises(ExperimentError) as info:
            run_data_needs(config, out_dir=tmp_path)
        assert info.value.model == "knn"
        assert info.value.size in (5, 10)
        assert runmon.snapshot()["cells_failed"] >= 1

    def test_wrong_kind(self, needs_config, sir_cumulative_config, tmp_path):
        augment = ExperimentConfig.model_validate(
            {
                "schema": 1,
                "kind": "augmentation",
                "generation": sir_cumulative_config,
                "ground_truth": sir_cumulative_config,
                "target_column": "new_cases",
                "train_cutoff_index": 14,
            }
        )
        with pytest.raises(ValueError):
            run_data_needs(augment, out_dir=tmp_path)


# the shipped grid and sizes, with a lighter forest and network than the
# shipped config so every family finishes in minutes
FAST_MODELS = [
    {"family": "linear"},
    {"family": "knn", "k": 5},
    {"family": "tree", "max_depth": 10},
    {"family": "forest", "n_trees": 10, "feature_fraction": 0.6, "max_depth": 10},
    {"family": "nn", "hidden": [20, 20], "epochs": 20, "batch_size": 256},
]


@pytest.fixture(scope="module")
def sir_needs_rows(tmp_path_factory):
    data = load_config_file(CONFIG_DIR / "data_needs_sir.yaml")
    config = ExperimentConfig.model_validate({**data, "models": FAST_MODELS})
    assert config.dataset_sizes == [100, 1000, 10000]
    return run_data_needs(config, out_dir=tmp_path_factory.mktemp("sir_needs"))


@pytest.mark.slow
class TestDataNeedsTrend:
    """More synthetic series never hurt any family on the shipped SIR setup."""

    @pytest.mark.parametrize("family", ["linear", "knn", "tree", "forest", "nn"])
    def test_error_falls_with_size(self, sir_needs_rows, family):
        rows = [r for r in sir_needs_rows if r.model == family]
        assert [r.size for r in rows] == [100, 1000, 10000]
        nrmse = [r.nrmse for r in rows]
        assert np.all(np.isfinite(nrmse))
        assert nrmse[-1] <= nrmse[0]
