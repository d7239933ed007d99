"""Test pipelines/augmentation.py"""

# external
import numpy as np
import pytest

# internal
from simgen.exceptions import CutoffTooEarly, PipelineError
from simgen.paths import TEST_DATA_DIR
from simgen.pipelines import (
    FORECAST_HEADER,
    ExperimentConfig,
    read_report,
    run_augmentation,
    split_at_cutoff,
)

SMALL_NET = {"family": "nn", "head": "student_t", "hidden": [8], "epochs": 15}


@pytest.fixture
def ground_truth_dict(sir_cumulative_config) -> dict:
    truth = {
        **sir_cumulative_config,
        "parameters": {**sir_cumulative_config["parameters"], "beta": 0.335, "gamma": 0.124},
        "grid": {"t0": 0, "t_end": 21, "n_points": 22},
        "noise": {"kind": "additive_gaussian", "sigma": 0.02, "scale": "relative_to_max"},
        "n_series": 1,
    }
    return {
        "schema": 1,
        "name": "augment",
        "kind": "augmentation",
        "generation": sir_cumulative_config,
        "ground_truth": truth,
        "target_column": "new_cases",
        "train_cutoff_index": 14,
        "moving_average_window": 1,
        "models": [SMALL_NET],
        "variants": ["real_only", "augmented", "transfer"],
        "fine_tune_epochs": 5,
        "master_seed": 3,
    }


class TestSplitAtCutoff:
    def test_split(self):
        train, actual = split_at_cutoff(np.arange(30.0), 20, 7, 7)
        assert train.size == 20
        assert actual.tolist() == list(range(20, 27))

    def test_short_tail(self):
        _, actual = split_at_cutoff(np.arange(24.0), 20, 7, 7)
        assert actual.size == 4

    def test_too_early(self):
        with pytest.raises(CutoffTooEarly):
            split_at_cutoff(np.arange(30.0), 13, 7, 7)

    def test_beyond_series(self):
        with pytest.raises(PipelineError):
            split_at_cutoff(np.arange(30.0), 31, 7, 7)


class TestRunAugmentation:
    """Test the variant comparison on a short observed series."""

    def test_forecast_rows(self, ground_truth_dict, tmp_path):
        config = ExperimentConfig.model_validate(ground_truth_dict)
        result = run_augmentation(config, out_dir=tmp_path, workers=2)
        assert len(result.forecasts) == 21
        for variant in ("real_only", "augmented", "transfer"):
            rows = [f for f in result.forecasts if f.variant == variant]
            assert [f.h for f in rows] == list(range(1, 8))
            for f in rows:
                assert f.lo85 <= f.lo50 <= f.mu <= f.hi50 <= f.hi85
                assert f.actual is not None
        sizes = {r.model: r.size for r in result.report}
        assert sizes == {"real_only": 0, "augmented": 10, "transfer": 10}
        assert all(np.isfinite(r.nll) for r in result.report)

    def test_variants_share_a_seed(self, ground_truth_dict, tmp_path):
        result = run_augmentation(
            ExperimentConfig.model_validate(ground_truth_dict), out_dir=tmp_path
        )
        assert len({r.seed for r in result.report}) == 1

    def test_output_files(self, ground_truth_dict, tmp_path):
        run_augmentation(ExperimentConfig.model_validate(ground_truth_dict), out_dir=tmp_path)
        forecasts = read_report(tmp_path / "forecasts.csv")
        assert list(forecasts[0]) == FORECAST_HEADER
        assert len(forecasts) == 21
        assert len(read_report(tmp_path / "report.csv")) == 3
        assert (tmp_path / "manifest.json").exists()

    def test_reproducible(self, ground_truth_dict, tmp_path):
        config = ExperimentConfig.model_validate(ground_truth_dict)
        run_augmentation(config, out_dir=tmp_path / "a")
        run_augmentation(config, out_dir=tmp_path / "b")
        assert (tmp_path / "a" / "forecasts.csv").read_bytes() == (
            tmp_path / "b" / "forecasts.csv"
        ).read_bytes()

    def test_cutoff_too_early(self, ground_truth_dict, tmp_path):
        config = ExperimentConfig.model_validate({**ground_truth_dict, "train_cutoff_index": 10})
        with pytest.raises(CutoffTooEarly):
            run_augmentation(config, out_dir=tmp_path)

    def test_real_file_with_partial_actuals(self, ground_truth_dict, tmp_path):
        data = {**ground_truth_dict, "real_data_path": str(TEST_DATA_DIR / "real_cases.csv")}
        del data["ground_truth"]
        data.update(moving_average_window=7, train_cutoff_index=20, variants=["real_only"])
        result = run_augmentation(ExperimentConfig.model_validate(data), out_dir=tmp_path)
        # 30 days smoothed over 7 leave 24 points, 4 of them after the cutoff
        assert [f.actual is not None for f in result.forecasts] == [True] * 4 + [False] * 3
        assert result.report[0].nrmse is not None

    @pytest.mark.slow
    def test_synthetic_data_helps(self, ground_truth_dict, tmp_path):
        gains = []
        for seed in range(5):
            data = {
                **ground_truth_dict,
                "models": [{**SMALL_NET, "hidden": [20, 20], "epochs": 100}],
                "generation": {**ground_truth_dict["generation"], "n_series": 50},
                "variants": ["real_only", "augmented"],
                "master_seed": seed,
            }
            result = run_augmentation(
                ExperimentConfig.model_validate(data), out_dir=tmp_path / str(seed)
            )
            nll = {r.model: r.nll for r in result.report}
            gains.append(nll["real_only"] - nll["augmented"])
        assert np.mean(gains) > 0
