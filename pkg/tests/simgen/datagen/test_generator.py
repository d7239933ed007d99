"""Test datagen/generator.py and datagen/types.py"""

# external
import numpy as np
import pytest
from pydantic import ValidationError

# internal
from simgen.datagen import GenerationConfig, generate, observe, seed_for
from simgen.exceptions import SeriesGenerationError
from simgen.monitor import runmon
from simgen.ode_engine import SolverConfig, solve


class TestGenerationConfig:
    """Test recipe validation."""

    def test_bare_numbers_become_constants(self, sir_cumulative_config):
        cfg = GenerationConfig.model_validate(sir_cumulative_config)
        assert cfg.parameters["N"].kind == "constant"
        assert cfg.column_names() == ["new_cases"]

    def test_unknown_key(self, sir_cumulative_config):
        with pytest.raises(ValidationError, match="noise_level"):
            GenerationConfig.model_validate({**sir_cumulative_config, "noise_level": 0.1})

    def test_unknown_parameter(self, sir_cumulative_config):
        params = {**sir_cumulative_config["parameters"], "delta": 0.1}
        with pytest.raises(ValidationError, match="delta"):
            GenerationConfig.model_validate({**sir_cumulative_config, "parameters": params})

    def test_missing_initial_condition(self, sir_cumulative_config):
        ics = dict(sir_cumulative_config["initial_conditions"])
        del ics["C_sigma"]
        with pytest.raises(ValidationError, match="C_sigma"):
            GenerationConfig.model_validate({**sir_cumulative_config, "initial_conditions": ics})

    def test_unknown_system(self, sir_cumulative_config):
        with pytest.raises(ValidationError):
            GenerationConfig.model_validate({**sir_cumulative_config, "system": "seir"})

    def test_noise_target_must_be_a_column(self, sir_cumulative_config):
        noise = {"kind": "additive_gaussian", "sigma": 1.0, "targets": ["S"]}
        with pytest.raises(ValidationError, match="targets"):
            GenerationConfig.model_validate({**sir_cumulative_config, "noise": noise})

    def test_zero_series(self, sir_cumulative_config):
        with pytest.raises(ValidationError):
            GenerationConfig.model_validate({**sir_cumulative_config, "n_series": 0})

    def test_state_columns_without_observables(self, decay_config):
        assert GenerationConfig.model_validate(decay_config).column_names() == ["y"]


class TestGenerate:
    """Test dataset generation."""

    def test_paper_recipe(self, sir_cumulative_config):
        cfg = GenerationConfig.model_validate({**sir_cumulative_config, "n_series": 100})
        dataset = generate(cfg, workers=4)
        assert len(dataset) == 100
        for s in dataset.series:
            new_cases = s.column("new_cases")
            assert np.all(new_cases > 0)
            peak = int(np.argmax(new_cases))
            assert np.all(np.diff(new_cases[: peak + 1]) >= 0)
            assert np.all(np.diff(new_cases[peak:]) <= 0)
        assert runmon.snapshot()["series_generated"] == 100

    def test_bit_identical_reruns(self, sir_cumulative_config):
        cfg = GenerationConfig.model_validate(
            {**sir_cumulative_config, "noise": {"kind": "multiplicative_lognormal", "sigma": 0.1}}
        )
        assert generate(cfg, workers=3) == generate(cfg, workers=1)

    def test_prefix_stable_when_growing(self, sir_cumulative_config):
        small = generate(GenerationConfig.model_validate({**sir_cumulative_config, "n_series": 5}))
        large = generate(GenerationConfig.model_validate({**sir_cumulative_config, "n_series": 6}))
        assert small.series == large.series[:5]
        assert large.head(5) == small

    def test_series_seeds(self, sir_cumulative_config):
        dataset = generate(GenerationConfig.model_validate(sir_cumulative_config))
        assert [s.seed for s in dataset.series] == [seed_for(42, i) for i in range(10)]

    def test_pipeline_identity(self, sir_cumulative_config):
        cfg = GenerationConfig.model_validate({**sir_cumulative_config, "n_series": 1})
        record = generate(cfg).series[0]
        traj = solve(
            "sir_cumulative",
            record.parameters,
            [record.initial_state[n] for n in ("S", "I", "R", "C_sigma")],
            cfg.grid.to_time_grid(),
            cfg.solver,
        )
        times, values, columns = observe(traj, cfg)
        assert np.array_equal(record.values, values)
        assert np.array_equal(record.times, times)
        assert columns == ("new_cases",)

    def test_cumulative_consistency(self, sir_cumulative_config):
        cfg = GenerationConfig.model_validate(
            {
                **sir_cumulative_config,
                "observables": [
                    {"name": "C", "kind": "state", "components": ["C_sigma"]},
                    {"name": "new_cases", "kind": "difference", "components": ["C_sigma"]},
                ],
            }
        )
        for s in generate(cfg).series:
            C = s.column("C")
            # the difference column is aligned to the later time point
            assert s.times.size == 59
            assert s.column("new_cases")[1:].sum() == pytest.approx(C[-1] - C[0], rel=1e-12)

    def test_sparsified_series(self, sir_cumulative_config):
        cfg = GenerationConfig.model_validate(
            {**sir_cumulative_config, "sparsifier": {"keep_fraction": 0.5}}
        )
        for s in generate(cfg).series:
            assert len(s) == 30
            assert s.times[0] == 1.0 and s.times[-1] == 59.0
            assert np.all(np.diff(s.times) > 0)

    def test_failure_carries_context(self, sir_cumulative_config):
        cfg = GenerationConfig.model_validate(
            {**sir_cumulative_config, "solver": SolverConfig(max_steps=3).model_dump()}
        )
        with pytest.raises(SeriesGenerationError) as info:
            generate(cfg, workers=1)
        assert info.value.index == 0
        assert set(info.value.parameters) >= {"beta", "gamma", "N", "S(0)"}
        assert runmon.snapshot()["series_failed"] >= 1
