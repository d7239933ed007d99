"""Shared fixtures for the simgen test suite."""

# external
import pytest

# internal
from simgen.monitor import runmon

N_GERMANY = 83_166_711


@pytest.fixture(autouse=True)
def fresh_monitor():
    runmon.reset()
    yield
    runmon.reset()


@pytest.fixture
def sir_cumulative_config() -> dict:
    """Generation recipe of the augmentation experiment, without noise."""
    return {
        "system": "sir_cumulative",
        "parameters": {
            "beta": {"kind": "uniform", "low": 0.32, "high": 0.35},
            "gamma": {"kind": "uniform", "low": 0.123, "high": 0.125},
            "N": N_GERMANY,
        },
        "initial_conditions": {"S": N_GERMANY - 100, "I": 100, "R": 0, "C_sigma": 100},
        "grid": {"t0": 0, "t_end": 59, "n_points": 60},
        "observables": [
            {"name": "new_cases", "kind": "difference", "components": ["C_sigma"]}
        ],
        "n_series": 10,
        "master_seed": 42,
    }


@pytest.fixture
def decay_config() -> dict:
    """Exactly learnable linear system: constant rate, random amplitude."""
    return {
        "system": "exponential_decay",
        "parameters": {"k": 0.1},
        "initial_conditions": {"y": {"kind": "uniform", "low": 1.0, "high": 10.0}},
        "grid": {"t_end": 19, "n_points": 20},
        "solver": {"rtol": 1e-10, "atol": 1e-12},
        "n_series": 20,
        "master_seed": 7,
    }
