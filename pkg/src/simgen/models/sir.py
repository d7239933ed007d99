"""Kermack-McKendrick SIR model, with and without a cumulative-case counter."""

# standard
from typing import Mapping, Sequence

# external
import numpy as np
from pydantic import ValidationError

# internal
from ..exceptions import ModelError
from ..ode_engine.systems import OdeSystem
from ..ode_engine.types import ParameterSet
from .types import SirCumulativeState, SirParams, SirState


def _as_sir_params(params: SirParams | Mapping[str, float]) -> SirParams:
    if isinstance(params, SirParams):
        return params
    try:
        return SirParams(**params)
    except ValidationError as e:
        raise ModelError(f"Invalid SIR parameters {dict(params)}: {e}") from e


def sir_rhs(
    t: float,
    state: SirState | Sequence[float],
    params: SirParams | Mapping[str, float],
) -> tuple[float, float, float]:
    """(dS, dI, dR) = (-beta S I / N, beta S I / N - gamma I, gamma I)."""
    p = _as_sir_params(params)
    S, I, R = state
    infection = p.beta * S * I / p.N
    recovery = p.gamma * I
    return (-infection, infection - recovery, recovery)


def sir_cumulative_rhs(
    t: float,
    state: SirCumulativeState | Sequence[float],
    params: SirParams | Mapping[str, float],
) -> tuple[float, float, float, float]:
    """SIR plus dC_sigma = beta S I / N, the inflow into I."""
    S, I, R, _ = state
    dS, dI, dR = sir_rhs(t, (S, I, R), params)
    return (dS, dI, dR, -dS)


class SirSystem(OdeSystem):
    name = "sir"
    state_names = ("S", "I", "R")
    parameter_names = ("beta", "gamma", "N")

    def validate_params(self, params: ParameterSet) -> None:
        super().validate_params(params)
        _as_sir_params(params)

    def rhs(self, t: float, y: np.ndarray, params: ParameterSet) -> np.ndarray:
        S, I = y[0], y[1]
        infection = params["beta"] * S * I / params["N"]
        recovery = params["gamma"] * I
        return np.array([-infection, infection - recovery, recovery])

    def jacobian(self, t: float, y: np.ndarray, params: ParameterSet) -> np.ndarray:
        S, I = y[0], y[1]
        a = params["beta"] / params["N"]
        g = params["gamma"]
        return np.array(
            [
                [-a * I, -a * S, 0.0],
                [a * I, a * S - g, 0.0],
                [0.0, g, 0.0],
            ]
        )


class SirCumulativeSystem(SirSystem):
    name = "sir_cumulative"
    state_names = ("S", "I", "R", "C_sigma")

    def rhs(self, t: float, y: np.ndarray, params: ParameterSet) -> np.ndarray:
        S, I = y[0], y[1]
        infection = params["beta"] * S * I / params["N"]
        recovery = params["gamma"] * I
        return np.array([-infection, infection - recovery, recovery, infection])

    def jacobian(self, t: float, y: np.ndarray, params: ParameterSet) -> np.ndarray:
        S, I = y[0], y[1]
        a = params["beta"] / params["N"]
        g = params["gamma"]
        return np.array(
            [
                [-a * I, -a * S, 0.0, 0.0],
                [a * I, a * S - g, 0.0, 0.0],
                [0.0, g, 0.0, 0.0],
                [a * I, a * S, 0.0, 0.0],
            ]
        )
