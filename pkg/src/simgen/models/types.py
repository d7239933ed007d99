"""Parameter and state types of the built-in ODE systems."""

# standard
from enum import Enum
from typing import NamedTuple

# external
from pydantic import BaseModel, ConfigDict, Field


class SupportedSystems(Enum):
    SIR = "sir"
    SIR_CUMULATIVE = "sir_cumulative"
    EXPONENTIAL_DECAY = "exponential_decay"


class SirParams(BaseModel):
    """Transmission rate, recovery rate (both 1/day) and population size."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    beta: float = Field(..., gt=0)
    gamma: float = Field(..., gt=0)
    N: float = Field(..., gt=0)


class SirState(NamedTuple):
    S: float
    I: float
    R: float


class SirCumulativeState(NamedTuple):
    S: float
    I: float
    R: float
    C_sigma: float
