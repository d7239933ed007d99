"""Value types shared by the integrators."""

# standard
from dataclasses import dataclass, field
from typing import Mapping, Optional

# external
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

ParameterSet = Mapping[str, float]


@dataclass(frozen=True)
class TimeGrid:
    """
    Output grid of an integration.

    The solver starts at `t0` and reports states at exactly `points`, which
    must be strictly increasing with `t0 <= points[0]`.
    """

    t0: float
    points: np.ndarray

    def __post_init__(self) -> None:
        points = np.array(self.points, dtype=float).reshape(-1)
        t0 = float(self.t0)
        if points.size < 1:
            raise ValueError("A time grid needs at least one point.")
        if not (np.isfinite(t0) and np.all(np.isfinite(points))):
            raise ValueError("Time grid entries must be finite.")
        if np.any(np.diff(points) <= 0):
            raise ValueError("Time grid points must be strictly increasing.")
        if points[0] < t0:
            raise ValueError(f"First grid point {points[0]} lies before t0={t0}.")
        points.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "t0", t0)

    @classmethod
    def uniform(cls, t0: float, t_end: float, n_points: int) -> "TimeGrid":
        """`n_points` equally spaced points from `t0` to `t_end`, both included."""
        return cls(t0=t0, points=np.linspace(t0, t_end, n_points))

    @property
    def span(self) -> float:
        return float(self.points[-1] - self.t0)

    def __len__(self) -> int:
        return int(self.points.size)


class SolverConfig(BaseModel):
    """
    Tolerances and step limits of the integrators.

    `h_init` defaults to 1e-3 of the integration span and `h_max` to the
    whole span. With `adaptive=False` the explicit solver takes forced steps
    of exactly `h_init`; the implicit solver always steps with `h_init`.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    rtol: float = Field(1e-6, ge=1e-14)
    atol: float = Field(1e-9, gt=0)
    h_init: Optional[float] = Field(None, gt=0)
    h_min: float = Field(1e-12, gt=0)
    h_max: Optional[float] = Field(None, gt=0)
    max_steps: int = Field(1_000_000, gt=0)
    adaptive: bool = True

    @model_validator(mode="after")
    def _check_step_bounds(self) -> Self:
        if self.h_init is not None and self.h_init < self.h_min:
            raise ValueError(f"h_init={self.h_init} is below h_min={self.h_min}.")
        if self.h_max is not None and self.h_max < self.h_min:
            raise ValueError(f"h_max={self.h_max} is below h_min={self.h_min}.")
        if (
            self.h_init is not None
            and self.h_max is not None
            and self.h_init > self.h_max
        ):
            raise ValueError(f"h_init={self.h_init} exceeds h_max={self.h_max}.")
        return self

    def step_bounds(self, span: float) -> tuple[float, float]:
        """Resolve (h_init, h_max) for an integration over `span` time units."""
        h_max = self.h_max if self.h_max is not None else max(span, self.h_min)
        h_init = self.h_init if self.h_init is not None else 1e-3 * span
        h_init = min(max(h_init, self.h_min), h_max)
        return h_init, h_max


@dataclass(frozen=True)
class Trajectory:
    """States of a system reported at every point of `grid`."""

    grid: TimeGrid
    states: np.ndarray
    state_names: tuple[str, ...] = field(default=())
    y0: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        states = np.array(self.states, dtype=float)
        if states.ndim != 2 or states.shape[0] != len(self.grid):
            raise ValueError(
                f"Trajectory states of shape {states.shape} do not match a grid "
                f"of {len(self.grid)} points."
            )
        if not np.all(np.isfinite(states)):
            raise ValueError("Trajectory states must be finite.")
        if self.state_names and len(self.state_names) != states.shape[1]:
            raise ValueError("state_names length must equal the state dimension.")
        states.setflags(write=False)
        object.__setattr__(self, "states", states)
        if self.y0 is not None:
            object.__setattr__(self, "y0", np.array(self.y0, dtype=float).reshape(-1))
        object.__setattr__(self, "state_names", tuple(self.state_names))

    @property
    def times(self) -> np.ndarray:
        return self.grid.points

    @property
    def dimension(self) -> int:
        return int(self.states.shape[1])

    @property
    def initial_state(self) -> np.ndarray:
        """State at t0, or the first reported state when it was not recorded."""
        return self.y0 if self.y0 is not None else self.states[0]

    def column(self, index: int) -> np.ndarray:
        return self.states[:, index]


@dataclass(frozen=True)
class SteadyStateResult:
    """Where a steady-state search stopped and whether it converged."""

    state: np.ndarray
    t: float
    converged: bool
    residual: float
