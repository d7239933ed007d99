"""
Derived observables: scalar read-outs computed from a trajectory.

An observable combines one or more state columns. Negative compartment
values left by solver error are clamped here, never in the solver state.
"""

# standard
from enum import Enum
from typing import List, Optional, Sequence

# external
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

# internal
from ..exceptions import IndexOutOfRange
from ..ode_engine.types import Trajectory
from .preprocessing import finite_difference

__all__ = ["ObservableKind", "DerivedObservable", "evaluate_observable", "observable_times"]

ComponentRef = int | str


class ObservableKind(str, Enum):
    STATE = "state"
    SUM = "sum"
    RATIO = "ratio"
    DIFFERENCE = "difference"


class DerivedObservable(BaseModel):
    """
    A named scalar series derived from a trajectory.

    - `state`: one component as is.
    - `sum`: sum of the listed components.
    - `ratio`: sum of the listed components divided by `denominator`, or by
      the initial total of `denominator_components`.
    - `difference`: first difference of one component; one point shorter,
      aligned to the later time point.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = Field(..., min_length=1)
    kind: ObservableKind = ObservableKind.STATE
    components: List[ComponentRef] = Field(..., min_length=1)
    denominator: Optional[float] = None
    denominator_components: Optional[List[ComponentRef]] = None
    # clips the compartment states read, not the derived values
    clamp_nonnegative: bool = True

    @model_validator(mode="after")
    def _check_kind_arguments(self) -> Self:
        single = (ObservableKind.STATE, ObservableKind.DIFFERENCE)
        if self.kind in single and len(self.components) != 1:
            raise ValueError(f"A {self.kind.value} observable takes one component.")
        if self.kind is ObservableKind.RATIO:
            if (self.denominator is None) == (self.denominator_components is None):
                raise ValueError(
                    "A ratio observable needs exactly one of `denominator` or "
                    "`denominator_components`."
                )
            if self.denominator is not None and self.denominator == 0:
                raise ValueError("Ratio denominator must be non-zero.")
        elif self.denominator is not None or self.denominator_components is not None:
            raise ValueError("Only ratio observables take a denominator.")
        return self

    @classmethod
    def identity(cls, name: str) -> "DerivedObservable":
        """The state column called `name`."""
        return cls(name=name, kind=ObservableKind.STATE, components=[name])

    def referenced_components(self) -> list[ComponentRef]:
        return list(self.components) + list(self.denominator_components or [])


def resolve_components(
    refs: Sequence[ComponentRef], state_names: Sequence[str], dimension: int
) -> list[int]:
    """Map names or indices onto column indices of a `dimension`-wide state."""
    indices = []
    for ref in refs:
        if isinstance(ref, str):
            if ref not in state_names:
                raise IndexOutOfRange(
                    f"Unknown state {ref!r}; states are {list(state_names)}."
                )
            indices.append(list(state_names).index(ref))
        else:
            if not 0 <= ref < dimension:
                raise IndexOutOfRange(
                    f"State index {ref} out of range for dimension {dimension}."
                )
            indices.append(int(ref))
    return indices


def evaluate_observable(obs: DerivedObservable, traj: Trajectory) -> np.ndarray:
    """Apply `obs` to `traj`; a pure function of the trajectory."""
    idx = resolve_components(obs.components, traj.state_names, traj.dimension)
    states = traj.states[:, idx]
    if obs.clamp_nonnegative:
        states = np.maximum(states, 0.0)

    match obs.kind:
        case ObservableKind.STATE | ObservableKind.SUM:
            values = states.sum(axis=1)
        case ObservableKind.DIFFERENCE:
            values = finite_difference(states[:, 0])
        case ObservableKind.RATIO:
            if obs.denominator is not None:
                denominator = obs.denominator
            else:
                den_idx = resolve_components(
                    obs.denominator_components, traj.state_names, traj.dimension
                )
                denominator = float(np.sum(traj.initial_state[den_idx]))
                if denominator == 0:
                    raise ValueError(
                        f"{obs.name}: initial total of {obs.denominator_components} is zero."
                    )
            values = states.sum(axis=1) / denominator

    return values


def observable_times(values: np.ndarray, traj: Trajectory) -> np.ndarray:
    """Time stamps of an observable's values; shortened series keep the later points."""
    return traj.times[traj.times.size - values.size:]
