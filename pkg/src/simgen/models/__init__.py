"""Built-in ODE systems, derived observables and series preprocessing."""

from .types import SirCumulativeState, SirParams, SirState, SupportedSystems
from .sir import SirCumulativeSystem, SirSystem, sir_cumulative_rhs, sir_rhs
from .decay import ExponentialDecay
from .preprocessing import finite_difference, moving_average
from .observables import (
    DerivedObservable,
    ObservableKind,
    evaluate_observable,
    observable_times,
)
from .registry import BUILTIN_SYSTEMS, register_builtin_systems

register_builtin_systems()

__all__ = [
    "SirCumulativeState",
    "SirParams",
    "SirState",
    "SupportedSystems",
    "SirCumulativeSystem",
    "SirSystem",
    "sir_cumulative_rhs",
    "sir_rhs",
    "ExponentialDecay",
    "finite_difference",
    "moving_average",
    "DerivedObservable",
    "ObservableKind",
    "evaluate_observable",
    "observable_times",
    "BUILTIN_SYSTEMS",
    "register_builtin_systems",
]
