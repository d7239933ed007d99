"""Integrators for registered ODE systems."""

from .types import (
    ParameterSet,
    SolverConfig,
    SteadyStateResult,
    TimeGrid,
    Trajectory,
)
from .systems import (
    SYSTEM_REGISTRY,
    CallableSystem,
    OdeSystem,
    get_system,
    register_system,
    registered_systems,
    resolve_system,
)
from .explicit import find_steady_state, integrate
from .implicit import integrate_implicit
from .core import SolverMethod, solve

__all__ = [
    "ParameterSet",
    "SolverConfig",
    "SteadyStateResult",
    "TimeGrid",
    "Trajectory",
    "SYSTEM_REGISTRY",
    "CallableSystem",
    "OdeSystem",
    "get_system",
    "register_system",
    "registered_systems",
    "resolve_system",
    "find_steady_state",
    "integrate",
    "integrate_implicit",
    "SolverMethod",
    "solve",
]
