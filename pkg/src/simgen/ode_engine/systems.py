"""ODE system interface and the string-keyed system registry."""

# standard
import importlib
import logging
from abc import ABC, abstractmethod
from typing import Callable, ClassVar, Optional, Sequence

# external
import numpy as np

# internal
from ..exceptions import ModelError, UnregisteredSystemError
from .types import ParameterSet

debug_logger = logging.getLogger("debug")

__all__ = [
    "OdeSystem",
    "CallableSystem",
    "SYSTEM_REGISTRY",
    "register_system",
    "get_system",
    "registered_systems",
    "resolve_system",
]

RhsFunction = Callable[[float, np.ndarray, ParameterSet], np.ndarray]


class OdeSystem(ABC):
    """
    A system of ODEs dy/dt = f(t, y, params).

    Subclasses declare their state and parameter names and implement `rhs`;
    `jacobian` is optional and the implicit solver falls back to central
    finite differences when it returns None.
    """

    name: ClassVar[str]
    state_names: ClassVar[tuple[str, ...]]
    parameter_names: ClassVar[tuple[str, ...]]

    @property
    def dimension(self) -> int:
        return len(self.state_names)

    @abstractmethod
    def rhs(self, t: float, y: np.ndarray, params: ParameterSet) -> np.ndarray:
        """Time derivative of the state."""
        ...

    def jacobian(
        self, t: float, y: np.ndarray, params: ParameterSet
    ) -> Optional[np.ndarray]:
        return None

    def validate_params(self, params: ParameterSet) -> None:
        """Raise ModelError when a declared parameter is missing or unknown."""
        missing = [p for p in self.parameter_names if p not in params]
        unknown = [p for p in params if p not in self.parameter_names]
        if missing or unknown:
            raise ModelError(
                f"{self.name}: missing parameters {missing}, unknown parameters "
                f"{unknown}."
            )

    def state_index(self, name: str) -> int:
        try:
            return self.state_names.index(name)
        except ValueError:
            raise ModelError(
                f"{self.name} has no state named {name!r}; states are "
                f"{list(self.state_names)}."
            ) from None

    def __repr__(self) -> str:
        return f"{self.__class__.__name__} (name={self.name})"


class CallableSystem(OdeSystem):
    """Wrap plain callables as an OdeSystem, for user-defined models."""

    def __init__(
        self,
        name: str,
        state_names: Sequence[str],
        parameter_names: Sequence[str],
        rhs: RhsFunction,
        jacobian: Optional[RhsFunction] = None,
    ) -> None:
        self.name = name
        self.state_names = tuple(state_names)
        self.parameter_names = tuple(parameter_names)
        self._rhs = rhs
        self._jacobian = jacobian

    def rhs(self, t: float, y: np.ndarray, params: ParameterSet) -> np.ndarray:
        return np.asarray(self._rhs(t, y, params), dtype=float)

    def jacobian(
        self, t: float, y: np.ndarray, params: ParameterSet
    ) -> Optional[np.ndarray]:
        if self._jacobian is None:
            return None
        return np.asarray(self._jacobian(t, y, params), dtype=float)


# REGISTRY #####################################################################
SYSTEM_REGISTRY: dict[str, OdeSystem] = {}
# importing this module registers the built-in systems
_BUILTIN_SYSTEMS_MODULE = "simgen.models"


def register_system(system: OdeSystem, *, replace: bool = False) -> OdeSystem:
    """Add `system` to the registry under `system.name`."""
    if not isinstance(system, OdeSystem):
        raise TypeError(f"{system!r} is not an OdeSystem.")
    if system.name in SYSTEM_REGISTRY and not replace:
        raise ValueError(f"An ODE system named {system.name!r} is already registered.")
    SYSTEM_REGISTRY[system.name] = system
    debug_logger.debug(f"Registered ODE system {system.name}.")
    return system


def get_system(system_id: str) -> OdeSystem:
    if system_id not in SYSTEM_REGISTRY:
        importlib.import_module(_BUILTIN_SYSTEMS_MODULE)
    try:
        return SYSTEM_REGISTRY[system_id]
    except KeyError:
        raise UnregisteredSystemError(
            f"No ODE system registered as {system_id!r}; available: "
            f"{registered_systems()}."
        ) from None


def registered_systems() -> list[str]:
    importlib.import_module(_BUILTIN_SYSTEMS_MODULE)
    return sorted(SYSTEM_REGISTRY)


def resolve_system(system: "OdeSystem | str") -> OdeSystem:
    """Accept either a system instance or its registry id."""
    if isinstance(system, OdeSystem):
        return system
    return get_system(system)
