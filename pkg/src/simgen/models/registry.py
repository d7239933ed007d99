"""All the built-in ODE systems live here."""

# standard
from typing import Type

# internal
from ..ode_engine.systems import SYSTEM_REGISTRY, OdeSystem, register_system
from .types import SupportedSystems
from .sir import SirSystem, SirCumulativeSystem
from .decay import ExponentialDecay

BUILTIN_SYSTEMS: dict[SupportedSystems, Type[OdeSystem]] = {
    SupportedSystems.SIR: SirSystem,
    SupportedSystems.SIR_CUMULATIVE: SirCumulativeSystem,
    SupportedSystems.EXPONENTIAL_DECAY: ExponentialDecay,
}


def register_builtin_systems() -> None:
    for system_id, system_cls in BUILTIN_SYSTEMS.items():
        if system_id.value not in SYSTEM_REGISTRY:
            register_system(system_cls())
