"""Solver selection, including the explicit-to-implicit stiff fallback."""

# standard
import logging
from enum import Enum
from typing import Optional, Sequence

# external
import numpy as np

# internal
from ..exceptions import StepUnderflow
from ..monitor import runmon
from .explicit import integrate
from .implicit import integrate_implicit
from .systems import OdeSystem, resolve_system
from .types import ParameterSet, SolverConfig, TimeGrid, Trajectory

main_logger = logging.getLogger("main")


class SolverMethod(str, Enum):
    RK45 = "rk45"
    IMPLICIT = "implicit"
    AUTO = "auto"


def solve(
    system: OdeSystem | str,
    params: ParameterSet,
    y0: Sequence[float] | np.ndarray,
    grid: TimeGrid,
    cfg: Optional[SolverConfig] = None,
    method: SolverMethod | str = SolverMethod.RK45,
) -> Trajectory:
    """
    Integrate with the requested method.

    `auto` runs RK45 first and repeats the integration with the implicit
    trapezoidal rule when RK45 reports StepUnderflow.
    """
    method = SolverMethod(method)
    system = resolve_system(system)
    if method is SolverMethod.IMPLICIT:
        return integrate_implicit(system, params, y0, grid, cfg)
    try:
        return integrate(system, params, y0, grid, cfg)
    except StepUnderflow as e:
        if method is not SolverMethod.AUTO:
            raise
        main_logger.warning(f"{system.name}: {e} Retrying with the implicit solver.")
        runmon.add_count("stiff_fallbacks")
        return integrate_implicit(system, params, y0, grid, cfg)
