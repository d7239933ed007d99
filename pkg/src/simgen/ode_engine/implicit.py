"""Fixed-step implicit trapezoidal rule, the fallback for stiff systems."""

# standard
import logging
import math
from typing import Callable, Optional, Sequence

# external
import numpy as np

# internal
from ..exceptions import NewtonDivergence, StepLimitExceeded
from ..monitor import runmon
from .explicit import as_state, checked_rhs
from .systems import OdeSystem, resolve_system
from .types import ParameterSet, SolverConfig, TimeGrid, Trajectory

debug_logger = logging.getLogger("debug")

__all__ = ["integrate_implicit", "finite_difference_jacobian"]

MAX_NEWTON_ITERATIONS = 25
MIN_DAMPING = 1 / 1024
FD_RELATIVE_STEP = 1e-6


def finite_difference_jacobian(
    fun: Callable[[float, np.ndarray], np.ndarray], t: float, y: np.ndarray
) -> np.ndarray:
    """Central differences with step 1e-6 * (1 + |y_i|) per component."""
    d = y.size
    jac = np.empty((d, d))
    for i in range(d):
        delta = FD_RELATIVE_STEP * (1.0 + abs(y[i]))
        y_plus = y.copy()
        y_minus = y.copy()
        y_plus[i] += delta
        y_minus[i] -= delta
        jac[:, i] = (fun(t, y_plus) - fun(t, y_minus)) / (2.0 * delta)
    return jac


def _trapezoid_step(
    fun: Callable[[float, np.ndarray], np.ndarray],
    jac: Callable[[float, np.ndarray], np.ndarray],
    t: float,
    y: np.ndarray,
    f_t: np.ndarray,
    h: float,
    atol: float,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Solve z = y + h/2 (f(t, y) + f(t + h, z)) with damped Newton.

    Returns the new state and rhs at it.
    """
    t_new = t + h
    identity = np.eye(y.size)
    z = y + h * f_t
    f_z = fun(t_new, z)
    g = z - y - 0.5 * h * (f_t + f_z)

    for iteration in range(MAX_NEWTON_ITERATIONS):
        newton_matrix = identity - 0.5 * h * jac(t_new, z)
        try:
            dz = np.linalg.solve(newton_matrix, -g)
        except np.linalg.LinAlgError as e:
            raise NewtonDivergence(
                f"Singular Newton matrix at t={t_new:.6g}."
            ) from e

        g_norm = float(np.max(np.abs(g)))
        damping = 1.0
        while True:
            z_try = z + damping * dz
            f_try = fun(t_new, z_try)
            g_try = z_try - y - 0.5 * h * (f_t + f_try)
            if float(np.max(np.abs(g_try))) <= g_norm or damping <= MIN_DAMPING:
                break
            damping /= 2

        z, f_z, g = z_try, f_try, g_try
        if float(np.max(np.abs(damping * dz))) <= atol * (1.0 + float(np.max(np.abs(z)))):
            return z, f_z

    raise NewtonDivergence(
        f"Newton did not converge in {MAX_NEWTON_ITERATIONS} iterations at "
        f"t={t_new:.6g}."
    )


def integrate_implicit(
    system: OdeSystem | str,
    params: ParameterSet,
    y0: Sequence[float] | np.ndarray,
    grid: TimeGrid,
    cfg: Optional[SolverConfig] = None,
) -> Trajectory:
    """
    Trapezoidal rule with step `cfg.h_init` (1e-3 of the span by default).

    Every grid interval is split into equal sub-steps no longer than the
    configured step, so grid points are hit exactly.

    :raises NewtonDivergence: a step's Newton iteration did not converge.
    :raises NonFiniteRhs: the right-hand side produced NaN or infinity.
    """
    system = resolve_system(system)
    system.validate_params(params)
    cfg = cfg or SolverConfig()
    y = y_start = as_state(y0, system)
    fun = checked_rhs(system, params)

    def jac(t: float, z: np.ndarray) -> np.ndarray:
        analytic = system.jacobian(t, z, params)
        if analytic is not None:
            return analytic
        return finite_difference_jacobian(fun, t, z)

    h, _ = cfg.step_bounds(grid.span)
    points = grid.points
    states = np.empty((points.size, y.size))
    t = grid.t0
    f_t = fun(t, y)
    n_steps = 0

    for idx, t_target in enumerate(points):
        interval = t_target - t
        if interval > 0:
            n_sub = max(1, math.ceil(interval / h - 1e-9))
            t_start = t
            for k in range(1, n_sub + 1):
                t_next = t_target if k == n_sub else t_start + k * interval / n_sub
                y, f_t = _trapezoid_step(fun, jac, t, y, f_t, t_next - t, cfg.atol)
                t = t_next
                n_steps += 1
                if n_steps > cfg.max_steps:
                    raise StepLimitExceeded(
                        f"Reached max_steps={cfg.max_steps} at t={t:.6g}."
                    )
        states[idx] = y

    debug_logger.debug(f"{system.name}: {n_steps} trapezoidal steps.")
    runmon.add_count("integrations")
    return Trajectory(
        grid=grid, states=states, state_names=system.state_names, y0=y_start
    )
