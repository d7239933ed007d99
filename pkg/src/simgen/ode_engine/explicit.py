"""
Dormand-Prince 5(4) integrator with PI step-size control and dense output.

The 5th order solution is propagated, the embedded 4th order solution only
estimates the local error. States between steps come from the 4th order
continuous extension, so the reported grid never constrains step control.
"""

# standard
import logging
from typing import Optional, Sequence

# external
import numpy as np

# internal
from ..exceptions import NonFiniteRhs, StepLimitExceeded, StepUnderflow
from ..monitor import runmon
from .systems import OdeSystem, resolve_system
from .types import ParameterSet, SolverConfig, SteadyStateResult, TimeGrid, Trajectory

debug_logger = logging.getLogger("debug")

__all__ = ["integrate", "find_steady_state"]

# TABLEAU ######################################################################
C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
A = (
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
)
# difference between the embedded 4th order and the 5th order weights
E = np.array(
    [-71 / 57600, 0.0, 71 / 16695, -71 / 1920, 17253 / 339200, -22 / 525, 1 / 40]
)
# continuous extension: y(t + theta h) = y + h K^T P [theta, theta^2, theta^3, theta^4]
P = np.array(
    [
        [1, -8048581381 / 2820520608, 8663915743 / 2820520608,
         -12715105075 / 11282082432],
        [0, 0, 0, 0],
        [0, 131558114200 / 32700410799, -68118460800 / 10900136933,
         87487479700 / 32700410799],
        [0, -1754552775 / 470086768, 14199869525 / 1410260304,
         -10690763975 / 1880347072],
        [0, 127303824393 / 49829197408, -318862633887 / 49829197408,
         701980252875 / 199316789632],
        [0, -282668133 / 205662961, 2019193451 / 616988883,
         -1453857185 / 822651844],
        [0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
    ]
)

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 10.0
# PI controller exponents: alpha = 1/5 - 0.75 beta, beta = 0.04
ALPHA = 0.17
BETA = 0.04


def checked_rhs(system: OdeSystem, params: ParameterSet):
    """Right-hand side closure that refuses to return non-finite values."""

    def fun(t: float, y: np.ndarray) -> np.ndarray:
        dy = np.asarray(system.rhs(t, y, params), dtype=float)
        if not np.all(np.isfinite(dy)):
            raise NonFiniteRhs(
                f"{system.name}: non-finite derivative at t={t:.6g}, y={y}."
            )
        return dy

    return fun


def as_state(y0: Sequence[float] | np.ndarray, system: OdeSystem) -> np.ndarray:
    y = np.array(y0, dtype=float).reshape(-1)
    if y.size != system.dimension:
        raise ValueError(
            f"{system.name} has dimension {system.dimension}, got a state of "
            f"length {y.size}."
        )
    if not np.all(np.isfinite(y)):
        raise ValueError("Initial state must be finite.")
    return y


class DormandPrinceStepper:
    """
    Advances one accepted step at a time.

    After `step`, (`t_old`, `y_old`, `h`, `K`) describe the last step and
    `dense(t)` evaluates the continuous extension inside it. `f` always holds
    rhs(t, y) thanks to the first-same-as-last stage.
    """

    def __init__(
        self,
        system: OdeSystem,
        params: ParameterSet,
        t0: float,
        y0: np.ndarray,
        span: float,
        cfg: SolverConfig,
    ) -> None:
        self.fun = checked_rhs(system, params)
        self.cfg = cfg
        self.t = float(t0)
        self.y = y0.copy()
        self.f = self.fun(self.t, self.y)
        self.h, self.h_max = cfg.step_bounds(span)
        self._fixed_origin = self.t
        self._fixed_index = 0
        self._err_prev = 1e-4
        self.n_attempts = 0
        # last step, for dense output
        self.t_old = self.t
        self.y_old = self.y
        self.h_last = 0.0
        self.K = np.zeros((7, self.y.size))

    def _attempt(self, h: float) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
        self.n_attempts += 1
        if self.n_attempts > self.cfg.max_steps:
            raise StepLimitExceeded(
                f"Reached max_steps={self.cfg.max_steps} at t={self.t:.6g}."
            )
        K = np.empty((7, self.y.size))
        K[0] = self.f
        for s in range(1, 7):
            y_stage = self.y + h * (A[s] @ K[:s])
            K[s] = self.fun(self.t + C[s] * h, y_stage)
        # row 6 of A holds the 5th order weights, so y_stage is the new state
        y_new = y_stage
        err = h * (E @ K)
        scale = self.cfg.atol + self.cfg.rtol * np.maximum(np.abs(self.y), np.abs(y_new))
        err_norm = float(np.sqrt(np.mean((err / scale) ** 2)))
        return y_new, K[6].copy(), K, err_norm

    def _fixed_step(self, t_bound: float) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
        self._fixed_index += 1
        t_next = self._fixed_origin + self._fixed_index * self.h
        # absorb float drift so the last step lands on t_bound instead of overshooting
        if t_next >= t_bound - 1e-12 * max(1.0, abs(t_bound)):
            t_next = t_bound
        h = t_next - self.t
        y_new, f_new, K, _ = self._attempt(h)
        return h, y_new, f_new, K

    def _adaptive_step(self, t_bound: float) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
        rejected = False
        while True:
            if self.h < self.cfg.h_min:
                raise StepUnderflow(
                    f"Step size {self.h:.3g} fell below h_min={self.cfg.h_min:.3g} "
                    f"at t={self.t:.6g}; the system is likely stiff."
                )
            h = min(self.h, self.h_max, t_bound - self.t)
            y_new, f_new, K, err = self._attempt(h)
            if err <= 1.0:
                if err == 0.0:
                    factor = MAX_FACTOR
                else:
                    factor = SAFETY * err ** (-ALPHA) * self._err_prev ** BETA
                    factor = min(MAX_FACTOR, max(MIN_FACTOR, factor))
                if rejected:
                    factor = min(1.0, factor)
                self.h = h * factor
                self._err_prev = max(err, 1e-4)
                return h, y_new, f_new, K
            rejected = True
            self.h = h * max(MIN_FACTOR, SAFETY * err ** -0.2)

    def step(self, t_bound: float) -> None:
        """Take one accepted step towards `t_bound` without passing it."""
        if self.cfg.adaptive:
            h, y_new, f_new, K = self._adaptive_step(t_bound)
        else:
            h, y_new, f_new, K = self._fixed_step(t_bound)
        self.t_old, self.y_old, self.h_last, self.K = self.t, self.y, h, K
        # the fixed-step path pins the last step to t_bound exactly
        self.t = t_bound if self.t + h >= t_bound else self.t + h
        self.y = y_new
        self.f = f_new

    def dense(self, t: float) -> np.ndarray:
        theta = (t - self.t_old) / self.h_last
        powers = np.cumprod(np.full(4, theta))
        return self.y_old + self.h_last * (self.K.T @ (P @ powers))


def integrate(
    system: OdeSystem | str,
    params: ParameterSet,
    y0: Sequence[float] | np.ndarray,
    grid: TimeGrid,
    cfg: Optional[SolverConfig] = None,
) -> Trajectory:
    """
    Integrate `system` from `grid.t0` and report states at exactly `grid.points`.

    :raises StepLimitExceeded: `cfg.max_steps` attempts were not enough.
    :raises StepUnderflow: the adaptive step dropped below `cfg.h_min`.
    :raises NonFiniteRhs: the right-hand side produced NaN or infinity.
    """
    system = resolve_system(system)
    system.validate_params(params)
    cfg = cfg or SolverConfig()
    y = as_state(y0, system)
    points = grid.points
    states = np.empty((points.size, y.size))

    idx = 0
    while idx < points.size and points[idx] == grid.t0:
        states[idx] = y
        idx += 1

    if idx < points.size:
        stepper = DormandPrinceStepper(system, params, grid.t0, y, grid.span, cfg)
        t_end = float(points[-1])
        while idx < points.size:
            stepper.step(t_end)
            while idx < points.size and points[idx] <= stepper.t:
                if points[idx] == stepper.t:
                    states[idx] = stepper.y
                else:
                    states[idx] = stepper.dense(points[idx])
                idx += 1
        debug_logger.debug(
            f"{system.name}: {stepper.n_attempts} step attempts over "
            f"[{grid.t0}, {t_end}]."
        )

    runmon.add_count("integrations")
    return Trajectory(
        grid=grid, states=states, state_names=system.state_names, y0=y
    )


def find_steady_state(
    system: OdeSystem | str,
    params: ParameterSet,
    y0: Sequence[float] | np.ndarray,
    tol: float,
    t_max: float,
    cfg: Optional[SolverConfig] = None,
    t0: float = 0.0,
) -> SteadyStateResult:
    """
    Integrate until the sup-norm of the right-hand side drops below `tol`.

    Stops at `t_max` otherwise; `converged` tells the two outcomes apart.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}.")
    if t_max <= t0:
        raise ValueError(f"t_max={t_max} must lie after t0={t0}.")
    system = resolve_system(system)
    system.validate_params(params)
    cfg = cfg or SolverConfig()
    y = as_state(y0, system)

    stepper = DormandPrinceStepper(system, params, t0, y, t_max - t0, cfg)
    residual = float(np.max(np.abs(stepper.f)))
    while residual >= tol and stepper.t < t_max:
        stepper.step(t_max)
        residual = float(np.max(np.abs(stepper.f)))

    runmon.add_count("integrations")
    return SteadyStateResult(
        state=stepper.y.copy(),
        t=stepper.t,
        converged=residual < tol,
        residual=residual,
    )
