"""Student's t likelihood, quantiles and central prediction intervals."""

# standard
import math

# external
import numpy as np
from scipy.special import betainc, digamma, gammaln

# internal
from ..exceptions import InvalidLevel, InvalidParams
from .types import ForecastDistribution

QUANTILE_TOL = 1e-10


def _check_params(sigma: np.ndarray, nu: np.ndarray) -> None:
    if np.any(~np.isfinite(sigma)) or np.any(sigma <= 0):
        raise InvalidParams(f"Scale must be positive, got {sigma}.")
    if np.any(~np.isfinite(nu)) or np.any(nu <= 0):
        raise InvalidParams(f"Degrees of freedom must be positive, got {nu}.")


def nll_terms(mu, sigma, nu, y) -> np.ndarray:
    """Elementwise negative log-density of y under t(mu, sigma, nu)."""
    mu, sigma, nu, y = (np.asarray(a, dtype=float) for a in (mu, sigma, nu, y))
    z2 = ((y - mu) / sigma) ** 2
    return (
        gammaln(nu / 2)
        - gammaln((nu + 1) / 2)
        + 0.5 * np.log(math.pi * nu)
        + np.log(sigma)
        + (nu + 1) / 2 * np.log1p(z2 / nu)
    )


def student_t_nll(dist: ForecastDistribution, y) -> float:
    """
    Negative log-likelihood of `y`, summed over every horizon step.

    :raises InvalidParams: a scale or degrees of freedom is not positive.
    """
    _check_params(dist.sigma, dist.nu)
    y = np.asarray(y, dtype=float)
    if y.shape != dist.mu.shape:
        raise ValueError(f"Observations {y.shape} do not match forecast {dist.mu.shape}.")
    return float(np.sum(nll_terms(dist.mu, dist.sigma, dist.nu, y)))


def nll_gradients(mu, sigma, nu, y) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Partial derivatives of the elementwise NLL with respect to mu, sigma and nu."""
    z = (y - mu) / sigma
    z2 = z * z
    denom = nu + z2
    d_mu = -(nu + 1) * z / (sigma * denom)
    d_sigma = 1 / sigma - (nu + 1) * z2 / (sigma * denom)
    d_nu = (
        0.5 * (digamma(nu / 2) - digamma((nu + 1) / 2))
        + 1 / (2 * nu)
        + 0.5 * np.log1p(z2 / nu)
        - (nu + 1) * z2 / (2 * nu * denom)
    )
    return d_mu, d_sigma, d_nu


def t_cdf(x: float, nu: float) -> float:
    """CDF of the standard t distribution."""
    tail = 0.5 * float(betainc(nu / 2, 0.5, nu / (nu + x * x)))
    return 1.0 - tail if x >= 0 else tail


def t_quantile(nu: float, p: float) -> float:
    """
    Inverse CDF of the standard t distribution, by bisection.

    The result is accurate to 1e-10 relative to max(1, |t|).
    """
    if not nu > 0:
        raise InvalidParams(f"Degrees of freedom must be positive, got {nu}.")
    if not 0 < p < 1:
        raise InvalidParams(f"Probability must lie in (0, 1), got {p}.")
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return -t_quantile(nu, 1 - p)

    lo, hi = 0.0, 1.0
    while t_cdf(hi, nu) < p:
        lo, hi = hi, hi * 2
    while hi - lo > QUANTILE_TOL * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if t_cdf(mid, nu) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def interval(dist: ForecastDistribution, level: float) -> tuple[np.ndarray, np.ndarray]:
    """
    Central prediction interval mu -/+ sigma * t_nu((1 + level) / 2).

    :raises InvalidLevel: `level` is outside (0, 1).
    """
    if not 0 < level < 1:
        raise InvalidLevel(f"Interval level must lie in (0, 1), got {level}.")
    _check_params(dist.sigma, dist.nu)
    p = (1 + level) / 2
    nus = dist.nu.reshape(-1)
    # forecasts usually share a handful of nu values across horizons
    cache: dict[float, float] = {}
    q = np.array([cache.setdefault(v, t_quantile(v, p)) for v in nus.tolist()])
    half = dist.sigma * q.reshape(dist.nu.shape)
    return dist.mu - half, dist.mu + half
