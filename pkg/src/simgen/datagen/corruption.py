"""Sampling, measurement noise and sparsification of observed series."""

# standard
import math
from typing import Sequence

# external
import numpy as np

# internal
from ..exceptions import InvalidSpec, NegativeInput, TooSparse
from .types import (
    ConstantDist,
    LogNormalDist,
    NoiseKind,
    NoiseScale,
    NoiseSpec,
    NormalDist,
    UniformDist,
)

_DISTRIBUTIONS = (ConstantDist, UniformDist, NormalDist, LogNormalDist)


def sample(dist, rng: np.random.Generator) -> float:
    """Draw one value from a DistributionSpec."""
    if not isinstance(dist, _DISTRIBUTIONS):
        raise InvalidSpec(f"{dist!r} is not a distribution spec.")
    return dist.sample(rng)


def add_additive_gaussian(
    series: np.ndarray, sigma: float, rng: np.random.Generator
) -> np.ndarray:
    """out[k] = in[k] + eps_k with eps_k ~ N(0, sigma^2) iid."""
    series = np.asarray(series, dtype=float)
    if sigma < 0:
        raise InvalidSpec(f"sigma must be non-negative, got {sigma}.")
    return series + rng.normal(0.0, sigma, size=series.shape)


def add_lognormal(
    series: np.ndarray, sigma_log: float, rng: np.random.Generator
) -> np.ndarray:
    """out[k] = in[k] * exp(eps_k), eps_k ~ N(0, sigma_log^2); keeps the median."""
    series = np.asarray(series, dtype=float)
    if np.any(series < 0):
        raise NegativeInput(
            f"Multiplicative lognormal noise needs non-negative input, min is "
            f"{series.min()}."
        )
    if sigma_log < 0:
        raise InvalidSpec(f"sigma_log must be non-negative, got {sigma_log}.")
    return series * np.exp(rng.normal(0.0, sigma_log, size=series.shape))


def kept_count(m: int, keep_fraction: float) -> int:
    """max(2, round(keep_fraction * m)) with halves rounded up."""
    if not 0 < keep_fraction <= 1:
        raise InvalidSpec(f"keep_fraction must lie in (0, 1], got {keep_fraction}.")
    if m < 2 or math.ceil(keep_fraction * m) < 2:
        raise TooSparse(
            f"Keeping {keep_fraction:.3g} of {m} points leaves fewer than two."
        )
    return min(m, max(2, math.floor(keep_fraction * m + 0.5)))


def kept_indices(m: int, keep_fraction: float, rng: np.random.Generator) -> np.ndarray:
    """Sorted indices to keep: both endpoints plus a uniform draw of the interior."""
    k = kept_count(m, keep_fraction)
    interior = rng.choice(np.arange(1, m - 1), size=k - 2, replace=False)
    return np.concatenate(([0], np.sort(interior), [m - 1])).astype(int)


def sparsify(
    times: np.ndarray,
    values: np.ndarray,
    keep_fraction: float,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Randomly drop time points (rows of `values`), keeping order and endpoints."""
    times = np.asarray(times)
    values = np.asarray(values)
    if values.shape[0] != times.size:
        raise InvalidSpec("times and values must have the same number of rows.")
    idx = kept_indices(times.size, keep_fraction, rng)
    return times[idx], values[idx]


def apply_noise(
    values: np.ndarray,
    columns: Sequence[str],
    spec: NoiseSpec,
    rng: np.random.Generator,
) -> np.ndarray:
    """Corrupt the target columns of an (m, c) block in column order."""
    if spec.kind is NoiseKind.NONE:
        return values
    out = np.array(values, dtype=float)
    targets = spec.targets or list(columns)
    for j, name in enumerate(columns):
        if name not in targets:
            continue
        column = out[:, j]
        if spec.kind is NoiseKind.ADDITIVE_GAUSSIAN:
            sigma = spec.sigma
            if spec.scale is NoiseScale.RELATIVE_TO_MAX:
                sigma = spec.sigma * float(np.max(np.abs(column)))
            out[:, j] = add_additive_gaussian(column, sigma, rng)
        else:
            out[:, j] = add_lognormal(column, spec.sigma, rng)
    return out
