"""Series preprocessing: differencing and trailing moving averages."""

# external
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# internal
from ..exceptions import SeriesTooShort, WindowTooLarge


def finite_difference(series: np.ndarray) -> np.ndarray:
    """out[k] = series[k + 1] - series[k]; out[k] belongs to the later time point."""
    series = np.asarray(series, dtype=float)
    if series.size < 2:
        raise SeriesTooShort(
            f"Differencing needs at least 2 points, got {series.size}."
        )
    return np.diff(series)


def moving_average(series: np.ndarray, window: int) -> np.ndarray:
    """Trailing mean over full windows only: out[k] = mean(series[k:k + window])."""
    series = np.asarray(series, dtype=float)
    if window < 1:
        raise ValueError(f"Moving-average window must be >= 1, got {window}.")
    if window > series.size:
        raise WindowTooLarge(
            f"Window {window} is longer than the series ({series.size} points)."
        )
    if window == 1:
        return series.copy()
    return sliding_window_view(series, window).mean(axis=1)
