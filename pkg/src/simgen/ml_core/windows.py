"""Sliding-window supervised datasets built from scalar series."""

# standard
from dataclasses import dataclass
from typing import Optional, Sequence

# external
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# internal
from ..exceptions import SeriesTooShort


@dataclass(frozen=True)
class WindowedDataset:
    """
    Inputs X (n, w_in), targets Y (n, w_out) and the series each window came from.

    `x_mean`/`x_std` are per-feature statistics of X; zero deviations are
    stored as 1 so normalisation degrades to a shift.
    """

    X: np.ndarray
    Y: np.ndarray
    series_ids: np.ndarray
    x_mean: np.ndarray
    x_std: np.ndarray

    @classmethod
    def from_arrays(
        cls, X: np.ndarray, Y: np.ndarray, series_ids: Optional[np.ndarray] = None
    ) -> "WindowedDataset":
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        if X.ndim != 2 or Y.ndim != 2 or X.shape[0] != Y.shape[0]:
            raise ValueError(f"Incompatible window shapes {X.shape} and {Y.shape}.")
        if X.shape[0] < 1:
            raise ValueError("A windowed dataset needs at least one window.")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
            raise ValueError("Windows must not contain NaN or infinity.")
        if series_ids is None:
            series_ids = np.zeros(X.shape[0], dtype=int)
        std = X.std(axis=0)
        std[std == 0] = 1.0
        return cls(
            X=X,
            Y=Y,
            series_ids=np.asarray(series_ids, dtype=int),
            x_mean=X.mean(axis=0),
            x_std=std,
        )

    @classmethod
    def concatenate(cls, parts: Sequence["WindowedDataset"]) -> "WindowedDataset":
        """Stack datasets and recompute the normalisation statistics."""
        return cls.from_arrays(
            np.vstack([p.X for p in parts]),
            np.vstack([p.Y for p in parts]),
            np.concatenate([p.series_ids for p in parts]),
        )

    @property
    def n(self) -> int:
        return int(self.X.shape[0])

    @property
    def w_in(self) -> int:
        return int(self.X.shape[1])

    @property
    def w_out(self) -> int:
        return int(self.Y.shape[1])

    def normalize(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=float) - self.x_mean) / self.x_std

    def select_series(self, ids: Sequence[int]) -> "WindowedDataset":
        """Windows of the given series only, with fresh statistics."""
        mask = np.isin(self.series_ids, np.asarray(ids))
        return WindowedDataset.from_arrays(
            self.X[mask], self.Y[mask], self.series_ids[mask]
        )


def window_count(m: int, w_in: int, w_out: int, stride: int = 1) -> int:
    return (m - w_in - w_out) // stride + 1


def make_windows(
    series_set: Sequence[np.ndarray],
    w_in: int,
    w_out: int,
    stride: int = 1,
    series_ids: Optional[Sequence[int]] = None,
) -> WindowedDataset:
    """
    Cut every series into (w_in inputs, next w_out targets) pairs.

    Windows start at offsets 0, stride, 2*stride, ... of each series.

    :raises SeriesTooShort: a series has fewer than w_in + w_out points.
    """
    if w_in < 1 or w_out < 1 or stride < 1:
        raise ValueError("w_in, w_out and stride must all be >= 1.")
    if series_ids is None:
        series_ids = range(len(series_set))
    width = w_in + w_out
    blocks, ids = [], []
    for sid, series in zip(series_ids, series_set):
        series = np.asarray(series, dtype=float).reshape(-1)
        if series.size < width:
            raise SeriesTooShort(
                f"Series {sid} has {series.size} points; windows need {width}."
            )
        block = sliding_window_view(series, width)[::stride]
        blocks.append(block)
        ids.append(np.full(block.shape[0], sid, dtype=int))
    if not blocks:
        raise ValueError("make_windows needs at least one series.")
    windows = np.vstack(blocks)
    return WindowedDataset.from_arrays(
        windows[:, :w_in].copy(), windows[:, w_in:].copy(), np.concatenate(ids)
    )
