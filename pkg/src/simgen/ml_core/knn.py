"""k-nearest-neighbour regression on normalised windows."""

# standard
from typing import Any, Optional

# external
import numpy as np
from typing_extensions import Self

# internal
from ..exceptions import KTooLarge
from .base import Regressor
from .types import ModelFamily, ModelSpec
from .windows import WindowedDataset

# distance entries per block of queries
BLOCK = 1 << 22


def squared_distances(queries: np.ndarray, train: np.ndarray) -> np.ndarray:
    """
    Squared Euclidean distances between every query and every training row.

    Built from the coordinate differences, so equal differences give equal
    distances whatever the magnitude of the inputs.
    """
    d = np.zeros((queries.shape[0], train.shape[0]))
    for j in range(train.shape[1]):
        d += (queries[:, j, np.newaxis] - train[np.newaxis, :, j]) ** 2
    return d


def nearest_indices(distances: np.ndarray, k: int) -> np.ndarray:
    """
    Column indices of the k smallest entries in each row, sorted ascending.

    Among equal distances the lower index wins.
    """
    part = np.argpartition(distances, k - 1, axis=1)[:, :k]
    kth = np.take_along_axis(distances, part, axis=1).max(axis=1)
    out = np.sort(part, axis=1)
    crowded = np.flatnonzero((distances <= kth[:, np.newaxis]).sum(axis=1) > k)
    for r in crowded:
        closer = np.flatnonzero(distances[r] < kth[r])
        tied = np.flatnonzero(distances[r] == kth[r])[: k - closer.size]
        out[r] = np.sort(np.concatenate([closer, tied]))
    return out


class KnnModel(Regressor):
    family = ModelFamily.KNN.value

    def __init__(self, spec: ModelSpec) -> None:
        super().__init__(spec)
        self.X: Optional[np.ndarray] = None
        self.Y: Optional[np.ndarray] = None
        self.x_mean: Optional[np.ndarray] = None
        self.x_std: Optional[np.ndarray] = None

    def fit(self, ds: WindowedDataset) -> Self:
        """:raises KTooLarge: k exceeds the number of training windows."""
        if self.spec.k > ds.n:
            raise KTooLarge(f"k={self.spec.k} exceeds the {ds.n} training windows.")
        self.x_mean, self.x_std = ds.x_mean, ds.x_std
        self.X = ds.normalize(ds.X)
        self.Y = ds.Y
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        X, single = self._as_inputs(X)
        queries = (X - self.x_mean) / self.x_std
        rows = max(1, BLOCK // self.X.shape[0])
        out = np.empty((queries.shape[0], self.Y.shape[1]))
        for start in range(0, queries.shape[0], rows):
            d = squared_distances(queries[start : start + rows], self.X)
            idx = nearest_indices(d, self.spec.k)
            out[start : start + rows] = self.Y[idx].mean(axis=1)
        return out[0] if single else out

    def state_dict(self) -> dict[str, Any]:
        return {
            "X": self.X.tolist(),
            "Y": self.Y.tolist(),
            "x_mean": self.x_mean.tolist(),
            "x_std": self.x_std.tolist(),
        }

    def load_state(self, state: dict[str, Any]) -> None:
        for key in ("X", "Y", "x_mean", "x_std"):
            setattr(self, key, np.array(state[key], dtype=float))


def fit_knn(ds: WindowedDataset, k: int) -> KnnModel:
    return KnnModel(ModelSpec(family=ModelFamily.KNN.value, k=k)).fit(ds)


def predict_knn(model: KnnModel, x: np.ndarray) -> np.ndarray:
    return model.predict(x)
