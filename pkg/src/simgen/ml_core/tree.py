"""CART regression trees with multi-output squared-error splits."""

# standard
from typing import Any, Optional

# external
import numpy as np
from typing_extensions import Self

# internal
from .base import Regressor
from .types import ModelFamily, ModelSpec
from .windows import WindowedDataset

LEAF = -1


def best_split(
    X: np.ndarray, Y: np.ndarray, features: np.ndarray, min_leaf: int
) -> Optional[tuple[int, float, float]]:
    """
    Lowest summed child SSE over the candidate features.

    Candidates are midpoints between consecutive distinct sorted values that
    leave at least `min_leaf` samples on both sides. Ties keep the first
    feature, then the lowest threshold.

    :return: (feature, threshold, cost) or None when no candidate exists.
    """
    n = X.shape[0]
    left_n = np.arange(1, n)
    right_n = n - left_n
    size_ok = (left_n >= min_leaf) & (right_n >= min_leaf)
    best = None
    for f in features:
        order = np.argsort(X[:, f], kind="stable")
        xs = X[order, f]
        ys = Y[order]
        valid = size_ok & (xs[1:] > xs[:-1])
        if not valid.any():
            continue
        csum = np.cumsum(ys, axis=0)[:-1]
        csq = np.cumsum(np.einsum("ij,ij->i", ys, ys))
        total, total_sq = ys.sum(axis=0), csq[-1]
        csq = csq[:-1]
        cost = (csq - np.einsum("ij,ij->i", csum, csum) / left_n) + (
            (total_sq - csq)
            - np.einsum("ij,ij->i", total - csum, total - csum) / right_n
        )
        cost = np.where(valid, cost, np.inf)
        i = int(np.argmin(cost))
        if best is None or cost[i] < best[2]:
            threshold = 0.5 * (xs[i] + xs[i + 1])
            # adjacent floats can round the midpoint up onto the right value
            if threshold >= xs[i + 1]:
                threshold = xs[i]
            best = (int(f), float(threshold), float(cost[i]))
    return best


class RegressionTree(Regressor):
    """
    Binary tree stored as flat node arrays.

    Samples with x[feature] <= threshold go left. `max_features` below the
    input width draws a random feature subset per split from `rng`.
    """

    family = ModelFamily.TREE.value

    def __init__(
        self,
        spec: ModelSpec,
        max_features: Optional[int] = None,
        rng: Optional[np.random.Generator] = None,
    ) -> None:
        super().__init__(spec)
        self.max_features = max_features
        self.rng = rng
        self.feature = np.empty(0, dtype=int)
        self.threshold = np.empty(0)
        self.left = np.empty(0, dtype=int)
        self.right = np.empty(0, dtype=int)
        self.value = np.empty((0, 0))

    def fit(self, ds: WindowedDataset) -> Self:
        return self.fit_arrays(ds.X, ds.Y)

    def fit_arrays(self, X: np.ndarray, Y: np.ndarray) -> Self:
        d = X.shape[1]
        n_features = d if self.max_features is None else min(self.max_features, d)
        feature, threshold, left, right, value = [], [], [], [], []

        def new_node(idx: np.ndarray) -> int:
            feature.append(LEAF)
            threshold.append(0.0)
            left.append(LEAF)
            right.append(LEAF)
            value.append(Y[idx].mean(axis=0))
            return len(feature) - 1

        stack = [(new_node(np.arange(X.shape[0])), np.arange(X.shape[0]), 0)]
        while stack:
            node, idx, depth = stack.pop()
            ys = Y[idx]
            if (
                (self.spec.max_depth is not None and depth >= self.spec.max_depth)
                or idx.size < 2 * self.spec.min_leaf
                or np.all(ys == ys[0])
            ):
                continue
            if n_features == d:
                features = np.arange(d)
            else:
                features = np.sort(self.rng.choice(d, size=n_features, replace=False))
            split = best_split(X[idx], ys, features, self.spec.min_leaf)
            if split is None:
                continue
            f, t, cost = split
            parent_sse = float(np.sum((ys - ys.mean(axis=0)) ** 2))
            if not cost < parent_sse:
                continue
            goes_left = X[idx, f] <= t
            l_idx, r_idx = idx[goes_left], idx[~goes_left]
            feature[node], threshold[node] = f, t
            left[node], right[node] = new_node(l_idx), new_node(r_idx)
            # right first so the left subtree is grown (and draws features) first
            stack.append((right[node], r_idx, depth + 1))
            stack.append((left[node], l_idx, depth + 1))

        self.feature = np.array(feature, dtype=int)
        self.threshold = np.array(threshold, dtype=float)
        self.left = np.array(left, dtype=int)
        self.right = np.array(right, dtype=int)
        self.value = np.array(value, dtype=float)
        return self

    @property
    def n_leaves(self) -> int:
        return int(np.sum(self.feature == LEAF))

    def predict(self, X: np.ndarray) -> np.ndarray:
        X, single = self._as_inputs(X)
        node = np.zeros(X.shape[0], dtype=int)
        active = np.flatnonzero(self.feature[node] != LEAF)
        while active.size:
            at = node[active]
            goes_left = X[active, self.feature[at]] <= self.threshold[at]
            node[active] = np.where(goes_left, self.left[at], self.right[at])
            active = active[self.feature[node[active]] != LEAF]
        out = self.value[node]
        return out[0] if single else out

    def state_dict(self) -> dict[str, Any]:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    def load_state(self, state: dict[str, Any]) -> None:
        self.feature = np.array(state["feature"], dtype=int)
        self.threshold = np.array(state["threshold"], dtype=float)
        self.left = np.array(state["left"], dtype=int)
        self.right = np.array(state["right"], dtype=int)
        self.value = np.array(state["value"], dtype=float)


def fit_tree(ds: WindowedDataset, spec: ModelSpec) -> RegressionTree:
    return RegressionTree(spec).fit(ds)


def predict_tree(model: RegressionTree, x: np.ndarray) -> np.ndarray:
    return model.predict(x)
