"""Bagged CART trees with per-split feature subsampling."""

# standard
import math
from typing import Any

# external
import numpy as np
from typing_extensions import Self

# internal
from .base import Regressor
from .tree import RegressionTree
from .types import ModelFamily, ModelSpec
from .windows import WindowedDataset


class RandomForest(Regressor):
    family = ModelFamily.FOREST.value

    def __init__(self, spec: ModelSpec) -> None:
        super().__init__(spec)
        self.trees: list[RegressionTree] = []

    def fit(self, ds: WindowedDataset) -> Self:
        """
        Grow `n_trees` trees, each from its own child of the model seed.

        Every split searches ceil(feature_fraction * w_in) features.
        """
        max_features = math.ceil(self.spec.feature_fraction * ds.w_in)
        children = np.random.SeedSequence(self.spec.seed).spawn(self.spec.n_trees)
        self.trees = []
        for child in children:
            rng = np.random.default_rng(child)
            if self.spec.bootstrap:
                sample = rng.integers(0, ds.n, size=ds.n)
            else:
                sample = np.arange(ds.n)
            tree = RegressionTree(self.spec, max_features=max_features, rng=rng)
            self.trees.append(tree.fit_arrays(ds.X[sample], ds.Y[sample]))
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        X, single = self._as_inputs(X)
        out = np.mean([tree.predict(X) for tree in self.trees], axis=0)
        return out[0] if single else out

    def state_dict(self) -> dict[str, Any]:
        return {"trees": [tree.state_dict() for tree in self.trees]}

    def load_state(self, state: dict[str, Any]) -> None:
        self.trees = []
        for tree_state in state["trees"]:
            tree = RegressionTree(self.spec)
            tree.load_state(tree_state)
            self.trees.append(tree)


def fit_forest(ds: WindowedDataset, spec: ModelSpec) -> RandomForest:
    return RandomForest(spec).fit(ds)


def predict_forest(model: RandomForest, x: np.ndarray) -> np.ndarray:
    return model.predict(x)
