"""Test ml_core/linear.py, knn.py, tree.py and forest.py"""

# standard
import itertools

# external
import numpy as np
import pytest

# internal
from simgen.exceptions import KTooLarge
from simgen.ml_core import (
    ModelSpec,
    WindowedDataset,
    fit_forest,
    fit_knn,
    fit_linear,
    fit_tree,
    nearest_indices,
    predict_forest,
    predict_knn,
    predict_linear,
    predict_tree,
    squared_distances,
)
from simgen.ml_core.tree import best_split


@pytest.fixture
def random_ds() -> WindowedDataset:
    rng = np.random.default_rng(0)
    X = rng.normal(size=(60, 4))
    Y = np.column_stack([np.sin(X[:, 0]) + X[:, 1] ** 2, X[:, 2] * X[:, 3]])
    return WindowedDataset.from_arrays(X, Y)


class TestLinear:
    """Test ridge linear regression."""

    def test_recovers_exact_map(self):
        rng = np.random.default_rng(1)
        X = rng.normal(size=(40, 3))
        ds = WindowedDataset.from_arrays(X, 2 * X[:, :2])
        model = fit_linear(ds)
        np.testing.assert_allclose(predict_linear(model, X), 2 * X[:, :2], atol=1e-6)
        np.testing.assert_allclose(model.intercept, 0.0, atol=1e-6)

    def test_matches_pseudo_inverse(self, random_ds):
        model = fit_linear(random_ds, ModelSpec(family="linear", ridge=0.0))
        design = np.hstack([np.ones((random_ds.n, 1)), random_ds.X])
        beta = np.linalg.pinv(design) @ random_ds.Y
        np.testing.assert_allclose(model.coef, beta[1:], rtol=1e-8, atol=1e-10)
        np.testing.assert_allclose(model.intercept, beta[0], rtol=1e-8, atol=1e-10)

    def test_constant_targets(self, random_ds):
        ds = WindowedDataset.from_arrays(random_ds.X, np.full((random_ds.n, 2), 3.5))
        model = fit_linear(ds)
        np.testing.assert_allclose(predict_linear(model, random_ds.X[:5]), 3.5, atol=1e-8)

    def test_single_window_prediction(self, random_ds):
        model = fit_linear(random_ds)
        assert predict_linear(model, random_ds.X[0]).shape == (2,)


class TestKnn:
    """Test k-nearest-neighbour regression."""

    def test_k1_reproduces_training_targets(self, random_ds):
        model = fit_knn(random_ds, k=1)
        np.testing.assert_array_equal(predict_knn(model, random_ds.X), random_ds.Y)

    def test_k_equals_n_is_the_mean(self, random_ds):
        model = fit_knn(random_ds, k=random_ds.n)
        pred = predict_knn(model, random_ds.X[:3])
        np.testing.assert_allclose(pred, np.tile(random_ds.Y.mean(axis=0), (3, 1)))

    def test_matches_brute_force(self, random_ds):
        rng = np.random.default_rng(2)
        queries = rng.normal(size=(15, 4))
        model = fit_knn(random_ds, k=4)
        train = random_ds.normalize(random_ds.X)
        for q, pred in zip(queries, predict_knn(model, queries)):
            d = np.sum((train - random_ds.normalize(q)) ** 2, axis=1)
            nearest = np.argsort(d, kind="stable")[:4]
            np.testing.assert_allclose(pred, random_ds.Y[nearest].mean(axis=0))

    def test_k_too_large(self, random_ds):
        with pytest.raises(KTooLarge):
            fit_knn(random_ds, k=random_ds.n + 1)

    def test_shift_invariant(self, random_ds):
        shifted = WindowedDataset.from_arrays(random_ds.X + 100.0, random_ds.Y)
        queries = random_ds.X[:10] + 0.01
        a = predict_knn(fit_knn(random_ds, 3), queries)
        b = predict_knn(fit_knn(shifted, 3), queries + 100.0)
        np.testing.assert_allclose(a, b)

    def test_ties_prefer_lower_indices(self):
        d = np.array([[1.0, 0.0, 1.0, 1.0, 2.0]])
        assert nearest_indices(d, 2).tolist() == [[0, 1]]
        assert nearest_indices(d, 3).tolist() == [[0, 1, 2]]

    def test_large_magnitude_ties_stay_exact(self):
        q = np.array([[1e8, 1e8]])
        train = np.array(
            [
                [1e8 + 2, 1e8],
                [1e8 + 1, 1e8],
                [1e8, 1e8 + 1],
                [1e8 - 1, 1e8],
                [1e8 + 1, 1e8],
            ]
        )
        d = squared_distances(q, train)
        assert d.tolist() == [[4.0, 1.0, 1.0, 1.0, 1.0]]
        assert nearest_indices(d, 2).tolist() == [[1, 2]]
        assert nearest_indices(d, 4).tolist() == [[1, 2, 3, 4]]

    def test_matches_brute_force_with_duplicates_at_large_offset(self):
        grid = np.array(list(itertools.product(range(-2, 3), repeat=2)), dtype=float)
        X = 1e8 + np.vstack([grid, grid])
        Y = np.arange(X.shape[0], dtype=float)[:, None]
        ds = WindowedDataset.from_arrays(X, Y)
        queries = 1e8 + grid
        train = ds.normalize(ds.X)
        for k in (1, 3, 5):
            preds = predict_knn(fit_knn(ds, k), queries)
            for q, pred in zip(queries, preds):
                d = np.sum((train - ds.normalize(q)) ** 2, axis=1)
                assert d.min() >= 0.0
                nearest = np.argsort(d, kind="stable")[:k]
                np.testing.assert_array_equal(pred, Y[nearest].mean(axis=0))


class TestTree:
    """Test CART regression trees."""

    def test_pure_node_is_a_leaf(self):
        ds = WindowedDataset.from_arrays(np.arange(10.0)[:, None], np.ones((10, 1)))
        tree = fit_tree(ds, ModelSpec(family="tree"))
        assert tree.n_leaves == 1

    def test_step_function(self):
        X = np.arange(20.0)[:, None]
        Y = np.where(X < 10, 0.0, 5.0)
        tree = fit_tree(WindowedDataset.from_arrays(X, Y), ModelSpec(family="tree"))
        assert tree.n_leaves == 2
        assert tree.threshold[0] == 9.5
        assert predict_tree(tree, np.array([[3.0], [15.0]])).tolist() == [[0.0], [5.0]]

    def test_min_leaf_of_n_is_the_mean(self, random_ds):
        tree = fit_tree(random_ds, ModelSpec(family="tree", min_leaf=random_ds.n))
        assert tree.n_leaves == 1
        np.testing.assert_allclose(predict_tree(tree, random_ds.X[0]), random_ds.Y.mean(axis=0))

    def test_depth_one_split_is_optimal(self, random_ds):
        X, Y = random_ds.X[:25], random_ds.Y[:25]
        best = np.inf
        for f, i in itertools.product(range(X.shape[1]), range(X.shape[0])):
            mask = X[:, f] <= X[i, f]
            if mask.all():
                continue
            cost = sum(float(np.sum((Y[m] - Y[m].mean(axis=0)) ** 2)) for m in (mask, ~mask))
            best = min(best, cost)
        split = best_split(X, Y, np.arange(X.shape[1]), min_leaf=1)
        assert split[2] == pytest.approx(best, rel=1e-8)

    def test_max_depth(self, random_ds):
        tree = fit_tree(random_ds, ModelSpec(family="tree", max_depth=2))
        assert tree.n_leaves <= 4

    def test_leaves_respect_min_leaf(self, random_ds):
        tree = fit_tree(random_ds, ModelSpec(family="tree", min_leaf=7))
        pred = predict_tree(tree, random_ds.X)
        _, counts = np.unique(pred, axis=0, return_counts=True)
        assert counts.min() >= 7


class TestForest:
    """Test random forests."""

    def test_degenerate_forest_is_a_tree(self, random_ds):
        spec = ModelSpec(family="forest", n_trees=1, bootstrap=False, feature_fraction=1.0)
        forest = fit_forest(random_ds, spec)
        tree = fit_tree(random_ds, ModelSpec(family="tree"))
        np.testing.assert_array_equal(
            predict_forest(forest, random_ds.X), predict_tree(tree, random_ds.X)
        )

    def test_deterministic(self, random_ds):
        spec = ModelSpec(family="forest", n_trees=10, seed=3)
        a = predict_forest(fit_forest(random_ds, spec), random_ds.X)
        b = predict_forest(fit_forest(random_ds, spec), random_ds.X)
        np.testing.assert_array_equal(a, b)

    def test_seed_changes_the_forest(self, random_ds):
        a = predict_forest(fit_forest(random_ds, ModelSpec(family="forest", n_trees=5, seed=1)), random_ds.X)
        b = predict_forest(fit_forest(random_ds, ModelSpec(family="forest", n_trees=5, seed=2)), random_ds.X)
        assert not np.array_equal(a, b)

    def test_generalises_better_than_one_deep_tree(self):
        rng = np.random.default_rng(5)
        X = rng.uniform(-2, 2, size=(400, 3))
        Y = (np.sin(2 * X[:, 0]) + 0.5 * X[:, 1])[:, None] + rng.normal(0, 0.3, size=(400, 1))
        train = WindowedDataset.from_arrays(X[:300], Y[:300])
        X_test = X[300:]
        truth = (np.sin(2 * X_test[:, 0]) + 0.5 * X_test[:, 1])[:, None]
        tree = fit_tree(train, ModelSpec(family="tree", max_depth=None))
        forest = fit_forest(train, ModelSpec(family="forest", n_trees=30, max_depth=None, seed=0))
        tree_mse = np.mean((predict_tree(tree, X_test) - truth) ** 2)
        forest_mse = np.mean((predict_forest(forest, X_test) - truth) ** 2)
        assert forest_mse < tree_mse
