"""Test ml_core/nn.py"""

# external
import numpy as np
import pytest

# internal
from simgen.exceptions import LearningError, NonFiniteLoss
from simgen.ml_core import (
    ForecastDistribution,
    ModelSpec,
    NnModel,
    WindowedDataset,
    fine_tune,
    init_params,
    nn_forward,
    nn_loss_and_grad,
    nn_train,
)
from simgen.ml_core.nn import NU_FLOOR, SIGMA_FLOOR, split_head
from simgen.ml_core.types import Head


def numeric_gradient(params, x, y, head, eps=1e-6):
    grads = []
    for W, b in params:
        pair = []
        for p in (W, b):
            g = np.zeros_like(p)
            for idx in np.ndindex(p.shape):
                old = p[idx]
                p[idx] = old + eps
                up, _ = nn_loss_and_grad(params, x, y, head)
                p[idx] = old - eps
                down, _ = nn_loss_and_grad(params, x, y, head)
                p[idx] = old
                g[idx] = (up - down) / (2 * eps)
            pair.append(g)
        grads.append(tuple(pair))
    return grads


@pytest.fixture
def line_ds() -> WindowedDataset:
    rng = np.random.default_rng(0)
    X = rng.uniform(-1, 1, size=(256, 1))
    return WindowedDataset.from_arrays(X, X.copy())


class TestForward:
    """Test the network forward pass and head mapping."""

    def test_zero_weights_give_zero_output(self):
        params = [(np.zeros((3, 4)), np.zeros(4)), (np.zeros((4, 2)), np.zeros(2))]
        assert nn_forward(params, np.ones((5, 3))).tolist() == [[0.0, 0.0]] * 5

    def test_head_floors(self):
        raw = np.full((2, 6), -1e3)
        mu, sigma, nu = split_head(raw, 2)
        assert np.all(sigma >= SIGMA_FLOOR)
        assert np.all(nu >= NU_FLOOR)
        assert mu.shape == (2, 2)


class TestGradients:
    """Test backpropagation against central differences."""

    @pytest.mark.parametrize("head", [Head.MSE, Head.STUDENT_T])
    def test_gradient_check(self, head):
        rng = np.random.default_rng(4)
        w_out = 2
        width = 3 * w_out if head is Head.STUDENT_T else w_out
        params = init_params([3, 4, width], rng)
        x = rng.normal(size=(5, 3))
        y = rng.normal(size=(5, w_out))
        _, grads = nn_loss_and_grad(params, x, y, head)
        expected = numeric_gradient(params, x, y, head)
        for (gW, gb), (eW, eb) in zip(grads, expected):
            np.testing.assert_allclose(gW, eW, rtol=1e-4, atol=1e-6)
            np.testing.assert_allclose(gb, eb, rtol=1e-4, atol=1e-6)


class TestTraining:
    """Test fitting, fine-tuning and persistence of the state."""

    def test_learns_identity(self, line_ds):
        spec = ModelSpec(family="nn", hidden=[16], epochs=300, learning_rate=1e-2, seed=1)
        model = nn_train(line_ds, spec)
        pred = model.predict(line_ds.X)
        assert np.mean((pred - line_ds.Y) ** 2) < 1e-3
        assert model.loss_history[-1] < model.loss_history[0]

    def test_same_seed_same_weights(self, line_ds):
        spec = ModelSpec(family="nn", hidden=[4], epochs=5, seed=9)
        a, b = nn_train(line_ds, spec), nn_train(line_ds, spec)
        for (Wa, ba), (Wb, bb) in zip(a.params, b.params):
            np.testing.assert_array_equal(Wa, Wb)
            np.testing.assert_array_equal(ba, bb)

    def test_diverging_training_raises(self, line_ds):
        spec = ModelSpec(family="nn", hidden=[8], epochs=50, learning_rate=1e300)
        with pytest.raises(NonFiniteLoss):
            nn_train(line_ds, spec)

    def test_fine_tune_continues_history(self, line_ds):
        spec = ModelSpec(family="nn", hidden=[8], epochs=20, learning_rate=1e-2)
        model = nn_train(line_ds, spec)
        before = [W.copy() for W, _ in model.params]
        fine_tune(model, line_ds, epochs=5)
        assert len(model.loss_history) == 25
        assert any(not np.array_equal(W, b) for (W, _), b in zip(model.params, before))

    def test_fine_tune_needs_a_fitted_model(self, line_ds):
        with pytest.raises(LearningError):
            NnModel(ModelSpec(family="nn")).fine_tune(line_ds, epochs=1)

    def test_mean_scaling(self, line_ds):
        positive = WindowedDataset.from_arrays(line_ds.X + 2.0, line_ds.Y + 2.0)
        spec = ModelSpec(family="nn", hidden=[8], epochs=30, scaling="mean")
        model = nn_train(positive, spec)
        assert model.x_mean is None
        assert np.all(np.isfinite(model.predict(positive.X)))


class TestDistribution:
    """Test the Student's t head outputs."""

    def test_mse_head_has_no_distribution(self, line_ds):
        model = nn_train(line_ds, ModelSpec(family="nn", hidden=[4], epochs=2))
        assert model.predict_distribution(line_ds.X) is None
        assert not model.is_probabilistic

    def test_student_t_head(self, line_ds):
        spec = ModelSpec(family="nn", hidden=[8], epochs=20, head="student_t")
        model = nn_train(line_ds, spec)
        dist = model.predict_distribution(line_ds.X[:7])
        assert isinstance(dist, ForecastDistribution)
        assert dist.mu.shape == dist.sigma.shape == dist.nu.shape == (7, 1)
        assert np.all(dist.sigma > 0) and np.all(dist.nu >= NU_FLOOR)
        np.testing.assert_allclose(dist.mu, model.predict(line_ds.X[:7]))
        single = model.predict_distribution(line_ds.X[0])
        assert single.mu.shape == (1,)

    def test_state_round_trip_predicts_the_same(self, line_ds):
        spec = ModelSpec(family="nn", hidden=[4], epochs=3, head="student_t")
        model = nn_train(line_ds, spec)
        clone = NnModel(spec)
        clone.load_state(model.state_dict())
        np.testing.assert_array_equal(clone.predict(line_ds.X), model.predict(line_ds.X))
