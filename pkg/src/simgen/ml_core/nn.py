"""Feed-forward networks with MSE or Student's t heads, trained by Adam."""

# standard
import logging
from typing import Any, Optional, Sequence

# external
import numpy as np
from scipy.special import expit
from typing_extensions import Self

# internal
from ..exceptions import LearningError, NonFiniteLoss
from .base import Regressor
from .student_t import nll_gradients, nll_terms
from .types import ForecastDistribution, Head, ModelFamily, ModelSpec, Scaling
from .windows import WindowedDataset

debug_logger = logging.getLogger("debug")

SIGMA_FLOOR = 1e-6
NU_FLOOR = 2.0
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8
MEAN_SCALE_FLOOR = 1e-8

Params = list[tuple[np.ndarray, np.ndarray]]


def softplus(x: np.ndarray) -> np.ndarray:
    return np.logaddexp(0.0, x)


def output_width(w_out: int, head: Head) -> int:
    return 3 * w_out if head is Head.STUDENT_T else w_out


def init_params(sizes: Sequence[int], rng: np.random.Generator) -> Params:
    """He-normal weights and zero biases for consecutive layer `sizes`."""
    return [
        (rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_in, fan_out)), np.zeros(fan_out))
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:])
    ]


def _forward(params: Params, x: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
    """Raw head outputs and the input of every layer."""
    inputs = []
    h = x
    for W, b in params[:-1]:
        inputs.append(h)
        h = np.maximum(h @ W + b, 0.0)
    inputs.append(h)
    W, b = params[-1]
    return h @ W + b, inputs


def nn_forward(params: Params, x: np.ndarray) -> np.ndarray:
    """Raw head outputs: w_out values for MSE, [mu | sigma raw | nu raw] for t."""
    return _forward(params, np.atleast_2d(np.asarray(x, dtype=float)))[0]


def split_head(raw: np.ndarray, w_out: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Map raw Student's t outputs to (mu, sigma, nu)."""
    mu = raw[:, :w_out]
    sigma = softplus(raw[:, w_out : 2 * w_out]) + SIGMA_FLOOR
    nu = NU_FLOOR + softplus(raw[:, 2 * w_out :])
    return mu, sigma, nu


def nn_loss_and_grad(
    params: Params, x: np.ndarray, y: np.ndarray, head: Head
) -> tuple[float, Params]:
    """
    Mean loss over the batch and its gradient for every (W, b).

    The MSE head averages over all entries; the t head averages the NLL
    summed over horizon steps.
    """
    raw, inputs = _forward(params, x)
    n, w_out = y.shape
    if head is Head.MSE:
        err = raw - y
        loss = float(np.mean(err**2))
        delta = 2.0 * err / err.size
    else:
        mu, sigma, nu = split_head(raw, w_out)
        loss = float(np.sum(nll_terms(mu, sigma, nu, y)) / n)
        d_mu, d_sigma, d_nu = nll_gradients(mu, sigma, nu, y)
        # d softplus(a) / da = sigmoid(a)
        delta = np.hstack(
            [
                d_mu,
                d_sigma * expit(raw[:, w_out : 2 * w_out]),
                d_nu * expit(raw[:, 2 * w_out :]),
            ]
        ) / n

    grads: Params = []
    for layer in range(len(params) - 1, -1, -1):
        W, _ = params[layer]
        h = inputs[layer]
        grads.append((h.T @ delta, delta.sum(axis=0)))
        if layer:
            delta = (delta @ W.T) * (h > 0)
    grads.reverse()
    return loss, grads


class _Adam:
    def __init__(self, params: Params, learning_rate: float) -> None:
        self.lr = learning_rate
        self.t = 0
        self.m = [(np.zeros_like(W), np.zeros_like(b)) for W, b in params]
        self.v = [(np.zeros_like(W), np.zeros_like(b)) for W, b in params]

    def step(self, params: Params, grads: Params) -> Params:
        self.t += 1
        c1 = 1 - ADAM_BETA1**self.t
        c2 = 1 - ADAM_BETA2**self.t
        updated = []
        for i, (p_pair, g_pair) in enumerate(zip(params, grads)):
            new_pair, new_m, new_v = [], [], []
            for p, g, m, v in zip(p_pair, g_pair, self.m[i], self.v[i]):
                m = ADAM_BETA1 * m + (1 - ADAM_BETA1) * g
                v = ADAM_BETA2 * v + (1 - ADAM_BETA2) * g * g
                new_pair.append(p - self.lr * (m / c1) / (np.sqrt(v / c2) + ADAM_EPS))
                new_m.append(m)
                new_v.append(v)
            updated.append(tuple(new_pair))
            self.m[i] = tuple(new_m)
            self.v[i] = tuple(new_v)
        return updated


class NnModel(Regressor):
    """
    Multilayer perceptron with ReLU hidden layers.

    Inputs and targets are rescaled before training: `zscore` uses the
    training statistics of X and Y, `mean` divides every window by the mean
    absolute value of its inputs.
    """

    family = ModelFamily.NN.value

    def __init__(self, spec: ModelSpec) -> None:
        super().__init__(spec)
        self.params: Params = []
        self.w_out: int = 0
        self.x_mean = self.x_std = self.y_mean = self.y_std = None
        self.loss_history: list[float] = []

    @property
    def is_probabilistic(self) -> bool:
        return self.spec.head is Head.STUDENT_T

    # scaling --------------------------------------------------------------
    def _set_scaling(self, ds: WindowedDataset) -> None:
        if self.spec.scaling is Scaling.ZSCORE:
            self.x_mean, self.x_std = ds.x_mean, ds.x_std
            y_std = ds.Y.std(axis=0)
            y_std[y_std == 0] = 1.0
            self.y_mean, self.y_std = ds.Y.mean(axis=0), y_std

    def _window_scale(self, X: np.ndarray) -> np.ndarray:
        scale = np.mean(np.abs(X), axis=1, keepdims=True)
        return np.where(scale > MEAN_SCALE_FLOOR, scale, 1.0)

    def _scale_inputs(self, X: np.ndarray) -> tuple[np.ndarray, Any, Any]:
        """Scaled inputs plus the (shift, factor) that maps outputs back."""
        if self.spec.scaling is Scaling.ZSCORE:
            return (X - self.x_mean) / self.x_std, self.y_mean, self.y_std
        scale = self._window_scale(X)
        return X / scale, 0.0, scale

    def _scale_targets(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        if self.spec.scaling is Scaling.ZSCORE:
            return (Y - self.y_mean) / self.y_std
        return Y / self._window_scale(X)

    # training -------------------------------------------------------------
    def fit(self, ds: WindowedDataset) -> Self:
        rng = np.random.default_rng(self.spec.seed)
        self.w_out = ds.w_out
        self._set_scaling(ds)
        sizes = [ds.w_in, *self.spec.hidden, output_width(ds.w_out, self.spec.head)]
        self.params = init_params(sizes, rng)
        self.loss_history = []
        self._train(ds, self.spec.epochs, self.spec.learning_rate, rng)
        return self

    def _train(
        self,
        ds: WindowedDataset,
        epochs: int,
        learning_rate: float,
        rng: np.random.Generator,
    ) -> None:
        """
        Mini-batch Adam over freshly shuffled epochs.

        :raises NonFiniteLoss: a batch loss is NaN or infinite.
        """
        x, _, _ = self._scale_inputs(ds.X)
        y = self._scale_targets(ds.X, ds.Y)
        adam = _Adam(self.params, learning_rate)
        batch = self.spec.batch_size
        for epoch in range(epochs):
            order = rng.permutation(ds.n)
            total = 0.0
            for start in range(0, ds.n, batch):
                rows = order[start : start + batch]
                loss, grads = nn_loss_and_grad(self.params, x[rows], y[rows], self.spec.head)
                if not np.isfinite(loss):
                    raise NonFiniteLoss(
                        f"{self.spec.name}: loss {loss} at epoch {epoch}, batch "
                        f"starting at {start} (lr={learning_rate}, n={ds.n})."
                    )
                self.params = adam.step(self.params, grads)
                total += loss * rows.size
            self.loss_history.append(total / ds.n)
            if epoch % 50 == 0 or epoch == epochs - 1:
                debug_logger.debug(
                    f"{self.spec.name} epoch {epoch}: loss {self.loss_history[-1]:.6g}"
                )

    def fine_tune(
        self, ds: WindowedDataset, epochs: int, learning_rate: Optional[float] = None
    ) -> Self:
        """Continue training the current weights on `ds` with fresh optimiser state."""
        if not self.params:
            raise LearningError("fine_tune needs a fitted network.")
        if ds.w_out != self.w_out:
            raise LearningError(f"Fine-tuning data has w_out={ds.w_out}, not {self.w_out}.")
        # offset the seed so fine-tuning shuffles differently from pre-training
        rng = np.random.default_rng([self.spec.seed, len(self.loss_history)])
        self._train(ds, epochs, learning_rate or self.spec.learning_rate, rng)
        return self

    # prediction -----------------------------------------------------------
    def _raw(self, X: np.ndarray) -> tuple[np.ndarray, Any, Any]:
        x, shift, factor = self._scale_inputs(X)
        return nn_forward(self.params, x), shift, factor

    def predict(self, X: np.ndarray) -> np.ndarray:
        X, single = self._as_inputs(X)
        raw, shift, factor = self._raw(X)
        out = raw[:, : self.w_out] * factor + shift
        return out[0] if single else out

    def predict_distribution(self, X: np.ndarray) -> Optional[ForecastDistribution]:
        if not self.is_probabilistic:
            return None
        X, single = self._as_inputs(X)
        raw, shift, factor = self._raw(X)
        mu, sigma, nu = split_head(raw, self.w_out)
        dist = ForecastDistribution(mu=mu * factor + shift, sigma=sigma * factor, nu=nu)
        return dist[0] if single else dist

    # persistence ----------------------------------------------------------
    def state_dict(self) -> dict[str, Any]:
        def listed(a):
            return None if a is None else np.asarray(a).tolist()

        return {
            "w_out": self.w_out,
            "layers": [{"W": W.tolist(), "b": b.tolist()} for W, b in self.params],
            "x_mean": listed(self.x_mean),
            "x_std": listed(self.x_std),
            "y_mean": listed(self.y_mean),
            "y_std": listed(self.y_std),
            "loss_history": self.loss_history,
        }

    def load_state(self, state: dict[str, Any]) -> None:
        def array(a):
            return None if a is None else np.array(a, dtype=float)

        self.w_out = int(state["w_out"])
        self.params = [(array(layer["W"]), array(layer["b"])) for layer in state["layers"]]
        for key in ("x_mean", "x_std", "y_mean", "y_std"):
            setattr(self, key, array(state[key]))
        self.loss_history = list(state.get("loss_history", []))


def nn_train(ds: WindowedDataset, spec: ModelSpec) -> NnModel:
    return NnModel(spec).fit(ds)


def fine_tune(
    model: NnModel, ds: WindowedDataset, epochs: int, learning_rate: Optional[float] = None
) -> NnModel:
    return model.fine_tune(ds, epochs, learning_rate)
