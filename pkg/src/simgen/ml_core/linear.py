"""Ridge-regularised multi-output linear regression."""

# standard
from typing import Any, Optional

# external
import numpy as np
from typing_extensions import Self

# internal
from ..exceptions import DegenerateDesign
from .base import Regressor
from .types import ModelFamily, ModelSpec
from .windows import WindowedDataset


class LinearModel(Regressor):
    family = ModelFamily.LINEAR.value

    def __init__(self, spec: ModelSpec) -> None:
        super().__init__(spec)
        self.coef: Optional[np.ndarray] = None  # (w_in, w_out)
        self.intercept: Optional[np.ndarray] = None  # (w_out,)

    def fit(self, ds: WindowedDataset) -> Self:
        """
        Solve the normal equations with an unpenalised intercept.

        :raises DegenerateDesign: the regularised system is still singular.
        """
        design = np.hstack([np.ones((ds.n, 1)), ds.X])
        gram = design.T @ design
        penalty = self.spec.ridge * np.eye(gram.shape[0])
        penalty[0, 0] = 0.0
        try:
            beta = np.linalg.solve(gram + penalty, design.T @ ds.Y)
        except np.linalg.LinAlgError as e:
            raise DegenerateDesign(
                f"Normal equations of a {ds.n}x{ds.w_in} design are singular: {e}"
            ) from None
        if not np.all(np.isfinite(beta)):
            raise DegenerateDesign(
                f"Normal equations of a {ds.n}x{ds.w_in} design gave non-finite weights."
            )
        self.intercept = beta[0]
        self.coef = beta[1:]
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        X, single = self._as_inputs(X)
        out = X @ self.coef + self.intercept
        return out[0] if single else out

    def state_dict(self) -> dict[str, Any]:
        return {"coef": self.coef.tolist(), "intercept": self.intercept.tolist()}

    def load_state(self, state: dict[str, Any]) -> None:
        self.coef = np.array(state["coef"], dtype=float)
        self.intercept = np.array(state["intercept"], dtype=float)


def fit_linear(ds: WindowedDataset, spec: Optional[ModelSpec] = None) -> LinearModel:
    return LinearModel(spec or ModelSpec(family=ModelFamily.LINEAR.value)).fit(ds)


def predict_linear(model: LinearModel, x: np.ndarray) -> np.ndarray:
    return model.predict(x)
