"""Interface every forecasting model family implements."""

# standard
from abc import ABC, abstractmethod
from typing import Any, ClassVar, Optional

# external
import numpy as np
from typing_extensions import Self

# internal
from .types import ForecastDistribution, ModelSpec
from .windows import WindowedDataset


class Regressor(ABC):
    """
    A multi-output regressor from w_in inputs to w_out targets.

    Fitted models are not mutated by `predict`, so one instance may serve
    predictions from several threads.
    """

    family: ClassVar[str]

    def __init__(self, spec: ModelSpec) -> None:
        self.spec = spec

    @abstractmethod
    def fit(self, ds: WindowedDataset) -> Self:
        """Train on `ds` and return self."""

    @abstractmethod
    def predict(self, X: np.ndarray) -> np.ndarray:
        """Point forecasts of shape (n, w_out) for inputs of shape (n, w_in)."""

    @abstractmethod
    def state_dict(self) -> dict[str, Any]:
        """JSON-ready fitted state."""

    @abstractmethod
    def load_state(self, state: dict[str, Any]) -> None:
        """Restore what `state_dict` produced."""

    def predict_distribution(self, X: np.ndarray) -> Optional[ForecastDistribution]:
        """Predictive distribution, for families that produce one."""
        return None

    @property
    def is_probabilistic(self) -> bool:
        return False

    @staticmethod
    def _as_inputs(X: np.ndarray) -> tuple[np.ndarray, bool]:
        """Promote a single window to a batch of one; report whether it was single."""
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            return X[np.newaxis, :], True
        return X, False
