"""Model specifications, predictive distributions and metrics."""

# standard
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

# external
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

MAX_SEED = 2**64 - 1


class ModelFamily(str, Enum):
    LINEAR = "linear"
    KNN = "knn"
    TREE = "tree"
    FOREST = "forest"
    NN = "nn"


class Head(str, Enum):
    MSE = "mse"
    STUDENT_T = "student_t"


class Scaling(str, Enum):
    ZSCORE = "zscore"
    MEAN = "mean"


class ModelSpec(BaseModel):
    """
    Family plus hyperparameters of one forecasting model.

    Only the fields of the chosen family are read; the rest keep their
    defaults. `label` names the model in reports and defaults to the family
    (suffixed with the head for neural networks).
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    family: str = Field(..., min_length=1)
    label: Optional[str] = None
    seed: int = Field(0, ge=0, le=MAX_SEED)
    # linear
    ridge: float = Field(1e-8, ge=0)
    # knn
    k: int = Field(5, ge=1)
    # tree / forest
    max_depth: Optional[int] = Field(10, ge=1)
    min_leaf: int = Field(1, ge=1)
    n_trees: int = Field(50, ge=1)
    feature_fraction: float = Field(0.6, gt=0, le=1)
    bootstrap: bool = True
    # nn
    hidden: List[int] = Field(default_factory=lambda: [20, 20])
    head: Head = Head.MSE
    epochs: int = Field(200, ge=1)
    learning_rate: float = Field(1e-3, gt=0)
    batch_size: int = Field(32, ge=1)
    scaling: Scaling = Scaling.ZSCORE

    @field_validator("hidden")
    @classmethod
    def _positive_layers(cls, value: List[int]) -> List[int]:
        if any(width < 1 for width in value):
            raise ValueError(f"Hidden layer sizes must be >= 1, got {value}.")
        return value

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.family == ModelFamily.NN.value and self.head is Head.STUDENT_T:
            return "nn_student_t"
        return self.family


@dataclass(frozen=True)
class ForecastDistribution:
    """
    Student's t predictive distribution per horizon step.

    Arrays share one shape: (w_out,) for a single forecast or (n, w_out)
    for a batch.
    """

    mu: np.ndarray
    sigma: np.ndarray
    nu: np.ndarray

    def __post_init__(self) -> None:
        mu, sigma, nu = (np.asarray(a, dtype=float) for a in (self.mu, self.sigma, self.nu))
        if not (mu.shape == sigma.shape == nu.shape):
            raise ValueError("mu, sigma and nu must have the same shape.")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "nu", nu)

    def __getitem__(self, index) -> "ForecastDistribution":
        return ForecastDistribution(self.mu[index], self.sigma[index], self.nu[index])


@dataclass(frozen=True)
class Metrics:
    rmse: float
    nrmse: float
    mean_nll: Optional[float] = None
