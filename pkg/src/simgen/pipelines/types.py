"""Experiment configuration and the rows experiments report."""

# standard
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, List, Literal, Optional

# external
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Self

# internal
from ..datagen.types import MAX_SEED, GenerationConfig
from ..ml_core.registry import MODEL_REGISTRY
from ..ml_core.types import Head, ModelFamily, ModelSpec
from ..paths import OUTPUT_DIR

AUGMENTATION_MODEL = ModelSpec(
    family=ModelFamily.NN.value, head=Head.STUDENT_T, hidden=[20, 20]
)


def augmentation_recipe() -> dict:
    """
    Synthetic training set of an augmentation run that gives no `generation`.

    A Germany-sized SIR epidemic with 100 initial infections, observed as
    daily new cases with additive Gaussian noise at 2 % of each series' maximum.
    """
    return {
        "system": "sir_cumulative",
        "parameters": {
            "beta": {"kind": "uniform", "low": 0.32, "high": 0.35},
            "gamma": {"kind": "uniform", "low": 0.123, "high": 0.125},
            "N": 83_166_711,
        },
        "initial_conditions": {"S": 83_166_611, "I": 100, "R": 0, "C_sigma": 100},
        "grid": {"t0": 0, "t_end": 59, "n_points": 60},
        "observables": [
            {"name": "new_cases", "kind": "difference", "components": ["C_sigma"]}
        ],
        "noise": {"kind": "additive_gaussian", "sigma": 0.02, "scale": "relative_to_max"},
        "n_series": 100,
    }


class ExperimentKind(str, Enum):
    DATA_NEEDS = "data_needs"
    AUGMENTATION = "augmentation"


class Variant(str, Enum):
    REAL_ONLY = "real_only"
    AUGMENTED = "augmented"
    TRANSFER = "transfer"


class WindowingSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    w_in: int = Field(..., ge=1)
    w_out: int = Field(..., ge=1)
    stride: int = Field(1, ge=1)


DEFAULT_WINDOWING = {
    ExperimentKind.DATA_NEEDS: WindowingSpec(w_in=5, w_out=3),
    ExperimentKind.AUGMENTATION: WindowingSpec(w_in=7, w_out=7),
}


def held_out_count(size: int, test_fraction: float) -> int:
    """Series held out for testing from a set of `size`; at least one."""
    return max(1, math.floor(test_fraction * size + 0.5))


class ExperimentConfig(BaseModel):
    """
    One experiment: what to generate, how to window it and which models to train.

    The experiment's `master_seed` replaces the seed of `generation` and of
    every model spec, so a single number reproduces the whole run.
    """

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    schema_version: Literal[1] = Field(..., alias="schema")
    name: str = Field("experiment", min_length=1)
    kind: ExperimentKind
    generation: GenerationConfig
    windowing: Optional[WindowingSpec] = None
    models: List[ModelSpec] = Field(default_factory=list)
    target_column: Optional[str] = None
    master_seed: int = Field(0, ge=0, le=MAX_SEED)
    output_dir: Path = OUTPUT_DIR
    record_timings: bool = False
    # data_needs
    dataset_sizes: List[int] = Field(default_factory=list)
    test_fraction: float = Field(0.2, gt=0, lt=1)
    # augmentation
    real_data_path: Optional[Path] = None
    ground_truth: Optional[GenerationConfig] = None
    train_cutoff_index: Optional[int] = Field(None, ge=1)
    moving_average_window: int = Field(7, ge=1)
    smooth_synthetic: bool = True
    variants: List[Variant] = Field(
        default_factory=lambda: [Variant.REAL_ONLY, Variant.AUGMENTED]
    )
    fine_tune_epochs: int = Field(100, ge=1)

    @model_validator(mode="before")
    @classmethod
    def _default_generation(cls, data: Any) -> Any:
        # data_needs has no default recipe; pydantic reports the missing field
        if (
            isinstance(data, dict)
            and data.get("kind") == ExperimentKind.AUGMENTATION.value
            and data.get("generation") is None
        ):
            data = {**data, "generation": augmentation_recipe()}
        return data

    @model_validator(mode="after")
    def _check_models(self) -> Self:
        unknown = [m.family for m in self.models if m.family not in MODEL_REGISTRY]
        if unknown:
            raise ValueError(
                f"Unknown model families {unknown}; choose from {sorted(MODEL_REGISTRY)}."
            )
        names = [m.name for m in self.models]
        if len(set(names)) != len(names):
            raise ValueError(f"Model labels must be unique, got {names}.")
        column = self.target_column
        if column is not None and column not in self.generation.column_names():
            raise ValueError(
                f"target_column {column!r} is not a generated column "
                f"{self.generation.column_names()}."
            )
        return self

    @model_validator(mode="after")
    def _check_kind(self) -> Self:
        if self.kind is ExperimentKind.DATA_NEEDS:
            if not self.models:
                raise ValueError("A data_needs experiment needs at least one model.")
            if not self.dataset_sizes:
                raise ValueError("A data_needs experiment needs dataset_sizes.")
            if any(b <= a for a, b in zip(self.dataset_sizes, self.dataset_sizes[1:])):
                raise ValueError(
                    f"dataset_sizes must be strictly ascending, got {self.dataset_sizes}."
                )
            smallest = self.dataset_sizes[0]
            if smallest - held_out_count(smallest, self.test_fraction) < 1:
                raise ValueError(
                    f"Size {smallest} leaves no training series at "
                    f"test_fraction={self.test_fraction}."
                )
            return self

        if (self.real_data_path is None) == (self.ground_truth is None):
            raise ValueError("Give exactly one of `real_data_path` or `ground_truth`.")
        if self.train_cutoff_index is None:
            raise ValueError("An augmentation experiment needs train_cutoff_index.")
        if not self.variants or len(set(self.variants)) != len(self.variants):
            raise ValueError(f"variants must be non-empty and unique, got {self.variants}.")
        if len(self.models) > 1:
            raise ValueError("An augmentation experiment trains a single model spec.")
        for spec in self.models:
            if spec.family != ModelFamily.NN.value or spec.head is not Head.STUDENT_T:
                raise ValueError(
                    "The augmentation model must be a neural network with a "
                    "student_t head."
                )
        if self.target_column is None:
            raise ValueError("An augmentation experiment needs target_column.")
        if (
            self.ground_truth is not None
            and self.target_column not in self.ground_truth.column_names()
        ):
            raise ValueError(
                f"target_column {self.target_column!r} is not a ground truth column."
            )
        return self

    @property
    def resolved_windowing(self) -> WindowingSpec:
        return self.windowing or DEFAULT_WINDOWING[self.kind]

    @property
    def resolved_target(self) -> str:
        return self.target_column or self.generation.column_names()[0]

    @property
    def augmentation_model(self) -> ModelSpec:
        return self.models[0] if self.models else AUGMENTATION_MODEL

    def resolved_generation(self, n_series: Optional[int] = None) -> GenerationConfig:
        update = {"master_seed": self.master_seed}
        if n_series is not None:
            update["n_series"] = n_series
        return self.generation.model_copy(update=update)

    def with_seed(self, seed: int) -> "ExperimentConfig":
        return self.model_copy(update={"master_seed": seed})

    def dump(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)


@dataclass(frozen=True)
class ReportRow:
    """One (model, size) cell. Missing metrics or timings stay None."""

    experiment: str
    model: str
    size: int
    seed: int
    rmse: Optional[float]
    nrmse: Optional[float]
    nll: Optional[float] = None
    seconds: Optional[float] = None


@dataclass(frozen=True)
class ForecastRow:
    variant: str
    h: int
    mu: float
    lo50: float
    hi50: float
    lo85: float
    hi85: float
    actual: Optional[float] = None
