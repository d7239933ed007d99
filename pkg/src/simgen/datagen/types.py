"""Declarative generation recipes and the datasets they produce."""

# standard
from dataclasses import dataclass, field
from enum import Enum
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

# external
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing_extensions import Self

# internal
from ..exceptions import SimgenError
from ..models.observables import DerivedObservable, resolve_components
from ..ode_engine.core import SolverMethod
from ..ode_engine.systems import get_system
from ..ode_engine.types import SolverConfig, TimeGrid

MAX_SEED = 2**64 - 1


# DISTRIBUTIONS ################################################################
class _Spec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ConstantDist(_Spec):
    kind: Literal["constant"] = "constant"
    value: float

    def sample(self, rng: np.random.Generator) -> float:
        return float(self.value)


class UniformDist(_Spec):
    kind: Literal["uniform"] = "uniform"
    low: float
    high: float

    @model_validator(mode="after")
    def _check_support(self) -> Self:
        if not self.low < self.high:
            raise ValueError(f"uniform needs low < high, got ({self.low}, {self.high}).")
        return self

    def sample(self, rng: np.random.Generator) -> float:
        return float(rng.uniform(self.low, self.high))


class NormalDist(_Spec):
    kind: Literal["normal"] = "normal"
    mu: float
    sigma: float = Field(..., gt=0)

    def sample(self, rng: np.random.Generator) -> float:
        return float(rng.normal(self.mu, self.sigma))


class LogNormalDist(_Spec):
    kind: Literal["lognormal"] = "lognormal"
    mu_log: float
    sigma_log: float = Field(..., gt=0)

    def sample(self, rng: np.random.Generator) -> float:
        return float(rng.lognormal(self.mu_log, self.sigma_log))


DistributionSpec = Annotated[
    Union[ConstantDist, UniformDist, NormalDist, LogNormalDist],
    Field(discriminator="kind"),
]


def _numbers_as_constants(value: Any) -> Any:
    """Let configs write `N: 83166711` for a constant distribution."""
    if isinstance(value, dict):
        return {
            k: {"kind": "constant", "value": v}
            if isinstance(v, (int, float)) and not isinstance(v, bool)
            else v
            for k, v in value.items()
        }
    return value


# CORRUPTION ###################################################################
class NoiseKind(str, Enum):
    NONE = "none"
    ADDITIVE_GAUSSIAN = "additive_gaussian"
    MULTIPLICATIVE_LOGNORMAL = "multiplicative_lognormal"


class NoiseScale(str, Enum):
    ABSOLUTE = "absolute"
    RELATIVE_TO_MAX = "relative_to_max"


class NoiseSpec(_Spec):
    """
    Measurement noise applied to observable columns.

    `sigma` is the Gaussian standard deviation for additive noise and the
    log-scale standard deviation for multiplicative lognormal noise. With
    `scale=relative_to_max` an additive sigma is taken as a fraction of each
    column's maximum pre-noise value. Empty `targets` means every column.
    """

    kind: NoiseKind = NoiseKind.NONE
    sigma: Optional[float] = Field(None, gt=0)
    scale: NoiseScale = NoiseScale.ABSOLUTE
    targets: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_sigma(self) -> Self:
        if self.kind is not NoiseKind.NONE and self.sigma is None:
            raise ValueError(f"{self.kind.value} noise needs a sigma.")
        return self


class SparsifierSpec(_Spec):
    keep_fraction: float = Field(..., gt=0, le=1)


class GridSpec(_Spec):
    """Either `t_end` and `n_points` (uniform, inclusive) or explicit `points`."""

    t0: float = 0.0
    t_end: Optional[float] = None
    n_points: Optional[int] = Field(None, ge=1)
    points: Optional[List[float]] = None

    @model_validator(mode="after")
    def _check_form(self) -> Self:
        uniform = self.t_end is not None and self.n_points is not None
        if uniform == (self.points is not None):
            raise ValueError("Give either `t_end` with `n_points`, or `points`.")
        self.to_time_grid()
        return self

    def to_time_grid(self) -> TimeGrid:
        if self.points is not None:
            return TimeGrid(t0=self.t0, points=np.array(self.points))
        return TimeGrid.uniform(self.t0, self.t_end, self.n_points)


# GENERATION CONFIG ############################################################
class GenerationConfig(_Spec):
    """Complete recipe of a synthetic dataset."""

    system: str = Field(..., min_length=1)
    parameters: Dict[str, DistributionSpec]
    initial_conditions: Dict[str, DistributionSpec]
    grid: GridSpec
    solver: SolverConfig = Field(default_factory=SolverConfig)
    method: SolverMethod = SolverMethod.RK45
    noise: NoiseSpec = Field(default_factory=NoiseSpec)
    sparsifier: Optional[SparsifierSpec] = None
    n_series: int = Field(..., ge=1)
    master_seed: int = Field(0, ge=0, le=MAX_SEED)
    observables: List[DerivedObservable] = Field(default_factory=list)

    @field_validator("parameters", "initial_conditions", mode="before")
    @classmethod
    def _to_constants(cls, value: Any) -> Any:
        return _numbers_as_constants(value)

    @model_validator(mode="after")
    def _check_names(self) -> Self:
        try:
            system = get_system(self.system)
        except SimgenError as e:
            raise ValueError(str(e)) from None

        for label, given, expected in (
            ("parameters", self.parameters, system.parameter_names),
            ("initial_conditions", self.initial_conditions, system.state_names),
        ):
            missing = [n for n in expected if n not in given]
            unknown = [n for n in given if n not in expected]
            if missing or unknown:
                raise ValueError(
                    f"{label} for {self.system}: missing {missing}, unknown {unknown}."
                )

        names = [o.name for o in self.observables]
        if len(set(names)) != len(names):
            raise ValueError(f"Observable names must be unique, got {names}.")
        for obs in self.observables:
            try:
                resolve_components(
                    obs.referenced_components(), system.state_names, system.dimension
                )
            except SimgenError as e:
                raise ValueError(f"observable {obs.name}: {e}") from None

        columns = self.column_names()
        unknown_targets = [t for t in self.noise.targets if t not in columns]
        if unknown_targets:
            raise ValueError(
                f"Noise targets {unknown_targets} are not columns {columns}."
            )
        return self

    def column_names(self) -> list[str]:
        if self.observables:
            return [o.name for o in self.observables]
        return list(get_system(self.system).state_names)

    def resolved_observables(self) -> list[DerivedObservable]:
        """Configured observables, or one identity observable per state."""
        if self.observables:
            return list(self.observables)
        return [
            DerivedObservable.identity(name)
            for name in get_system(self.system).state_names
        ]


# DATASETS #####################################################################
@dataclass(eq=False)
class SeriesRecord:
    """One observed series plus the values it was generated from."""

    id: int
    times: np.ndarray
    values: np.ndarray
    columns: tuple[str, ...]
    seed: int
    parameters: dict[str, float] = field(default_factory=dict)
    initial_state: dict[str, float] = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.columns.index(name)]

    def __len__(self) -> int:
        return int(self.times.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeriesRecord):
            return NotImplemented
        return (
            self.id == other.id
            and self.columns == other.columns
            and self.seed == other.seed
            and self.parameters == other.parameters
            and self.initial_state == other.initial_state
            and np.array_equal(self.times, other.times)
            and np.array_equal(self.values, other.values)
        )


@dataclass(eq=False)
class Dataset:
    """Generated series in index order with the config that produced them."""

    config: GenerationConfig
    series: list[SeriesRecord]

    @property
    def master_seed(self) -> int:
        return self.config.master_seed

    @property
    def columns(self) -> tuple[str, ...]:
        return tuple(self.config.column_names())

    def column(self, name: str) -> list[np.ndarray]:
        """The `name` column of every series."""
        return [s.column(name) for s in self.series]

    def head(self, n: int) -> "Dataset":
        """First `n` series; they are identical to a run with n_series=n."""
        return Dataset(
            config=self.config.model_copy(update={"n_series": n}),
            series=self.series[:n],
        )

    def __len__(self) -> int:
        return len(self.series)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.config == other.config and self.series == other.series
