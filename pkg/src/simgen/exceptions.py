"""Exception hierarchy for simgen."""

# standard
from typing import Any, Mapping


class SimgenError(Exception):
    """Parent exception for every error raised by simgen."""


class ConfigError(SimgenError):
    """A configuration file or object failed validation."""


# SOLVER #######################################################################
class SolverError(SimgenError):
    """Parent exception for integration failures."""


class StepLimitExceeded(SolverError):
    """The integrator used up `max_steps` before reaching the last grid point."""


class StepUnderflow(SolverError):
    """The adaptive step fell below `h_min`; the problem is likely stiff."""


class NonFiniteRhs(SolverError):
    """The right-hand side returned NaN or infinity."""


class NewtonDivergence(SolverError):
    """The implicit solver's Newton iteration failed to converge."""


# MODELS #######################################################################
class ModelError(SimgenError):
    """Parent exception for ODE system and preprocessing failures."""


class UnregisteredSystemError(ModelError):
    """Requested an ODE system id that is not in the registry."""


class SeriesTooShort(ModelError):
    """A series has fewer points than the operation needs."""


class WindowTooLarge(ModelError):
    """A moving-average window is longer than its series."""


class IndexOutOfRange(ModelError):
    """An observable references a state component the system does not have."""


# DATA GENERATION ##############################################################
class DataGenError(SimgenError):
    """Parent exception for synthetic data generation failures."""


class InvalidSpec(DataGenError):
    """A distribution, noise or sparsifier spec is not usable."""


class NegativeInput(DataGenError):
    """Multiplicative noise received a negative value."""


class TooSparse(DataGenError):
    """Sparsification would keep fewer than two time points."""


class SeriesGenerationError(DataGenError):
    """Generating one series failed; carries its index and sampled values."""

    def __init__(
        self, message: str, index: int, parameters: Mapping[str, Any]
    ) -> None:
        super().__init__(message)
        self.index = index
        self.parameters = dict(parameters)


class DatasetIoError(DataGenError):
    """Reading or writing a dataset directory failed at the filesystem level."""


class SchemaMismatch(DataGenError):
    """A dataset directory does not match its manifest."""


# LEARNING #####################################################################
class LearningError(SimgenError):
    """Parent exception for model fitting and evaluation failures."""


class UnknownModelFamily(LearningError):
    """A ModelSpec names a family nobody registered."""


class DegenerateDesign(LearningError):
    """The ridge-regularised normal equations are still singular."""


class KTooLarge(LearningError):
    """k nearest neighbours requested from fewer training windows."""


class NonFiniteLoss(LearningError):
    """Neural network training produced a NaN or infinite loss."""


class InvalidParams(LearningError):
    """Distribution parameters outside their support."""


class InvalidLevel(LearningError):
    """Interval level outside (0, 1)."""


class LengthMismatch(LearningError):
    """Arrays that must align have different shapes."""


# PIPELINES ####################################################################
class PipelineError(SimgenError):
    """Parent exception for experiment pipeline failures."""


class CutoffTooEarly(PipelineError):
    """The training cutoff leaves too few points for a single window."""


class IngestError(PipelineError):
    """Parent exception for real-data file ingestion failures."""


class ParseError(IngestError):
    """A real-data file could not be parsed."""


class NonContiguousDates(IngestError):
    """Dates in a real-data file repeat, go backwards or skip days."""


class NegativeCaseCount(IngestError):
    """A real-data file reports a negative count."""


class ExperimentError(PipelineError):
    """A grid cell of an experiment failed; carries the cell context."""

    def __init__(self, message: str, model: str, size: int | None = None) -> None:
        super().__init__(message)
        self.model = model
        self.size = size
