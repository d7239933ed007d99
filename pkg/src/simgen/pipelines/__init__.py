"""Config-driven experiments: data needs and synthetic data augmentation."""

from .augmentation import AugmentationResult, run_augmentation, split_at_cutoff
from .data_needs import cell_seed, run_data_needs, split_series
from .ingest import ingest_real_csv
from .reports import (
    FORECAST_HEADER,
    REPORT_HEADER,
    read_report,
    write_forecasts,
    write_manifest,
    write_report,
)
from .types import (
    ExperimentConfig,
    ExperimentKind,
    ForecastRow,
    ReportRow,
    Variant,
    WindowingSpec,
)
