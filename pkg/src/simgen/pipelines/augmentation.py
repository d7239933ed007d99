"""Forecast a short observed series with and without synthetic training data."""

# standard
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

# external
import numpy as np

# internal
from ..config import worker_count
from ..datagen.generator import generate
from ..datagen.seeding import seed_for
from ..exceptions import CutoffTooEarly, ExperimentError, PipelineError, SimgenError
from ..ml_core.metrics import metric_nrmse
from ..ml_core.registry import fit_model
from ..ml_core.student_t import interval
from ..ml_core.types import ForecastDistribution
from ..ml_core.windows import WindowedDataset, make_windows
from ..models.preprocessing import moving_average
from ..monitor import runmon
from .ingest import ingest_real_csv
from .reports import write_forecasts, write_manifest, write_report
from .types import ExperimentConfig, ExperimentKind, ForecastRow, ReportRow, Variant

main_logger = logging.getLogger("main")
event_logger = logging.getLogger("events")

LEVELS = (0.5, 0.85)
# seed_for indices of the experiment's streams
MODEL_STREAM = 0
GROUND_TRUTH_STREAM = 1


@dataclass
class AugmentationResult:
    forecasts: list[ForecastRow]
    report: list[ReportRow]


def observed_series(config: ExperimentConfig, workers: int = 1) -> np.ndarray:
    """The real series, read from disk or simulated in ground-truth mode."""
    if config.real_data_path is not None:
        return ingest_real_csv(config.real_data_path)
    truth = config.ground_truth.model_copy(
        update={
            "n_series": 1,
            "master_seed": seed_for(config.master_seed, GROUND_TRUTH_STREAM),
        }
    )
    return generate(truth, workers).series[0].column(config.target_column)


def split_at_cutoff(
    series: np.ndarray, cutoff: int, w_in: int, w_out: int
) -> tuple[np.ndarray, np.ndarray]:
    """
    Training part before `cutoff` and up to `w_out` realised values after it.

    :raises CutoffTooEarly: fewer than w_in + w_out points precede the cutoff.
    :raises PipelineError: the cutoff lies beyond the series.
    """
    if cutoff < w_in + w_out:
        raise CutoffTooEarly(
            f"Cutoff {cutoff} leaves fewer than w_in + w_out = {w_in + w_out} "
            "training points."
        )
    if cutoff > series.size:
        raise PipelineError(
            f"Cutoff {cutoff} lies beyond the {series.size}-point observed series."
        )
    return series[:cutoff], series[cutoff : cutoff + w_out]


def forecast_rows(
    variant: Variant, dist: ForecastDistribution, actual: np.ndarray
) -> list[ForecastRow]:
    (lo50, hi50), (lo85, hi85) = (interval(dist, level) for level in LEVELS)
    return [
        ForecastRow(
            variant=variant.value,
            h=h + 1,
            mu=float(dist.mu[h]),
            lo50=float(lo50[h]),
            hi50=float(hi50[h]),
            lo85=float(lo85[h]),
            hi85=float(hi85[h]),
            actual=float(actual[h]) if h < actual.size else None,
        )
        for h in range(dist.mu.size)
    ]


def _train_variant(
    config: ExperimentConfig,
    variant: Variant,
    seed: int,
    real: WindowedDataset,
    synthetic: WindowedDataset,
):
    spec = config.augmentation_model.model_copy(update={"seed": seed})
    if variant is Variant.REAL_ONLY:
        return fit_model(spec, real)
    if variant is Variant.AUGMENTED:
        return fit_model(spec, WindowedDataset.concatenate([real, synthetic]))
    return fit_model(spec, synthetic).fine_tune(real, config.fine_tune_epochs)


def run_augmentation(
    config: ExperimentConfig,
    out_dir: Optional[Path] = None,
    workers: Optional[int] = None,
) -> AugmentationResult:
    """
    Train each variant on the observed series before the cutoff and forecast
    the `w_out` days after it.

    Every variant trains with the same network seed, so their forecasts form
    a paired comparison. Writes `forecasts.csv`, `report.csv` and
    `manifest.json` to `out_dir` (default `config.output_dir`).

    :raises CutoffTooEarly: the cutoff leaves too little training data.
    :raises ExperimentError: a variant failed to train or forecast.
    """
    if config.kind is not ExperimentKind.AUGMENTATION:
        raise ValueError(f"run_augmentation got a {config.kind.value} experiment.")
    out_dir = Path(out_dir or config.output_dir)
    workers = workers or worker_count()
    window = config.resolved_windowing
    smoothing = config.moving_average_window

    observed = moving_average(observed_series(config, workers), smoothing)
    train, actual = split_at_cutoff(
        observed, config.train_cutoff_index, window.w_in, window.w_out
    )
    real_ds = make_windows([train], window.w_in, window.w_out, window.stride)

    dataset = generate(config.resolved_generation(), workers)
    synthetic = [
        moving_average(s, smoothing) if config.smooth_synthetic else s
        for s in dataset.column(config.target_column)
    ]
    synthetic_ds = make_windows(
        synthetic,
        window.w_in,
        window.w_out,
        window.stride,
        series_ids=range(1, len(synthetic) + 1),
    )
    event_logger.info(
        f"{config.name}: {real_ds.n} real and {synthetic_ds.n} synthetic windows, "
        f"{actual.size} realised values after the cutoff."
    )

    seed = seed_for(config.master_seed, MODEL_STREAM)
    context = train[-window.w_in :]
    forecasts, report = [], []
    for variant in config.variants:
        started = time.perf_counter()
        try:
            model = _train_variant(config, variant, seed, real_ds, synthetic_ds)
            dist = model.predict_distribution(context)
            rows = forecast_rows(variant, dist, actual)
            metrics = (
                metric_nrmse(actual, dist.mu[: actual.size], dist[: actual.size])
                if actual.size
                else None
            )
        except SimgenError as e:
            runmon.add_count("cells_failed")
            raise ExperimentError(
                f"{config.name}: variant {variant.value} failed: {e}", variant.value
            ) from e
        seconds = time.perf_counter() - started
        forecasts.extend(rows)
        report.append(
            ReportRow(
                experiment=config.name,
                model=variant.value,
                size=0 if variant is Variant.REAL_ONLY else len(synthetic),
                seed=seed,
                rmse=metrics.rmse if metrics else None,
                nrmse=metrics.nrmse if metrics else None,
                nll=metrics.mean_nll if metrics else None,
                seconds=seconds if config.record_timings else None,
            )
        )
        if metrics:
            event_logger.info(
                f"{variant.value}: nrmse {metrics.nrmse:.4g}, nll {metrics.mean_nll:.4g}"
            )

    write_forecasts(forecasts, out_dir)
    write_report(report, out_dir)
    write_manifest(
        config,
        out_dir,
        {"real_windows": real_ds.n, "synthetic_windows": synthetic_ds.n},
    )
    return AugmentationResult(forecasts=forecasts, report=report)
