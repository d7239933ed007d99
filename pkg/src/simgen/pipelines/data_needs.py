"""How forecast accuracy of each model family grows with the synthetic dataset size."""

# standard
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional

# external
import numpy as np

# internal
from ..config import worker_count
from ..datagen.generator import generate
from ..datagen.seeding import seed_for
from ..exceptions import ExperimentError, SimgenError
from ..ml_core.metrics import metric_nrmse
from ..ml_core.registry import fit_model
from ..ml_core.types import ModelSpec
from ..ml_core.windows import WindowedDataset, make_windows
from ..monitor import runmon
from .reports import write_manifest, write_report
from .types import ExperimentConfig, ExperimentKind, ReportRow, held_out_count

main_logger = logging.getLogger("main")
event_logger = logging.getLogger("events")

# seed_for index of the train/test split stream; model streams use 0, 1, ...
SPLIT_STREAM = 0xFFFF


def split_series(size: int, test_fraction: float, seed: int) -> tuple[list[int], list[int]]:
    """Seeded partition of series ids 0..size-1 into (train, test)."""
    order = np.random.default_rng(seed).permutation(size)
    n_test = held_out_count(size, test_fraction)
    return sorted(order[n_test:].tolist()), sorted(order[:n_test].tolist())


def split_seed(master_seed: int, size_index: int) -> int:
    return seed_for(seed_for(master_seed, SPLIT_STREAM), size_index)


def cell_seed(master_seed: int, model_index: int, size_index: int) -> int:
    return seed_for(seed_for(master_seed, model_index), size_index)


def _run_cell(
    config: ExperimentConfig,
    spec: ModelSpec,
    size: int,
    seed: int,
    train: WindowedDataset,
    test: WindowedDataset,
) -> ReportRow:
    spec = spec.model_copy(update={"seed": seed})
    started = time.perf_counter()
    try:
        model = fit_model(spec, train)
        metrics = metric_nrmse(test.Y, model.predict(test.X), model.predict_distribution(test.X))
    except SimgenError as e:
        runmon.add_count("cells_failed")
        raise ExperimentError(
            f"{config.name}: {spec.name} at size {size} failed: {e}", spec.name, size
        ) from e
    seconds = time.perf_counter() - started
    event_logger.info(f"{spec.name} @ {size}: nrmse {metrics.nrmse:.4g}")
    return ReportRow(
        experiment=config.name,
        model=spec.name,
        size=size,
        seed=seed,
        rmse=metrics.rmse,
        nrmse=metrics.nrmse,
        nll=metrics.mean_nll,
        seconds=seconds if config.record_timings else None,
    )


def run_data_needs(
    config: ExperimentConfig,
    out_dir: Optional[Path] = None,
    workers: Optional[int] = None,
) -> list[ReportRow]:
    """
    Train every model on every dataset size and score it on held-out series.

    One dataset of max(dataset_sizes) series is generated; each size uses its
    leading series, so smaller sets are nested in larger ones. Test series are
    whole series, never individual windows. Rows are written to `report.csv`
    in `out_dir` (default `config.output_dir`) sorted by (model, size).

    :raises ExperimentError: a cell failed; carries the model label and size.
    """
    if config.kind is not ExperimentKind.DATA_NEEDS:
        raise ValueError(f"run_data_needs got a {config.kind.value} experiment.")
    out_dir = Path(out_dir or config.output_dir)
    workers = workers or worker_count()
    window = config.resolved_windowing
    target = config.resolved_target

    dataset = generate(config.resolved_generation(max(config.dataset_sizes)), workers)
    series = dataset.column(target)

    splits = {}
    for size_index, size in enumerate(config.dataset_sizes):
        train_ids, test_ids = split_series(
            size, config.test_fraction, split_seed(config.master_seed, size_index)
        )
        splits[size] = tuple(
            make_windows(
                [series[i] for i in ids], window.w_in, window.w_out, window.stride, ids
            )
            for ids in (train_ids, test_ids)
        )
        event_logger.info(
            f"Size {size}: {len(train_ids)} train / {len(test_ids)} test series, "
            f"{splits[size][0].n} training windows."
        )

    cells = [
        (spec, size, cell_seed(config.master_seed, m, s))
        for m, spec in enumerate(config.models)
        for s, size in enumerate(config.dataset_sizes)
    ]

    def run(cell) -> ReportRow:
        spec, size, seed = cell
        return _run_cell(config, spec, size, seed, *splits[size])

    with ThreadPoolExecutor(max_workers=min(workers, len(cells))) as pool:
        rows = list(pool.map(run, cells))

    rows.sort(key=lambda r: (r.model, r.size))
    write_report(rows, out_dir)
    write_manifest(config, out_dir)
    event_logger.info(f"Wrote {len(rows)} report rows to {out_dir}.")
    return rows
