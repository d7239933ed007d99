"""
Datasets on disk: `manifest.json` plus one `series_<i>.csv` per series.

Floats are written with `repr`, the shortest decimal that parses back to the
same double, so a write/read cycle is exact.
"""

# standard
import csv
import json
import logging
from pathlib import Path
from typing import Any

# external
import numpy as np
from pydantic import ValidationError

# internal
from ..exceptions import DatasetIoError, SchemaMismatch
from .types import Dataset, GenerationConfig, SeriesRecord

event_logger = logging.getLogger("events")

MANIFEST_NAME = "manifest.json"
MANIFEST_SCHEMA = 1


def _series_file(index: int) -> str:
    return f"series_{index}.csv"


def manifest_for(dataset: Dataset) -> dict[str, Any]:
    return {
        "schema": MANIFEST_SCHEMA,
        "master_seed": dataset.master_seed,
        "n_series": len(dataset),
        "config": dataset.config.model_dump(mode="json"),
        "series": [
            {
                "id": s.id,
                "file": _series_file(s.id),
                "seed": s.seed,
                "columns": list(s.columns),
                "n_points": len(s),
                "parameters": s.parameters,
                "initial_state": s.initial_state,
            }
            for s in dataset.series
        ],
    }


def write_csv(dataset: Dataset, directory: str | Path) -> Path:
    """Write `dataset` into `directory` (created if needed); returns the manifest path."""
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
        for s in dataset.series:
            with open(directory / _series_file(s.id), "w", newline="") as f:
                writer = csv.writer(f)
                writer.writerow(["t", *s.columns])
                for t, row in zip(s.times, s.values):
                    writer.writerow([repr(float(t)), *(repr(float(v)) for v in row)])
        manifest_path = directory / MANIFEST_NAME
        with open(manifest_path, "w") as f:
            json.dump(manifest_for(dataset), f, indent=2)
    except OSError as e:
        raise DatasetIoError(f"Could not write dataset to {directory}: {e}") from e

    event_logger.info(f"Wrote {len(dataset)} series to {directory}.")
    return manifest_path


def _read_series(path: Path, entry: dict[str, Any]) -> SeriesRecord:
    if not path.exists():
        raise SchemaMismatch(f"Manifest lists {path.name} but the file is missing.")
    try:
        with open(path, "r", newline="") as f:
            rows = list(csv.reader(f))
    except OSError as e:
        raise DatasetIoError(f"Could not read {path}: {e}") from e

    expected_header = ["t", *entry["columns"]]
    if not rows or rows[0] != expected_header:
        raise SchemaMismatch(
            f"{path.name}: header {rows[0] if rows else []} does not match "
            f"{expected_header}."
        )
    try:
        table = np.array([[float(v) for v in row] for row in rows[1:]], dtype=float)
    except ValueError as e:
        raise SchemaMismatch(f"{path.name}: non-numeric entry ({e}).") from e
    if table.shape != (entry["n_points"], len(expected_header)):
        raise SchemaMismatch(
            f"{path.name}: expected {entry['n_points']} rows of "
            f"{len(expected_header)} values, found shape {table.shape}."
        )
    return SeriesRecord(
        id=int(entry["id"]),
        times=table[:, 0].copy(),
        values=table[:, 1:].copy(),
        columns=tuple(entry["columns"]),
        seed=int(entry["seed"]),
        parameters={k: float(v) for k, v in entry["parameters"].items()},
        initial_state={k: float(v) for k, v in entry["initial_state"].items()},
    )


def read_csv(directory: str | Path) -> Dataset:
    """
    Load a dataset written by `write_csv`.

    :raises DatasetIoError: the manifest cannot be read.
    :raises SchemaMismatch: files disagree with the manifest.
    """
    directory = Path(directory)
    manifest_path = directory / MANIFEST_NAME
    try:
        with open(manifest_path, "r") as f:
            manifest = json.load(f)
    except OSError as e:
        raise DatasetIoError(f"Could not read {manifest_path}: {e}") from e
    except json.JSONDecodeError as e:
        raise SchemaMismatch(f"{manifest_path} is not valid JSON: {e}") from e

    if manifest.get("schema") != MANIFEST_SCHEMA:
        raise SchemaMismatch(
            f"Unsupported manifest schema {manifest.get('schema')!r}."
        )
    try:
        config = GenerationConfig.model_validate(manifest["config"])
        entries = manifest["series"]
        series = [_read_series(directory / e["file"], e) for e in entries]
    except (KeyError, TypeError) as e:
        raise SchemaMismatch(f"{manifest_path}: malformed manifest ({e}).") from e
    except ValidationError as e:
        raise SchemaMismatch(f"{manifest_path}: invalid config echo ({e}).") from e

    if len(series) != manifest.get("n_series"):
        raise SchemaMismatch(
            f"Manifest announces {manifest.get('n_series')} series, lists {len(series)}."
        )
    return Dataset(config=config, series=series)
