"""CSV reports and run manifests written by the experiment pipelines."""

# standard
import csv
import json
from dataclasses import asdict, fields
from pathlib import Path
from typing import Any, Iterable, Optional

# internal
from ..monitor import runmon
from .types import ExperimentConfig, ForecastRow, ReportRow

REPORT_FILE = "report.csv"
FORECASTS_FILE = "forecasts.csv"
MANIFEST_FILE = "manifest.json"

REPORT_HEADER = [f.name for f in fields(ReportRow)]
FORECAST_HEADER = [f.name for f in fields(ForecastRow)]


def _cell(value: Any) -> Any:
    """Floats in round-trip form; None as an empty cell."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def _write_rows(path: Path, header: list[str], rows: Iterable[Any]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in asdict(row).items()})
    return path


def write_report(rows: Iterable[ReportRow], out_dir: Path) -> Path:
    return _write_rows(Path(out_dir) / REPORT_FILE, REPORT_HEADER, rows)


def write_forecasts(rows: Iterable[ForecastRow], out_dir: Path) -> Path:
    return _write_rows(Path(out_dir) / FORECASTS_FILE, FORECAST_HEADER, rows)


def write_manifest(
    config: ExperimentConfig, out_dir: Path, extra: Optional[dict] = None
) -> Path:
    """Echo the resolved config and the run counters next to the reports."""
    path = Path(out_dir) / MANIFEST_FILE
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {
        "experiment": config.name,
        "kind": config.kind.value,
        "config": config.dump(),
        "monitor": runmon.snapshot(),
        **(extra or {}),
    }
    path.write_text(json.dumps(document, indent=2))
    return path


def read_report(path: Path) -> list[dict[str, str]]:
    with open(path, "r", newline="") as f:
        return list(csv.DictReader(f))
