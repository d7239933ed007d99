"""Read an observed daily series from a `date,value` CSV file."""

# standard
import csv
import logging
import math
from datetime import date, timedelta
from pathlib import Path

# external
import numpy as np

# internal
from ..exceptions import IngestError, NegativeCaseCount, NonContiguousDates, ParseError

event_logger = logging.getLogger("events")

HEADER = ["date", "value"]
UNICODE_MINUS = "−"


def _parse_value(raw: str, line: int) -> float:
    text = raw.strip().replace(UNICODE_MINUS, "-")
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"line {line}: value {raw!r} is not a number.") from None
    if not math.isfinite(value):
        raise ParseError(f"line {line}: value {raw!r} is not finite.")
    if value < 0:
        raise NegativeCaseCount(f"line {line}: negative case count {raw.strip()}.")
    return value


def ingest_real_csv(path: Path) -> np.ndarray:
    """
    Values of a daily series, in file order.

    Dates are ISO-8601 and must advance by exactly one day per row.

    :raises IngestError: the file cannot be read.
    :raises ParseError: bad header, row shape, date or number.
    :raises NonContiguousDates: a date repeats, goes back or skips a day.
    :raises NegativeCaseCount: a value is below zero.
    """
    path = Path(path)
    try:
        with open(path, "r", newline="", encoding="utf-8") as f:
            rows = [row for row in csv.reader(f) if any(cell.strip() for cell in row)]
    except OSError as e:
        raise IngestError(f"Cannot read {path}: {e}") from e

    if not rows or [cell.strip().lower() for cell in rows[0]] != HEADER:
        raise ParseError(f"{path.name}: expected header {','.join(HEADER)}.")
    if len(rows) < 2:
        raise ParseError(f"{path.name}: no data rows.")

    values = []
    previous = None
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise ParseError(f"line {line}: expected 2 fields, got {len(row)}.")
        try:
            day = date.fromisoformat(row[0].strip())
        except ValueError:
            raise ParseError(f"line {line}: {row[0]!r} is not an ISO date.") from None
        if previous is not None and day != previous + timedelta(days=1):
            raise NonContiguousDates(
                f"line {line}: {day} does not follow {previous} by one day."
            )
        previous = day
        values.append(_parse_value(row[1], line))

    event_logger.info(f"Ingested {len(values)} daily values from {path.name}.")
    return np.array(values)
