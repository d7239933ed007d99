"""Named loggers: `main` for warnings, `events` for progress, `debug` for detail."""

# standard
import logging
import os
import sys
from contextlib import contextmanager
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path
from typing import Iterator

# internal
from .paths import LOGS_DIR

SIMGEN_DEBUG = bool(os.getenv("SIMGEN_DEBUG"))
RUN_LOG_NAME = "run.log"
LOGGER_LEVELS = {"main": logging.INFO, "events": logging.INFO, "debug": logging.DEBUG}
FORMATTER = logging.Formatter(
    "%(asctime)s [%(name)s:%(module)s:%(lineno)d]: %(levelname)s - %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S %z",
)


def _formatted(handler: logging.Handler, level: int) -> logging.Handler:
    handler.setLevel(level)
    handler.setFormatter(FORMATTER)
    return handler


# SESSION LOGS #################################################################
def setup_loggers(log_dir: Path = LOGS_DIR, console_level: int = logging.INFO) -> None:
    """
    Attach session handlers to the named loggers, once.

    `main` warnings go to stderr and `events` progress to stdout. Both are
    also written to `general.log`, rotated at midnight. `debug.log` is only
    written with SIMGEN_DEBUG set. Library modules only ever call
    `logging.getLogger(<name>)`.
    """
    log_dir = Path(log_dir)
    log_dir.mkdir(parents=True, exist_ok=True)
    loggers = {}
    for name, level in LOGGER_LEVELS.items():
        loggers[name] = logging.getLogger(name)
        loggers[name].setLevel(level)
        loggers[name].propagate = False

    general_log = _formatted(
        TimedRotatingFileHandler(
            filename=log_dir / "general.log",
            when="midnight",
            backupCount=7,
            utc=True,
            delay=True,
        ),
        logging.INFO,
    )
    wiring = {
        "main": [_formatted(logging.StreamHandler(), logging.WARNING), general_log],
        "events": [
            _formatted(logging.StreamHandler(stream=sys.stdout), console_level),
            general_log,
        ],
    }
    if SIMGEN_DEBUG:
        wiring["debug"] = [
            _formatted(
                logging.FileHandler(log_dir / "debug.log", mode="w", delay=True),
                logging.DEBUG,
            )
        ]

    for name, handlers in wiring.items():
        if loggers[name].handlers:
            continue
        for handler in handlers:
            loggers[name].addHandler(handler)
        if name == "debug":
            loggers["main"].warning(f"Debug mode active, check {log_dir / 'debug.log'}")


# RUN LOGS #####################################################################
@contextmanager
def run_log(out_dir: Path) -> Iterator[Path]:
    """
    Copy what `main` and `events` record during one run into `<out_dir>/run.log`.

    The handler is detached when the block exits, so each output directory
    holds the log of the run that wrote it and nothing else.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / RUN_LOG_NAME
    handler = _formatted(logging.FileHandler(path, mode="w"), logging.INFO)
    loggers = [logging.getLogger(name) for name in ("main", "events")]
    for logger in loggers:
        if logger.level == logging.NOTSET:
            logger.setLevel(LOGGER_LEVELS[logger.name])
        logger.addHandler(handler)
    try:
        yield path
    finally:
        for logger in loggers:
            logger.removeHandler(handler)
        handler.close()
