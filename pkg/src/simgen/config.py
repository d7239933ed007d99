"""Global simgen configuration: environment, config files and error reporting."""

# standard
import json
import os
from pathlib import Path
from typing import Any, List

# external
import dotenv
import yaml
from pydantic import ValidationError

# internal
from .exceptions import ConfigError
from .paths import ENV_FILE

# ENVIRONMENT  #################################################################
dotenv.load_dotenv(ENV_FILE)

CONFIG_SUFFIXES = (".json", ".yaml", ".yml")


def worker_count() -> int:
    """Worker cap from `SIMGEN_THREADS`, defaulting to the available cores."""
    raw = os.getenv("SIMGEN_THREADS")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ConfigError(f"SIMGEN_THREADS must be an integer, got {raw!r}.")
        if value < 1:
            raise ConfigError(f"SIMGEN_THREADS must be >= 1, got {value}.")
        return value
    return os.cpu_count() or 1


def load_config_file(path: str | Path) -> dict[str, Any]:
    """
    Read a JSON or YAML config file into a plain dict.

    :raises ConfigError: missing file, unsupported suffix, parse failure or a
        document that is not a mapping.
    """
    path = Path(path)
    if path.suffix.lower() not in CONFIG_SUFFIXES:
        raise ConfigError(
            f"{path.name}: unsupported config format, use one of {CONFIG_SUFFIXES}."
        )
    try:
        with open(path, "r") as f:
            if path.suffix.lower() == ".json":
                data = json.load(f)
            else:
                data = yaml.safe_load(f)
    except FileNotFoundError:
        raise ConfigError(f"Config file does not exist: {path}") from None
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ConfigError(f"Invalid config syntax in {path.name}: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError(f"{path.name}: top level of a config must be a mapping.")
    return data


def validation_messages(error: ValidationError) -> List[str]:
    """Flatten a pydantic ValidationError into `field -> path: message` lines."""
    messages = []
    for e in error.errors():
        field = " -> ".join(str(loc) for loc in e["loc"]) or "<root>"
        messages.append(f"{field}: {e['msg']}")
    return messages
