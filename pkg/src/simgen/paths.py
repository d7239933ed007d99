"""Path definitions for the simgen project."""

import os
from pathlib import Path

__all__ = [
    "ROOT_DIR",
    "ENV_FILE",
    "CONFIG_DIR",
    "LOGS_DIR",
    "OUTPUT_DIR",
    "TEST_DATA_DIR",
]

ROOT_DIR = Path(__file__).parent.parent.parent
# Derived paths
ENV_FILE = ROOT_DIR / ".env"
CONFIG_DIR = ROOT_DIR / "configs"
LOGS_DIR = Path(os.getenv("SIMGEN_LOG_DIR") or ROOT_DIR / "logs")
OUTPUT_DIR = ROOT_DIR / "runs"
TEST_DATA_DIR = ROOT_DIR / "tests" / "simgen" / "data"

if __name__ == "__main__":
    print(
            f"{ROOT_DIR=} Exists: {ROOT_DIR.exists()}\n"
            f"{LOGS_DIR=} Exists: {LOGS_DIR.exists()}\n"
            f"{CONFIG_DIR=} Exists: {CONFIG_DIR.exists()}\n"
            f"{ENV_FILE=} Exists: {ENV_FILE.exists()}"
            )
