"""Command-line interface for simgen."""

from .commands import app, cli_main, main

__all__ = ["app", "cli_main", "main"]
