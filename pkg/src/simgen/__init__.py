"""Synthetic time series from ODE models for benchmarking and augmenting forecasters."""

__version__ = "0.1.0"
