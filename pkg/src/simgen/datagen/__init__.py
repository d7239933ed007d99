"""Synthetic dataset generation: sample, integrate, observe, corrupt, store."""

from .types import (
    ConstantDist,
    Dataset,
    DistributionSpec,
    GenerationConfig,
    GridSpec,
    LogNormalDist,
    NoiseKind,
    NoiseScale,
    NoiseSpec,
    NormalDist,
    SeriesRecord,
    SparsifierSpec,
    UniformDist,
)
from .seeding import rng_for, seed_for, splitmix64
from .corruption import (
    add_additive_gaussian,
    add_lognormal,
    apply_noise,
    kept_indices,
    sample,
    sparsify,
)
from .generator import generate, observe
from .storage import read_csv, write_csv

__all__ = [
    "ConstantDist",
    "Dataset",
    "DistributionSpec",
    "GenerationConfig",
    "GridSpec",
    "LogNormalDist",
    "NoiseKind",
    "NoiseScale",
    "NoiseSpec",
    "NormalDist",
    "SeriesRecord",
    "SparsifierSpec",
    "UniformDist",
    "rng_for",
    "seed_for",
    "splitmix64",
    "add_additive_gaussian",
    "add_lognormal",
    "apply_noise",
    "kept_indices",
    "sample",
    "sparsify",
    "generate",
    "observe",
    "read_csv",
    "write_csv",
]
