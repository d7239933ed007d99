"""Child-seed derivation: one independent stream per (master seed, series index)."""

# external
import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> int:
    """SplitMix64 output function applied to a 64-bit state."""
    z = state & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def seed_for(master_seed: int, index: int) -> int:
    """
    The `index`-th SplitMix64 output of a generator seeded with `master_seed`.

    Depends only on the two arguments, so series `i` is the same whatever
    the total number of series.
    """
    if index < 0:
        raise ValueError(f"index must be non-negative, got {index}.")
    return splitmix64((master_seed + (index + 1) * GOLDEN_GAMMA) & MASK64)


def rng_for(master_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(seed_for(master_seed, index))
