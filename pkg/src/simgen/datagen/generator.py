"""Turn a GenerationConfig into a Dataset."""

# standard
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

# external
import numpy as np

# internal
from ..config import worker_count
from ..exceptions import SimgenError, SeriesGenerationError
from ..models.observables import evaluate_observable, observable_times
from ..monitor import runmon
from ..ode_engine.core import solve
from ..ode_engine.systems import OdeSystem, get_system
from ..ode_engine.types import TimeGrid, Trajectory
from .corruption import apply_noise, sample, sparsify
from .seeding import seed_for
from .types import Dataset, GenerationConfig, SeriesRecord

event_logger = logging.getLogger("events")
debug_logger = logging.getLogger("debug")

__all__ = ["generate", "observe"]


def observe(
    traj: Trajectory, config: GenerationConfig
) -> tuple[np.ndarray, np.ndarray, tuple[str, ...]]:
    """
    Evaluate the configured observables into an (m, c) block.

    Observables that come out shorter (differences) pull every column to the
    common, later part of the grid.
    """
    observables = config.resolved_observables()
    columns = [evaluate_observable(obs, traj) for obs in observables]
    length = min(c.size for c in columns)
    values = np.column_stack([c[c.size - length:] for c in columns])
    times = observable_times(values[:, 0], traj)
    return times, values, tuple(obs.name for obs in observables)


def _generate_series(
    config: GenerationConfig, system: OdeSystem, grid: TimeGrid, index: int
) -> SeriesRecord:
    seed = seed_for(config.master_seed, index)
    rng = np.random.default_rng(seed)
    # parameters first, then initial conditions, both in declaration order
    params = {
        name: sample(config.parameters[name], rng) for name in system.parameter_names
    }
    initial = {
        name: sample(config.initial_conditions[name], rng)
        for name in system.state_names
    }
    try:
        traj = solve(
            system,
            params,
            [initial[name] for name in system.state_names],
            grid,
            config.solver,
            config.method,
        )
        times, values, columns = observe(traj, config)
        values = apply_noise(values, columns, config.noise, rng)
        if config.sparsifier is not None:
            times, values = sparsify(
                times, values, config.sparsifier.keep_fraction, rng
            )
    except SimgenError as e:
        runmon.add_count("series_failed")
        raise SeriesGenerationError(
            f"Series {index} of {config.system} failed with parameters {params} "
            f"and initial state {initial}: {e}",
            index=index,
            parameters=params | {f"{k}(0)": v for k, v in initial.items()},
        ) from e

    runmon.add_count("series_generated")
    return SeriesRecord(
        id=index,
        times=np.array(times, dtype=float),
        values=values,
        columns=columns,
        seed=seed,
        parameters=params,
        initial_state=initial,
    )


def generate(config: GenerationConfig, workers: Optional[int] = None) -> Dataset:
    """
    Sample, integrate, observe, add noise and sparsify `config.n_series` series.

    Each series draws from its own stream seeded by `seed_for(master_seed, i)`,
    so the result is identical for any worker count and completion order.

    :raises SeriesGenerationError: a series failed; carries its index and the
        sampled values.
    """
    system = get_system(config.system)
    grid = config.grid.to_time_grid()
    workers = workers or worker_count()
    event_logger.info(
        f"Generating {config.n_series} {config.system} series "
        f"(seed {config.master_seed}, {workers} workers)."
    )

    def job(index: int) -> SeriesRecord:
        return _generate_series(config, system, grid, index)

    if workers == 1 or config.n_series == 1:
        series = [job(i) for i in range(config.n_series)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            series = list(pool.map(job, range(config.n_series)))

    debug_logger.debug(f"Generated {len(series)} series for {config.system}.")
    return Dataset(config=config, series=series)
