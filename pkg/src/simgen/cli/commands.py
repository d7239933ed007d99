"""CLI command handlers."""

# standard
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

# external
import typer
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.table import Table

try:  # typer >= 0.26 raises exceptions from its vendored click copy
    from typer._click.core import Context as ClickContext
    from typer._click.exceptions import Abort, UsageError
except ImportError:
    from click import Abort, UsageError
    from click import Context as ClickContext

# internal
from ..config import load_config_file, validation_messages
from ..datagen.generator import generate
from ..datagen.storage import write_csv
from ..datagen.types import GenerationConfig
from ..exceptions import ConfigError, SimgenError
from ..loggers import run_log, setup_loggers
from ..monitor import runmon
from ..pipelines.augmentation import run_augmentation
from ..pipelines.data_needs import run_data_needs
from ..pipelines.types import ExperimentConfig, ExperimentKind

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2

event_logger = logging.getLogger("events")

app = typer.Typer(
    help="simgen - synthetic time series from ODE models and forecasting benchmarks",
    rich_markup_mode="rich",
    no_args_is_help=False,
    add_completion=False,
)
experiment_app = typer.Typer(
    help="Run a configured experiment.", no_args_is_help=False
)
app.add_typer(experiment_app, name="experiment")
console = Console()
err_console = Console(stderr=True)


class ConfigValidationError(ConfigError):
    """A config file parsed but did not validate; keeps the flattened messages."""

    def __init__(self, path: Path, messages: list[str]) -> None:
        self.path = path
        self.messages = messages
        super().__init__(f"{path}: " + "; ".join(messages))


def _load(path: Path, model: type[BaseModel]):
    try:
        return model.model_validate(load_config_file(path))
    except ValidationError as e:
        raise ConfigValidationError(path, validation_messages(e)) from None


def _is_experiment(data: dict) -> bool:
    return "schema" in data or "kind" in data


def _print_errors(path: Path, messages: list[str]) -> None:
    table = Table(title=f"{path}", title_style="bold red")
    table.add_column("field")
    table.add_column("problem", style="red")
    for message in messages:
        field, _, problem = message.partition(": ")
        table.add_row(field, problem)
    err_console.print(table)


@app.callback()
def _root() -> None:
    setup_loggers()
    runmon.reset()


def _generate(
    config: Path = typer.Option(..., "--config", help="Generation config (JSON or YAML)."),
    out: Path = typer.Option(..., "--out", help="Directory for the CSV dataset."),
    seed: Optional[int] = typer.Option(None, "--seed", help="Override master_seed."),
):
    """Generate a synthetic dataset and write it as CSV plus manifest."""
    cfg = _load(config, GenerationConfig)
    if seed is not None:
        cfg = GenerationConfig.model_validate({**cfg.model_dump(mode="json"), "master_seed": seed})
    with run_log(out):
        dataset = generate(cfg)
        write_csv(dataset, out)
        runmon.report()
    console.print(f"[green]✓ {len(dataset)} series written to[/green] {out}")


def _load_experiment(
    config: Path, kind: ExperimentKind, seed: Optional[int]
) -> ExperimentConfig:
    cfg = _load(config, ExperimentConfig)
    if cfg.kind is not kind:
        raise ConfigError(f"{config} describes a {cfg.kind.value} experiment, not {kind.value}.")
    if seed is not None:
        cfg = ExperimentConfig.model_validate({**cfg.dump(), "master_seed": seed})
    return cfg


def _data_needs(
    config: Path = typer.Option(..., "--config", help="Experiment config."),
    seed: Optional[int] = typer.Option(None, "--seed", help="Override master_seed."),
    out: Optional[Path] = typer.Option(None, "--out", help="Override output_dir."),
):
    """Score every model at every synthetic dataset size."""
    cfg = _load_experiment(config, ExperimentKind.DATA_NEEDS, seed)
    out = out or cfg.output_dir
    with run_log(out):
        rows = run_data_needs(cfg, out)
        runmon.report()
    table = Table(title=cfg.name)
    for column in ("model", "size", "nrmse"):
        table.add_column(column)
    for row in rows:
        table.add_row(row.model, str(row.size), f"{row.nrmse:.4g}")
    console.print(table)


def _augment(
    config: Path = typer.Option(..., "--config", help="Experiment config."),
    seed: Optional[int] = typer.Option(None, "--seed", help="Override master_seed."),
    out: Optional[Path] = typer.Option(None, "--out", help="Override output_dir."),
):
    """Forecast an observed series with and without synthetic data."""
    cfg = _load_experiment(config, ExperimentKind.AUGMENTATION, seed)
    out = out or cfg.output_dir
    with run_log(out):
        result = run_augmentation(cfg, out)
        runmon.report()
    for row in result.report:
        nll = "-" if row.nll is None else f"{row.nll:.4g}"
        console.print(f"[bold]{row.model}[/bold]: nll {nll}")


def _validate_config(
    file: Path = typer.Argument(..., help="Generation or experiment config file."),
):
    """Validate a generation or experiment config file."""
    data = load_config_file(file)
    model = ExperimentConfig if _is_experiment(data) else GenerationConfig
    try:
        model.model_validate(data)
    except ValidationError as e:
        _print_errors(file, validation_messages(e))
        raise typer.Exit(EXIT_CONFIG)
    console.print(f"[green]✓ {file}[/green] is a valid {model.__name__}.")


# Register commands
app.command(name="generate")(_generate)
app.command(name="validate-config")(_validate_config)
experiment_app.command(name="data-needs")(_data_needs)
experiment_app.command(name="augment")(_augment)


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI on `argv` and return the exit code.

    0 on success, 1 for usage and config errors, 2 for runtime errors.
    """
    args = list(sys.argv[1:] if argv is None else argv)
    command = typer.main.get_command(app)
    if not args:
        with ClickContext(command, info_name="simgen") as ctx:
            err_console.print(ctx.get_help())
        return EXIT_CONFIG
    try:
        code = command.main(args, prog_name="simgen", standalone_mode=False)
    except UsageError as e:
        e.show()
        return EXIT_CONFIG
    except Abort:
        err_console.print("[red]Aborted.[/red]")
        return EXIT_RUNTIME
    except ConfigValidationError as e:
        _print_errors(e.path, e.messages)
        return EXIT_CONFIG
    except ConfigError as e:
        err_console.print(f"[bold red]Config error:[/bold red] {e}")
        return EXIT_CONFIG
    except SimgenError as e:
        err_console.print(f"[bold red]Error:[/bold red] {e}")
        return EXIT_RUNTIME
    except Exception as e:
        event_logger.exception(f"Run failed: {e}")
        err_console.print(f"[bold red]Unexpected error:[/bold red] {e}")
        return EXIT_RUNTIME
    return code if isinstance(code, int) else EXIT_OK


def main():
    """Main CLI entry point."""
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
