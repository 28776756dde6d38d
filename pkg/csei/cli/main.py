"""
CLI interface for the CSEI pipeline.

This module provides the command-line interface using Typer and Rich.
Every configuration key can be passed as a same-named flag after the
command (`csei build --n-trees 50 --contamination=0.01`).
"""

import json
from pathlib import Path
from typing import Any, NoReturn, Optional, Sequence

import typer
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from ..artifacts import tables
from ..config import SECTION_NAMES, ConfigManager, RunConfig, load_config, parse_override_args
from ..models import AnalysisResults, BuildResults, IngestResults
from ..pipeline import STAGES, run_pipeline
from ..report import SummaryReporter
from ..utils import CSEIError, exit_code_for, get_logger, setup_logger

# Initialize Typer app
app = typer.Typer(
    name="csei",
    help="Build and analyze the Community Sentiment and Engagement Index",
    add_completion=False,
)

config_app = typer.Typer(help="Create or inspect configuration files")
app.add_typer(config_app, name="config")

# Console for rich output
console = Console()

# Logger
logger = get_logger(__name__)

# Commands accept arbitrary `--key value` config overrides
OVERRIDE_SETTINGS = {"allow_extra_args": True, "ignore_unknown_options": True}

ConfigOption = typer.Option(None, "--config", "-c", dir_okay=False, help="Configuration file")
OutputOption = typer.Option(None, "--output", "-o", file_okay=False, help="Output directory")
SeedOption = typer.Option(None, "--seed", help="Master seed for every stochastic stage")
VerboseOption = typer.Option(False, "--verbose", "-v", help="Enable verbose logging")
LogOption = typer.Option(None, "--log", help="Log file path")


def _overrides(
    extra: Sequence[str],
    output_dir: Optional[Path] = None,
    seed: Optional[int] = None,
    plots: bool = False,
) -> dict[str, Any]:
    overrides = parse_override_args(list(extra))
    if output_dir is not None:
        overrides["output_dir"] = str(output_dir)
    if seed is not None:
        overrides["seed"] = seed
    if plots:
        overrides["plots"] = True
    return overrides


def _fail(error: BaseException, output_dir: Optional[Path]) -> NoReturn:
    """Report an error as JSON on stderr and in error.json, then exit."""
    if isinstance(error, CSEIError):
        record = error.to_record()
    else:
        record = {"error": type(error).__name__, "message": str(error)}
    typer.echo(json.dumps(record), err=True)

    if output_dir is not None:
        try:
            tables.write_json(record, Path(output_dir) / tables.ERROR)
        except OSError:
            pass
    raise typer.Exit(exit_code_for(error))


def _report(results: dict[str, Any]) -> None:
    reporter = SummaryReporter(console)
    for outcome in results.values():
        if isinstance(outcome, IngestResults):
            reporter.display_ingest(outcome)
        elif isinstance(outcome, BuildResults):
            reporter.display_build(outcome)
        elif isinstance(outcome, AnalysisResults):
            reporter.display_analysis(outcome)


def _execute(
    stages: Sequence[str],
    ctx: typer.Context,
    config_file: Optional[Path],
    output_dir: Optional[Path],
    seed: Optional[int],
    verbose: bool,
    log_file: Optional[Path],
    plots: bool = False,
) -> None:
    """
    Load the configuration and run stages, mapping errors to exit codes.
    """
    setup_logger(level="DEBUG" if verbose else "INFO", log_file=log_file, verbose=verbose)

    target = output_dir
    try:
        config = load_config(config_file, _overrides(ctx.args, output_dir, seed, plots))
        target = config.paths.output_dir
        results = run_pipeline(config, stages)
    except Exception as e:
        if verbose and not isinstance(e, CSEIError):
            console.print_exception()
        _fail(e, target)

    (Path(config.paths.output_dir) / tables.ERROR).unlink(missing_ok=True)
    _report(results)
    console.print(f"[green]✓[/green] Artifacts in {config.paths.output_dir}")


@app.command(context_settings=OVERRIDE_SETTINGS)
def ingest(
    ctx: typer.Context,
    config_file: Optional[Path] = ConfigOption,
    output_dir: Optional[Path] = OutputOption,
    seed: Optional[int] = SeedOption,
    verbose: bool = VerboseOption,
    log_file: Optional[Path] = LogOption,
) -> None:
    """
    Parse and filter the post dump into clean_posts.csv.
    """
    _execute(["ingest"], ctx, config_file, output_dir, seed, verbose, log_file)


@app.command(context_settings=OVERRIDE_SETTINGS)
def build(
    ctx: typer.Context,
    config_file: Optional[Path] = ConfigOption,
    output_dir: Optional[Path] = OutputOption,
    seed: Optional[int] = SeedOption,
    verbose: bool = VerboseOption,
    log_file: Optional[Path] = LogOption,
) -> None:
    """
    Score posts, aggregate daily features, remove outliers and compute the index.
    """
    _execute(["build"], ctx, config_file, output_dir, seed, verbose, log_file)


@app.command(context_settings=OVERRIDE_SETTINGS)
def analyze(
    ctx: typer.Context,
    config_file: Optional[Path] = ConfigOption,
    output_dir: Optional[Path] = OutputOption,
    seed: Optional[int] = SeedOption,
    plots: bool = typer.Option(False, "--plots", help="Write SVG plots"),
    verbose: bool = VerboseOption,
    log_file: Optional[Path] = LogOption,
) -> None:
    """
    Derive deltas, smoothing, extrema and event statistics from the index.
    """
    _execute(["analyze"], ctx, config_file, output_dir, seed, verbose, log_file, plots)


@app.command("run", context_settings=OVERRIDE_SETTINGS)
def run_command(
    ctx: typer.Context,
    config_file: Optional[Path] = ConfigOption,
    output_dir: Optional[Path] = OutputOption,
    seed: Optional[int] = SeedOption,
    plots: bool = typer.Option(False, "--plots", help="Write SVG plots"),
    verbose: bool = VerboseOption,
    log_file: Optional[Path] = LogOption,
) -> None:
    """
    Run ingest, build and analyze in sequence.
    """
    _execute(STAGES, ctx, config_file, output_dir, seed, verbose, log_file, plots)


def _config_table(config: RunConfig) -> None:
    snapshot = config.snapshot()
    for section in SECTION_NAMES:
        table = Table(title=section, show_header=True)
        table.add_column("Key", style="cyan")
        table.add_column("Value", style="white")
        for key, value in snapshot[section].items():
            table.add_row(key, "-" if value is None else str(value))
        console.print(table)
    console.print()


@app.command("validate-config", context_settings=OVERRIDE_SETTINGS)
def validate_config(
    ctx: typer.Context,
    config_file: Optional[Path] = ConfigOption,
    output_dir: Optional[Path] = OutputOption,
    seed: Optional[int] = SeedOption,
    verbose: bool = VerboseOption,
) -> None:
    """
    Validate a configuration (file plus flags) without running any stage.
    """
    try:
        config = load_config(config_file, _overrides(ctx.args, output_dir, seed))
    except CSEIError as e:
        _fail(e, None)

    console.print("[green]✓[/green] Configuration is valid")
    if verbose:
        _config_table(config)


@config_app.command("init")
def config_init(
    output: Path = typer.Option(Path("csei.yaml"), "--output", "-o", help="File to create"),
    force: bool = typer.Option(False, "--force", "-f", help="Overwrite an existing file"),
) -> None:
    """
    Write the default configuration file.
    """
    try:
        ConfigManager().init_default_config(output, force=force)
    except CSEIError as e:
        _fail(e, None)
    console.print(f"[green]✓[/green] Created config file: {output}")


@config_app.command("show", context_settings=OVERRIDE_SETTINGS)
def config_show(
    ctx: typer.Context,
    config_file: Optional[Path] = ConfigOption,
) -> None:
    """
    Display the effective configuration.
    """
    try:
        config = load_config(config_file, _overrides(ctx.args))
    except CSEIError as e:
        _fail(e, None)

    console.print()
    console.print(Panel("[bold cyan]Current Configuration[/bold cyan]", border_style="cyan"))
    console.print()
    _config_table(config)


@app.command("version")
def version_command() -> None:
    """
    Display version information.
    """
    from .. import __version__

    console.print()
    console.print(
        Panel.fit(
            f"[bold cyan]CSEI pipeline[/bold cyan]\n[dim]Version {__version__}[/dim]",
            border_style="cyan",
        )
    )
    console.print()


def main() -> None:
    """
    Main entry point for CLI.
    """
    app()


if __name__ == "__main__":
    main()
