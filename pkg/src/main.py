# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Quantum walk entanglement CLI application."""

from datetime import datetime
from pathlib import Path

import click
from pydantic import ValidationError

from .asymptotics.engine import AsymptoticEngine
from .asymptotics.reporter import (
    print_entanglement_report,
    save_density,
    save_sweep,
    save_trajectory,
)
from .data.config_loader import apply_overrides, load_run_config
from .models.schemas import STATE_FAMILIES, QuadratureSpec
from .simulator.lattice import entanglement_trajectory, final_window_mean
from .sweep import SweepEngine
from .utils.config import config
from .utils.errors import ConfigError, WalkError
from .utils.logger import set_package_level, setup_logger
from .validation import CHECKS, render_table, run_validation
from .walk.coin import coin_from_name
from .walk.states import state_from_config

logger = setup_logger(__name__)

POSITION_KINDS = ["point", "two-site-separable", "two-site-entangled", "gaussian", "uniform"]


def _exit_with(ctx: click.Context, e: Exception, what: str) -> None:
    """Report an error on stderr and exit with its code."""
    if isinstance(e, ValidationError):
        e = ConfigError(str(e))
    code = e.exit_code if isinstance(e, WalkError) else 1
    logger.error(f"{what} failed: {e}")
    click.echo(f"Error: {e}", err=True)
    ctx.exit(code)


def config_option(f):
    """--config option shared by all run commands."""
    return click.option(
        "--config",
        "config_path",
        type=click.Path(path_type=Path),
        help="JSON run configuration (angles in units of pi)",
    )(f)


def workers_option(f):
    """--workers option with environment override."""
    return click.option(
        "--workers",
        type=click.IntRange(min=1),
        envvar="QWALK_WORKERS",
        default=config.DEFAULT_WORKERS,
        show_default=True,
        help="Worker count for quadrature chunks and sweep points (env: QWALK_WORKERS)",
    )(f)


def verbose_option(f):
    """--verbose/-v flag."""
    return click.option(
        "--verbose",
        "-v",
        is_flag=True,
        help="Enable verbose logging (DEBUG level)",
    )(f)


def _default_output(prefix: str) -> Path:
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    return config.OUTPUT_DIR / f"{prefix}_{timestamp}.csv"


@click.group()
def cli():
    """Asymptotic coin-position entanglement of two-dimensional quantum walks."""
    pass


@cli.command()
@config_option
@click.option("--out", type=click.Path(path_type=Path), help="Write the density as CSV")
@click.option("--grid", type=int, help="Quadrature grid points per axis (power of 2, >= 16)")
@click.option("--state", type=click.Choice(STATE_FAMILIES), help="Coin state family")
@click.option("--position", type=click.Choice(POSITION_KINDS), help="Position distribution kind")
@workers_option
@verbose_option
@click.pass_context
def asymptotic(
    ctx: click.Context,
    config_path: Path | None,
    out: Path | None,
    grid: int | None,
    state: str | None,
    position: str | None,
    workers: int,
    verbose: bool,
):
    """
    Compute the asymptotic entanglement for one configuration.

    Examples:

      # Localized |LL> with the Hadamard coin
      uv run src/main.py asymptotic --state LL

      # Bell state with a uniformly extended position
      uv run src/main.py asymptotic --state bell-psi-plus --position uniform
    """
    if verbose:
        set_package_level("DEBUG")

    try:
        run_config = apply_overrides(
            load_run_config(config_path), grid=grid, state=state, position=position, output=out,
        )
        coin = coin_from_name(run_config.coin.kind, run_config.coin.values)
        chi = state_from_config(run_config.state)
        engine = AsymptoticEngine(
            coin,
            run_config.position.to_distribution(),
            run_config.quadrature,
            workers=workers,
        )

        report = engine.run(chi)

        print_entanglement_report(report)

        if run_config.output:
            save_density(report.density, Path(run_config.output))
            click.echo(f"\nDensity saved to: {run_config.output}")

    except Exception as e:
        _exit_with(ctx, e, "Asymptotic computation")


@cli.command()
@config_option
@click.option("--out", type=click.Path(path_type=Path), help="Output CSV path")
@click.option("--grid", type=int, help="Quadrature grid points per axis (power of 2, >= 16)")
@click.option("--state", type=click.Choice(STATE_FAMILIES), help="Coin state family")
@click.option("--position", type=click.Choice(POSITION_KINDS), help="Position distribution kind")
@workers_option
@verbose_option
@click.pass_context
def sweep(
    ctx: click.Context,
    config_path: Path | None,
    out: Path | None,
    grid: int | None,
    state: str | None,
    position: str | None,
    workers: int,
    verbose: bool,
):
    """
    Sweep the asymptotic entanglement over one or two parameters.

    The config file needs a "sweep" section with one or two axes, e.g.
    {"name": "theta", "min": -0.5, "max": 0.5, "count": 41}.

    Examples:

      # Family II surface from a config file
      uv run src/main.py sweep --config family2.json --out output/family2.csv
    """
    if verbose:
        set_package_level("DEBUG")

    try:
        run_config = apply_overrides(
            load_run_config(config_path), grid=grid, state=state, position=position, output=out,
        )
        if run_config.sweep is None:
            raise ConfigError("Sweep needs a 'sweep' section in the config file")
        output = Path(run_config.output) if run_config.output else _default_output("sweep")

        engine = SweepEngine(
            coin_cfg=run_config.coin,
            state_cfg=run_config.state,
            position_cfg=run_config.position,
            sweep=run_config.sweep,
            quadrature=run_config.quadrature,
            workers=workers,
        )

        results = engine.run()

        save_sweep(results, output)

        click.echo("\n" + "=" * 80)
        click.echo("SWEEP SUMMARY")
        click.echo("=" * 80)
        click.echo(f"Points: {len(results)}")
        click.echo(f"E min: {results['entropy_bits'].min():.6f}")
        click.echo(f"E max: {results['entropy_bits'].max():.6f}")
        click.echo(f"Not converged: {int((~results['converged']).sum())}")
        click.echo(f"\nResults saved to: {output}")
        click.echo("=" * 80)

    except Exception as e:
        _exit_with(ctx, e, "Sweep")


@cli.command()
@config_option
@click.option("--out", type=click.Path(path_type=Path), help="Output CSV path")
@click.option("--steps", type=click.IntRange(min=0), help="Number of walk steps")
@click.option("--state", type=click.Choice(STATE_FAMILIES), help="Coin state family")
@click.option("--position", type=click.Choice(POSITION_KINDS), help="Position distribution kind")
@verbose_option
@click.pass_context
def simulate(
    ctx: click.Context,
    config_path: Path | None,
    out: Path | None,
    steps: int | None,
    state: str | None,
    position: str | None,
    verbose: bool,
):
    """
    Evolve the walk on a lattice and record E(n).

    Examples:

      # 200 steps from |LL> at the origin
      uv run src/main.py simulate --state LL --steps 200 --out output/ll.csv
    """
    if verbose:
        set_package_level("DEBUG")

    try:
        run_config = apply_overrides(
            load_run_config(config_path), state=state, position=position, output=out,
        )
        n_max = run_config.simulation.steps if steps is None else steps
        output = Path(run_config.output) if run_config.output else _default_output("trajectory")

        coin = coin_from_name(run_config.coin.kind, run_config.coin.values)
        chi = state_from_config(run_config.state)
        trajectory = entanglement_trajectory(
            chi, run_config.position.to_distribution(), coin, n_max,
        )

        save_trajectory(trajectory, output)

        mean = final_window_mean(trajectory, run_config.simulation.window)
        click.echo(f"Final-window mean E: {mean:.6f}")
        click.echo(f"Trajectory saved to: {output}")

    except Exception as e:
        _exit_with(ctx, e, "Simulation")


@cli.command()
@click.option(
    "--only",
    multiple=True,
    type=click.Choice(list(CHECKS)),
    help="Run only this check (can specify multiple times). Default: all checks.",
)
@click.option(
    "--grid",
    type=int,
    default=config.VALIDATION_GRID,
    show_default=True,
    help="Quadrature grid points per axis",
)
@workers_option
@verbose_option
@click.pass_context
def validate(ctx: click.Context, only: tuple[str, ...], grid: int, workers: int, verbose: bool):
    """
    Run the acceptance checks and print a PASS/FAIL table.

    Exits with code 1 if any check fails.
    """
    if verbose:
        set_package_level("DEBUG")

    try:
        QuadratureSpec(grid_points_per_axis=grid)
        results = run_validation(list(only) or None, grid, workers)
    except Exception as e:
        _exit_with(ctx, e, "Validation")
        return

    click.echo(render_table(results))
    if not all(r.passed for r in results):
        ctx.exit(1)


if __name__ == "__main__":
    cli()
