"""``cones``: cone points of a group and integer ψ-sum decomposition."""

from pathlib import Path

import click

from orbispec.services.geodesics import cone_points
from orbispec.services.psi import brute_force_cone_sum, decompose_cone_sum
from orbispec.utils.formatting import dumps
from orbispec.utils.io import read_sampled

from .common import CliState, group_options, load_presentation, pass_state


@click.group("cones")
def cones_group():
    """Cone point orders."""


@cones_group.command("points")
@group_options
@click.option("--depth", type=click.IntRange(min=1), default=3, show_default=True)
@pass_state
def points_command(
    state: CliState, preset: str | None, generators_path: Path | None, depth: int
):
    """Orders of the primitive elliptic classes found in words of length <= depth."""
    _, pres = load_presentation(preset, generators_path)
    state.emit(dumps({"cone_orders": cone_points(pres, depth)}) + "\n")


@cones_group.command("decompose")
@click.argument("samples_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--max-order", type=click.IntRange(min=2), help="Largest cone order tried.")
@click.option(
    "--mode", type=click.Choice(["exact", "noisy"]), default="exact", show_default=True
)
@click.option(
    "--exhaustive",
    is_flag=True,
    help="Only score the count box, skipping the local integer search.",
)
@click.option(
    "--max-count",
    type=click.IntRange(min=0),
    help="Largest count per order in the exhaustive box.",
)
@pass_state
def decompose_command(
    state: CliState,
    samples_path: Path,
    max_order: int | None,
    mode: str,
    exhaustive: bool,
    max_count: int | None,
):
    """Cone orders whose ψ-sum matches the r-side samples in SAMPLES_PATH."""
    samples = read_sampled(samples_path)
    if exhaustive:
        fit = brute_force_cone_sum(samples, max_order, max_count)
    else:
        fit = decompose_cone_sum(samples, max_order, mode, max_count=max_count)
    report = {
        "cone_orders": fit.multiset,
        "residual": fit.residual,
        "runner_up": fit.runner_up,
    }
    state.emit(dumps(report) + "\n")
