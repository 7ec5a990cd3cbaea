"""``lengths``: primitive length spectrum of a Fuchsian group."""

from pathlib import Path

import click
import structlog

from orbispec.services.geodesics import length_spectrum
from orbispec.utils.io import spectrum_csv, spectrum_jsonl

from .common import CliState, group_options, load_presentation, pass_state

logger = structlog.get_logger(__name__)


@click.command("lengths")
@group_options
@click.option("--max-length", type=click.FloatRange(min=0, min_open=True), required=True)
@click.option("--depth", type=click.IntRange(min=1), default=10, show_default=True)
@click.option(
    "--conjugator-depth",
    type=click.IntRange(min=1),
    help="Word length of explicit conjugators (default min(depth, 4)).",
)
@click.option("--certify/--no-certify", default=True, show_default=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["jsonl", "csv"]),
    default="jsonl",
    show_default=True,
)
@pass_state
def lengths_command(
    state: CliState,
    preset: str | None,
    generators_path: Path | None,
    max_length: float,
    depth: int,
    conjugator_depth: int | None,
    certify: bool,
    fmt: str,
):
    """Oriented primitive closed geodesics up to --max-length, with multiplicities."""
    progress = state.progress_logger("Length spectrum", 2)
    progress.start()
    _, pres = load_presentation(preset, generators_path)
    progress.step(f"{len(pres.generators)} generators, depth {depth}")
    spectrum = length_spectrum(
        pres, max_length, depth, certify=certify, conjugator_depth=conjugator_depth
    )
    progress.step(f"{len(spectrum)} primitive lengths")
    if certify and spectrum.completeness_bound is not None:
        if spectrum.completeness_bound < max_length:
            progress.warning(
                f"spectrum certified only below {spectrum.completeness_bound:.6f}"
            )
        logger.info("completeness_bound", bound=spectrum.completeness_bound)
    progress.complete()
    state.emit(spectrum_csv(spectrum) if fmt == "csv" else spectrum_jsonl(spectrum))
