"""``trace-eval``: both sides of the trace formula for one test function."""

from pathlib import Path

import click

from orbispec.config import setting
from orbispec.errors import InvalidInput
from orbispec.services.geodesics import GroupPresentation, length_spectrum
from orbispec.services.trace_formula import (
    PAIRS,
    QuadratureSpec,
    SpectralParameters,
    geometric_side,
    heat_trace_area,
    make_pair,
    spectral_side,
)
from orbispec.utils.formatting import dumps
from orbispec.utils.io import read_json

from .common import CliState, group_options, load_structure, pass_state


@click.command("trace-eval")
@group_options
@click.option("--pair", "pair_name", type=click.Choice(sorted(PAIRS)), default="gaussian", show_default=True)
@click.option("--t", "heat_time", type=click.FloatRange(min=0, min_open=True), default=1.0, show_default=True, help="Heat time of the Gaussian pair.")
@click.option("--width", type=click.FloatRange(min=0, min_open=True), default=1.0, show_default=True, help="Half-support of the B-spline pair.")
@click.option("--max-length", type=click.FloatRange(min=0, min_open=True), required=True)
@click.option("--max-iterate", type=click.IntRange(min=1))
@click.option("--depth", type=click.IntRange(min=1), default=10, show_default=True)
@click.option(
    "--eigenvalues",
    "eigenvalues_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="JSON list of Laplace eigenvalues for the spectral side.",
)
@pass_state
def trace_eval_command(
    state: CliState,
    preset: str | None,
    generators_path: Path | None,
    pair_name: str,
    heat_time: float,
    width: float,
    max_length: float,
    max_iterate: int | None,
    depth: int,
    eigenvalues_path: Path | None,
):
    """Identity, hyperbolic and elliptic terms with an error budget, as JSON."""
    progress = state.progress_logger("Trace formula", 2)
    progress.start()
    structure = load_structure(preset, generators_path)
    parameter = heat_time if pair_name == "gaussian" else width
    pair = make_pair(pair_name, parameter)

    assert structure.generators is not None
    pres = GroupPresentation.from_generators(structure.generators)
    spectrum = length_spectrum(pres, max_length, depth)
    progress.step(f"{len(spectrum)} primitive lengths below {max_length}")

    report = geometric_side(
        structure,
        pair,
        max_length,
        max_iterate=max_iterate,
        spectrum=spectrum,
        quad=QuadratureSpec.default(),
        threads=setting("THREADS"),
    ).to_dict()
    progress.step(f"geometric side {report['total']:.10g}")

    if eigenvalues_path is not None:
        values = read_json(eigenvalues_path)
        if not isinstance(values, list):
            raise InvalidInput("Eigenvalue file must hold a JSON list")
        params = SpectralParameters.from_eigenvalues(float(v) for v in values)
        spectral = spectral_side(params, pair)
        report["spectral"] = spectral
        if pair_name == "gaussian":
            report["weyl_area_estimate"] = heat_trace_area(spectral, heat_time)
    progress.complete()
    state.emit(dumps(report) + "\n")
