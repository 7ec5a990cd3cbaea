"""``wave synth`` and ``wave invert``: the mollified wave trace and its inverse."""

from pathlib import Path

import click

from orbispec.logging_helpers import ProgressLogger
from orbispec.services.geodesics import length_spectrum
from orbispec.services.wave_trace import (
    IDENTITY_METHODS,
    PARTS,
    WaveTraceModel,
    full_inverse,
    model_from_spectrum,
    suggest_sigma,
    synthesize_mollified,
)
from orbispec.utils.formatting import dumps
from orbispec.utils.io import read_spectrum, read_trace, write_trace

from .common import (
    CliState,
    group_options,
    load_presentation,
    parse_orders,
    pass_state,
)


@click.group("wave")
def wave_group():
    """Mollified wave trace."""


def _model(
    preset: str | None,
    generators_path: Path | None,
    spectrum_path: Path | None,
    area: float | None,
    cone_orders: str,
    max_length: float,
    depth: int,
    progress: ProgressLogger,
) -> WaveTraceModel:
    if spectrum_path is not None:
        if area is None:
            raise click.UsageError("--spectrum needs --area.")
        spectrum = read_spectrum(spectrum_path)
        return model_from_spectrum(area, spectrum, parse_orders(cone_orders), max_length)
    structure, pres = load_presentation(preset, generators_path)
    spectrum = length_spectrum(pres, max_length, depth)
    progress.step(f"{len(spectrum)} primitive lengths below {max_length}")
    return model_from_spectrum(
        structure.area, spectrum, structure.signature.cone_orders, max_length
    )


@wave_group.command("synth")
@group_options
@click.option(
    "--spectrum",
    "spectrum_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Length spectrum file instead of a group.",
)
@click.option("--area", type=click.FloatRange(min=0, min_open=True), help="Area when --spectrum is used.")
@click.option("--cone-orders", default="", help="Cone orders when --spectrum is used.")
@click.option("--max-length", type=click.FloatRange(min=0, min_open=True), required=True)
@click.option("--depth", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--sigma", type=click.FloatRange(min=0, min_open=True), help="Mollifier width (default: smallest gap / 6).")
@click.option("--grid-step", type=click.FloatRange(min=0, min_open=True), help="Sample spacing (default sigma / 4).")
@click.option("--grid-max", type=click.FloatRange(min=0, min_open=True), help="Last sample time.")
@click.option("--parts", default=",".join(PARTS), show_default=True)
@click.option("--identity-method", type=click.Choice(IDENTITY_METHODS))
@pass_state
def synth_command(
    state: CliState,
    preset: str | None,
    generators_path: Path | None,
    spectrum_path: Path | None,
    area: float | None,
    cone_orders: str,
    max_length: float,
    depth: int,
    sigma: float | None,
    grid_step: float | None,
    grid_max: float | None,
    parts: str,
    identity_method: str | None,
):
    """Sample the mollified trace into --output (CSV plus a JSON sidecar)."""
    if state.output is None:
        raise click.UsageError("wave synth writes a CSV and its sidecar: pass --output.")
    progress = state.progress_logger("Wave trace synthesis", 2)
    progress.start()
    model = _model(
        preset, generators_path, spectrum_path, area, cone_orders, max_length, depth, progress
    )
    sigma = suggest_sigma(model) if sigma is None else sigma
    trace = synthesize_mollified(
        model,
        sigma,
        grid_step=grid_step,
        grid_max=grid_max,
        parts=[p.strip() for p in parts.split(",") if p.strip()],
        identity_method=identity_method,
        metadata={"max_length": max_length},
    )
    progress.step(f"{len(trace.grid)} samples, sigma {sigma:.6g}")
    write_trace(trace, state.output)
    progress.complete()


@wave_group.command("invert")
@click.argument("trace_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--area", type=click.FloatRange(min=0, min_open=True), help="Known area (default: sidecar value, else estimated).")
@click.option("--max-order", type=click.IntRange(min=2))
@click.option("--max-length", type=click.FloatRange(min=0, min_open=True))
@click.option("--mode", type=click.Choice(["exact", "noisy"]), default="noisy", show_default=True)
@click.option(
    "--residual",
    "residual_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Also write the cone residual trace here.",
)
@pass_state
def invert_command(
    state: CliState,
    trace_path: Path,
    area: float | None,
    max_order: int | None,
    max_length: float | None,
    mode: str,
    residual_path: Path | None,
):
    """Recover lengths, cone orders and genus from a trace written by wave synth."""
    trace = read_trace(trace_path)
    progress = state.progress_logger("Wave trace inversion", 4)
    result = full_inverse(
        trace, area, max_order, max_length=max_length, mode=mode, progress=progress
    )
    if residual_path is not None:
        write_trace(result.residual, residual_path)
    state.emit(dumps(result.to_dict()) + "\n")
