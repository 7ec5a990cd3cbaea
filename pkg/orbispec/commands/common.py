"""
Options and helpers shared by the subcommands.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import click

from orbispec.errors import InvalidInput
from orbispec.logging_helpers import ProgressLogger
from orbispec.services.geodesics import GroupPresentation
from orbispec.services.orbisurface import (
    HyperbolicStructure,
    parse_preset,
    triangle_structure,
)
from orbispec.utils.io import read_structure


@dataclass
class CliState:
    """Global flags of one invocation, stored on ``ctx.obj``."""

    output: Path | None = None
    progress: bool = False

    def emit(self, text: str) -> None:
        """Write command output to ``--output`` or stdout."""
        if self.output is None:
            click.echo(text, nl=False)
        else:
            self.output.write_text(text, encoding="utf-8")

    def progress_logger(self, title: str, total_steps: int) -> ProgressLogger:
        return ProgressLogger(title, total_steps, enabled=self.progress)


pass_state = click.make_pass_decorator(CliState, ensure=True)


def parse_orders(text: str | None) -> tuple[int, ...]:
    """Parse ``2,3,7``; an empty string means no cone points."""
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from exc


def group_options(func):
    """``--preset p,q,r`` or ``--generators FILE``, exactly one of them."""
    func = click.option(
        "--generators",
        "generators_path",
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
        help="Structure JSON with generator matrices.",
    )(func)
    return click.option("--preset", help="Triangle group orders p,q,r.")(func)


def load_structure(preset: str | None, generators_path: Path | None) -> HyperbolicStructure:
    if (preset is None) == (generators_path is None):
        raise click.UsageError("Pass exactly one of --preset or --generators.")
    if preset is not None:
        return triangle_structure(*parse_preset(preset))
    assert generators_path is not None
    structure = read_structure(generators_path)
    if not structure.generators:
        raise InvalidInput("Structure file lists no generators", path=str(generators_path))
    return structure


def load_presentation(
    preset: str | None, generators_path: Path | None
) -> tuple[HyperbolicStructure, GroupPresentation]:
    structure = load_structure(preset, generators_path)
    assert structure.generators is not None
    return structure, GroupPresentation.from_generators(structure.generators)
