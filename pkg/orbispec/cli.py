"""Command-line entry point."""

from pathlib import Path

import click

from . import __version__, create_context
from .commands import all_commands
from .commands.common import CliState
from .config import ProductionConfig
from .error_handlers import register_error_handlers


def create_cli(config_object=ProductionConfig) -> click.Group:
    """Build the root command group around ``config_object``."""

    @click.group(context_settings={"help_option_names": ["-h", "--help"]})
    @click.version_option(__version__, prog_name="orbispec")
    @click.option("--threads", type=click.IntRange(min=1), help="Worker thread cap.")
    @click.option(
        "--tol",
        type=click.FloatRange(min=0, min_open=True),
        help="Quadrature tolerance.",
    )
    @click.option(
        "--output",
        "-o",
        type=click.Path(dir_okay=False, path_type=Path),
        help="Write results here instead of stdout.",
    )
    @click.option("--progress", is_flag=True, help="Report pipeline steps on stderr.")
    @click.pass_context
    def cli(
        ctx: click.Context,
        threads: int | None,
        tol: float | None,
        output: Path | None,
        progress: bool,
    ):
        """Spectral geometry of compact hyperbolic orbisurfaces."""
        config = create_context(config_object)
        if threads is not None:
            config["THREADS"] = threads
        if tol is not None:
            config["QUAD_TOL"] = tol
        ctx.obj = CliState(output=output, progress=progress)

    for command in all_commands:
        cli.add_command(command)
    return register_error_handlers(cli)


def main() -> None:
    create_cli()()
