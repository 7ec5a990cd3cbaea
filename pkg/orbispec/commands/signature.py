"""``signature`` and ``triangle``: orbifold invariants and built-in groups."""

from pathlib import Path

import click

from orbispec.services.orbisurface import (
    OrbifoldSignature,
    area_gauss_bonnet,
    triangle_structure,
    underlying_surface,
)
from orbispec.utils.formatting import dumps
from orbispec.utils.io import read_json

from .common import CliState, parse_orders, pass_state


@click.command("signature")
@click.option("-g", "--genus", type=click.IntRange(min=0), help="Genus of the underlying surface.")
@click.option("-m", "--cone-orders", default="", help="Cone orders, e.g. 2,3,7.")
@click.option(
    "--input",
    "input_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Signature JSON instead of -g/-m.",
)
@pass_state
def signature_command(
    state: CliState, genus: int | None, cone_orders: str, input_path: Path | None
):
    """Euler characteristic, hyperbolicity and area of a signature."""
    if input_path is not None:
        sig = OrbifoldSignature.from_dict(read_json(input_path))
    elif genus is not None:
        sig = OrbifoldSignature(genus, parse_orders(cone_orders))
    else:
        raise click.UsageError("Pass -g/--genus or --input.")

    report = {
        **sig.to_dict(),
        "chi": str(sig.chi),
        "hyperbolic": sig.is_hyperbolic,
        "area": area_gauss_bonnet(sig) if sig.is_hyperbolic else None,
        "underlying_euler_characteristic": underlying_surface(sig)[1],
    }
    state.emit(dumps(report) + "\n")


@click.command("triangle")
@click.argument("p", type=click.IntRange(min=2))
@click.argument("q", type=click.IntRange(min=2))
@click.argument("r", type=click.IntRange(min=2))
@pass_state
def triangle_command(state: CliState, p: int, q: int, r: int):
    """Generator matrices of the (p, q, r) triangle group as structure JSON."""
    state.emit(dumps(triangle_structure(p, q, r).to_dict()) + "\n")
