from pathlib import Path

import pytest
from click.testing import CliRunner

from orbispec import create_context
from orbispec.cli import create_cli
from orbispec.config import TestingConfig
from orbispec.services.geodesics import GroupPresentation, length_spectrum
from orbispec.services.orbisurface import bolza_structure, triangle_structure

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(autouse=True)
def context():
    return create_context(TestingConfig)


@pytest.fixture
def cli():
    return create_cli(TestingConfig)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(scope="session")
def structure_237():
    return triangle_structure(2, 3, 7)


@pytest.fixture(scope="session")
def triangle_237(structure_237):
    return GroupPresentation.from_generators(structure_237.generators)


@pytest.fixture(scope="session")
def bolza():
    return GroupPresentation.from_generators(bolza_structure().generators)


@pytest.fixture(scope="session")
def spectrum_237(triangle_237):
    """Certified primitive spectrum of the (2,3,7) group below length 4."""
    create_context(TestingConfig)
    return length_spectrum(triangle_237, 4.0, 10)


@pytest.fixture(scope="session")
def bolza_generators_path():
    return DATA_DIR / "bolza_generators.json"


@pytest.fixture(scope="session")
def spectrum_237_long(triangle_237):
    """Certified primitive spectrum of the (2,3,7) group below length 6."""
    create_context(TestingConfig)
    return length_spectrum(triangle_237, 6.0, 20)
