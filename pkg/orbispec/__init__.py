"""Spectral geometry of compact hyperbolic orbisurfaces."""

from .config import Config, DevelopmentConfig, load_config
from .logging_config import configure_logging

__version__ = "0.1.0"


def create_context(config_object=DevelopmentConfig) -> Config:
    """Configure logging and make ``config_object`` the active configuration."""
    configure_logging()
    return load_config(config_object)
