# config.py
import os
from pathlib import Path
from typing import Any

from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(BASE_DIR / ".env")

ENV_PREFIX = "ORBISPEC_"


def _env(key: str, default: Any) -> Any:
    """Read ``ORBISPEC_<key>`` from the environment, coerced to the default's type."""
    raw = os.getenv(ENV_PREFIX + key)
    if raw is None:
        return default
    if isinstance(default, bool):
        return raw.lower() in ("true", "1", "yes")
    if isinstance(default, int):
        return int(float(raw))
    if isinstance(default, float):
        return float(raw)
    return raw


class BaseConfig:
    # Hyperbolic core
    EPS_DET = _env("EPS_DET", 1e-12)
    EPS_CLS = _env("EPS_CLS", 1e-9)

    # Word enumeration and conjugacy classes
    EPS_DEDUP = _env("EPS_DEDUP", 1e-8)
    EPS_CONJ = _env("EPS_CONJ", 1e-8)
    EPS_LEN = _env("EPS_LEN", 1e-6)
    ELEMENT_CAP = _env("ELEMENT_CAP", 5_000_000)

    # Quadrature
    QUAD_TOL = _env("QUAD_TOL", 1e-10)
    QUAD_LIMIT = _env("QUAD_LIMIT", 400)

    # Wave trace
    GRID_MAX = _env("GRID_MAX", 40.0)
    DETECTION_THRESHOLD = _env("DETECTION_THRESHOLD", 0.01)
    MULTIPLICITY_TOL = _env("MULTIPLICITY_TOL", 0.2)
    IDENTITY_METHOD = _env("IDENTITY_METHOD", "spectral")
    TRANSFORM_TOL = _env("TRANSFORM_TOL", 1e-5)

    # Cone decomposition
    DECOMPOSE_R_MAX = _env("DECOMPOSE_R_MAX", 15.0)
    DECOMPOSE_R_STEP = _env("DECOMPOSE_R_STEP", 0.05)
    DECOMPOSE_MAX_ORDER = _env("DECOMPOSE_MAX_ORDER", 12)
    DECOMPOSE_MAX_COUNT = _env("DECOMPOSE_MAX_COUNT", 3)
    EXHAUSTIVE_LIMIT = _env("EXHAUSTIVE_LIMIT", 2**26)
    NONINTEGER_FIT_REL = _env("NONINTEGER_FIT_REL", 1e-3)

    # Concurrency
    THREADS = _env("THREADS", 1)


class DevelopmentConfig(BaseConfig):
    DEBUG = True


class ProductionConfig(BaseConfig):
    DEBUG = False


class TestingConfig(BaseConfig):
    TESTING = True
    ELEMENT_CAP = 2_000_000


class Config(dict):
    """Active configuration, loaded from a config class like ``app.config``."""

    def from_object(self, obj: type | object) -> None:
        for key in dir(obj):
            if key.isupper():
                self[key] = getattr(obj, key)


_active = Config()
_active.from_object(DevelopmentConfig)


def load_config(config_object: type | object = DevelopmentConfig) -> Config:
    """Replace the active configuration with the given config class."""
    _active.clear()
    _active.from_object(config_object)
    return _active


def current_config() -> Config:
    """Return the active configuration."""
    return _active


def setting(key: str, value: Any = None) -> Any:
    """Return ``value`` when given, else the active configuration's ``key``."""
    if value is not None:
        return value
    return _active[key]
