from orbispec import config
from orbispec.config import (
    BaseConfig,
    DevelopmentConfig,
    TestingConfig,
    current_config,
    load_config,
    setting,
)


class TestConfig:
    def test_testing_config_is_active(self):
        """The autouse fixture loads TestingConfig."""
        assert current_config()["TESTING"] is True
        assert setting("ELEMENT_CAP") == 2_000_000

    def test_explicit_value_wins(self):
        assert setting("QUAD_TOL", 1e-6) == 1e-6
        assert setting("QUAD_TOL") == BaseConfig.QUAD_TOL

    def test_load_replaces_keys(self):
        active = load_config(DevelopmentConfig)
        assert "TESTING" not in active
        assert active["DEBUG"] is True
        assert active["ELEMENT_CAP"] == BaseConfig.ELEMENT_CAP
        load_config(TestingConfig)

    def test_only_upper_case_keys(self):
        active = load_config(TestingConfig)
        assert all(key.isupper() for key in active)


class TestEnvironment:
    def test_missing_uses_default(self, monkeypatch):
        monkeypatch.delenv("ORBISPEC_THREADS", raising=False)
        assert config._env("THREADS", 1) == 1

    def test_coerced_to_default_type(self, monkeypatch):
        monkeypatch.setenv("ORBISPEC_THREADS", "4")
        monkeypatch.setenv("ORBISPEC_ELEMENT_CAP", "1e6")
        monkeypatch.setenv("ORBISPEC_QUAD_TOL", "1e-8")
        monkeypatch.setenv("ORBISPEC_IDENTITY_METHOD", "pv")
        assert config._env("THREADS", 1) == 4
        assert config._env("ELEMENT_CAP", 5_000_000) == 1_000_000
        assert config._env("QUAD_TOL", 1e-10) == 1e-8
        assert config._env("IDENTITY_METHOD", "spectral") == "pv"

    def test_booleans(self, monkeypatch):
        monkeypatch.setenv("ORBISPEC_FLAG", "yes")
        assert config._env("FLAG", False) is True
        monkeypatch.setenv("ORBISPEC_FLAG", "off")
        assert config._env("FLAG", True) is False
