"""
Tests for settings management functionality.
"""

import json
import shutil
import tempfile
from pathlib import Path

import pytest

from src.utils.errors import ConfigError
from src.utils.settings import Settings, parse_alternative, parse_complex


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    temp_path = Path(tempfile.mkdtemp())
    yield temp_path
    shutil.rmtree(temp_path)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Run without XJX_* variables from the calling shell."""
    monkeypatch.delenv("XJX_OUTPUT_DIR", raising=False)
    monkeypatch.delenv("XJX_JOBS", raising=False)


@pytest.fixture
def settings():
    """Create a Settings instance for testing."""
    return Settings("scatter")


def write_config(path: Path, payload: dict) -> Path:
    with open(path, "w") as f:
        json.dump(payload, f)
    return path


class TestSettings:
    """Tests for Settings class."""

    def test_defaults(self, settings):
        """General and command sections are merged."""
        assert settings.get("seed") == 0
        assert settings.get("law") == "complex-gaussian"
        assert settings["shape"] == [500, 1000]
        assert settings.get("nonexistent", "default") == "default"

    def test_unknown_command(self):
        """Only the seven subcommands have settings."""
        with pytest.raises(ConfigError):
            Settings("plot")

    def test_set_setting(self, settings):
        """Test setting individual settings."""
        settings.set("seed", 42)
        assert settings.get("seed") == 42

    def test_unknown_key_rejected(self, settings):
        """Keys of other commands are refused."""
        with pytest.raises(ConfigError):
            settings.set("calibration_reps", 100)

    def test_update_skips_none(self, settings):
        """Unset CLI flags keep the lower-precedence value."""
        settings.update({"seed": 5, "shape": None})
        assert settings.get("seed") == 5
        assert settings.get("shape") == [500, 1000]

    def test_reset_specific_setting(self, settings):
        """Test resetting specific setting to default."""
        settings.set("seed", 9)
        settings.reset("seed")
        assert settings.get("seed") == 0

    def test_reset_all_settings(self, settings):
        """Test resetting all settings to default."""
        settings.set("seed", 9)
        settings.set("save_matrix", True)
        settings.reset()
        assert settings.as_dict() == Settings("scatter").as_dict()

    def test_defaults_are_not_shared(self):
        """Mutating one instance leaves the class defaults intact."""
        first = Settings("master")
        first["z"].append("5")
        assert Settings("master")["z"] == ["1", "1+0.5j", "2j", "0.5", "3"]


class TestPrecedence:
    """CLI > config file > environment > defaults."""

    def test_environment(self, monkeypatch):
        """XJX_OUTPUT_DIR and XJX_JOBS override the defaults."""
        monkeypatch.setenv("XJX_OUTPUT_DIR", "/tmp/elsewhere")
        monkeypatch.setenv("XJX_JOBS", "3")
        settings = Settings("cdf")
        assert settings.get("output_dir") == "/tmp/elsewhere"
        assert settings.get("jobs") == 3

    def test_bad_environment(self, monkeypatch):
        """Non-integer XJX_JOBS is a config error."""
        monkeypatch.setenv("XJX_JOBS", "many")
        with pytest.raises(ConfigError):
            Settings("cdf")

    def test_config_file_beats_environment(self, temp_dir, monkeypatch):
        """Values from the config file override the environment."""
        monkeypatch.setenv("XJX_JOBS", "3")
        path = write_config(temp_dir / "run.json", {"settings": {"general": {"jobs": 2}, "cdf": {"grid_points": 11}}})
        settings = Settings("cdf", config_file=path)
        assert settings.get("jobs") == 2
        assert settings.get("grid_points") == 11

    def test_cli_beats_config_file(self, temp_dir):
        """update() after loading a file wins."""
        path = write_config(temp_dir / "run.json", {"general": {"seed": 4}})
        settings = Settings("cdf", config_file=path)
        settings.update({"seed": 8})
        assert settings.get("seed") == 8

    def test_other_sections_ignored(self, temp_dir):
        """Sections of other commands do not leak in."""
        path = write_config(temp_dir / "run.json", {"roc": {"trials": 60}, "cdf": {"grid_points": 5}})
        settings = Settings("cdf", config_file=path)
        assert settings.get("trials") is None
        assert settings.get("grid_points") == 5


class TestImportExport:
    """Tests for config files."""

    def test_roundtrip(self, temp_dir):
        """Exported settings load back unchanged."""
        settings = Settings("roc")
        settings.update({"trials": 75, "tests": ["t2"]})
        settings.export_settings(temp_dir / "roc.json")
        loaded = Settings("roc", config_file=temp_dir / "roc.json")
        assert loaded.as_dict() == settings.as_dict()

    def test_invalid_json(self, temp_dir):
        """Unparseable files are config errors."""
        path = temp_dir / "broken.json"
        path.write_text("{ not json")
        with pytest.raises(ConfigError):
            Settings("cdf", config_file=path)

    def test_missing_file(self, temp_dir):
        """Missing files are config errors."""
        with pytest.raises(ConfigError):
            Settings("cdf", config_file=temp_dir / "absent.json")

    def test_schema_version(self, temp_dir):
        """A different major version is refused."""
        path = write_config(temp_dir / "v2.json", {"metadata": {"version": "2.0"}, "settings": {}})
        with pytest.raises(ConfigError):
            Settings("cdf", config_file=path)

    def test_unknown_key_in_file(self, temp_dir):
        """Typos in a config file are reported."""
        path = write_config(temp_dir / "typo.json", {"cdf": {"grid_point": 5}})
        with pytest.raises(ConfigError):
            Settings("cdf", config_file=path)


class TestValidation:
    """Tests for Settings.validate."""

    def test_defaults_validate(self):
        """Every command except test validates out of the box."""
        for command in ("scatter", "cdf", "roc", "master", "verify", "smin"):
            Settings(command).validate()

    def test_test_needs_shape(self):
        """The test command has no default shape."""
        settings = Settings("test")
        with pytest.raises(ConfigError):
            settings.validate()
        settings.set("shape", [10, 20])
        settings.validate()

    @pytest.mark.parametrize(
        "command,key,value",
        [
            ("scatter", "shape", [0, 10]),
            ("scatter", "shape", [10]),
            ("scatter", "seed", -1),
            ("scatter", "jobs", 0),
            ("scatter", "law", "real-gaussian"),
            ("cdf", "grid_points", 1),
            ("roc", "trials", 20),
            ("roc", "alt", "banded:0.1"),
            ("roc", "tests", ["t9"]),
            ("master", "t", [1.0, -0.1]),
            ("master", "z", ["one"]),
            ("verify", "tolerance_scale", -1.0),
        ],
    )
    def test_invalid_values(self, command, key, value):
        """Out-of-range parameters are rejected before dispatch."""
        settings = Settings(command)
        settings.set(key, value)
        with pytest.raises(ConfigError):
            settings.validate()

    def test_level_range(self):
        """level lies in (0, 1)."""
        settings = Settings("test")
        settings.update({"shape": [10, 20], "level": 1.0})
        with pytest.raises(ConfigError):
            settings.validate()


class TestConfigHash:
    """Tests for the result-affecting configuration hash."""

    def test_stable(self):
        """Same settings, same hash."""
        assert Settings("cdf").config_hash() == Settings("cdf").config_hash()

    def test_sensitive_to_seed(self):
        """Changing the seed changes the hash."""
        settings = Settings("cdf")
        before = settings.config_hash()
        settings.set("seed", 1)
        assert settings.config_hash() != before

    def test_ignores_output_and_jobs(self):
        """Output location and thread count do not enter the hash."""
        settings = Settings("cdf")
        before = settings.config_hash()
        settings.update({"output_dir": "/tmp/x", "jobs": 8})
        assert settings.config_hash() == before

    def test_depends_on_command(self):
        """Commands with equal values hash differently."""
        assert Settings("scatter").config_hash() != Settings("cdf").config_hash()


class TestParsers:
    """Tests for parse_alternative and parse_complex."""

    def test_alternative(self):
        """kind:value pairs."""
        assert parse_alternative("identity:0.01") == ("identity", 0.01)
        assert parse_alternative("toeplitz:1e-2") == ("toeplitz", 0.01)

    @pytest.mark.parametrize("text", ["identity", "identity:abc", "identity:0", "circulant:0.1"])
    def test_bad_alternative(self, text):
        """Malformed alternatives are config errors."""
        with pytest.raises(ConfigError):
            parse_alternative(text)

    def test_complex(self):
        """j and i suffixes, numbers pass through."""
        assert parse_complex("1+0.5j") == 1 + 0.5j
        assert parse_complex("2i") == 2j
        assert parse_complex(3) == 3 + 0j

    def test_bad_complex(self):
        """Text that is not a number is refused."""
        with pytest.raises(ConfigError):
            parse_complex("one")
