"""
Run configuration for the command-line tools.
Resolves defaults, environment, config files and CLI flags into one validated
parameter set per command.
"""

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from .errors import ConfigError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"

COMMANDS = ("scatter", "cdf", "test", "roc", "master", "verify", "smin")

# Keys that never change the numbers a command produces.
_UNHASHED_KEYS = ("output_dir", "jobs", "verbose", "quiet")

ALTERNATIVE_KINDS = ("identity", "toeplitz")


def parse_alternative(text: str) -> Tuple[str, float]:
    """
    Parse ``identity:ALPHA2`` or ``toeplitz:TRACE``.

    Returns:
        (kind, value) with value > 0
    """
    kind, sep, value = str(text).partition(":")
    if not sep or kind not in ALTERNATIVE_KINDS:
        raise ConfigError(f"Alternative must be identity:ALPHA2 or toeplitz:TRACE, got '{text}'")
    try:
        number = float(value)
    except ValueError as e:
        raise ConfigError(f"Alternative parameter '{value}' is not a number") from e
    if not number > 0:
        raise ConfigError(f"Alternative parameter must be positive, got {number}")
    return kind, number


class Settings:
    """Resolved parameters of one command: CLI > config file > environment > defaults."""

    DEFAULT_SETTINGS: Dict[str, Dict[str, Any]] = {
        "general": {
            "seed": 0,
            "jobs": 1,
            "law": "complex-gaussian",
            "output_dir": None,
        },
        "scatter": {
            "shape": [500, 1000],
            "gamma": None,
            "save_matrix": False,
        },
        "cdf": {
            "shape": [500, 1000],
            "gamma": None,
            "grid_points": 201,
        },
        "test": {
            "shape": None,
            "test": "t1",
            "level": 0.05,
            "calibration_reps": 200,
            "reference_seed": 0,
            "input": None,
        },
        "roc": {
            "shape": [50, 100],
            "trials": 200,
            "alt": "identity:0.0031622776601683794",
            "tests": ["t1", "t2", "t3"],
            "reference_seed": 0,
        },
        "master": {
            "gamma": 1.0,
            "z": ["1", "1+0.5j", "2j", "0.5", "3"],
            "t": [100.0, 1.0, 0.3, 0.01],
            "tol": 1e-10,
        },
        "smin": {
            "shape": [200, 200],
            "z": "1",
            "trials": 300,
            "smooth": False,
            "linearization_shape": [30, 40],
            "linearization_z": "1+1j",
        },
        "verify": {
            "criteria": None,
            "tolerance_scale": 1.0,
            "fast": False,
        },
    }

    def __init__(self, command: str, config_file: Optional[Path] = None) -> None:
        """
        Initialize the settings of one command.

        Args:
            command: Subcommand name
            config_file: Optional JSON config file
        """
        if command not in COMMANDS:
            raise ConfigError(f"Unknown command '{command}', expected one of {', '.join(COMMANDS)}")
        self.command = command
        self.settings: Dict[str, Any] = self._defaults()
        self._apply_environment()
        if config_file is not None:
            self.import_settings(Path(config_file))
        logger.debug(f"Settings initialized for '{command}'")

    def _defaults(self) -> Dict[str, Any]:
        merged = dict(self.DEFAULT_SETTINGS["general"])
        merged.update(self.DEFAULT_SETTINGS[self.command])
        return json.loads(json.dumps(merged))

    def _apply_environment(self) -> None:
        output_dir = os.getenv("XJX_OUTPUT_DIR")
        if output_dir:
            self.settings["output_dir"] = output_dir
        jobs = os.getenv("XJX_JOBS")
        if jobs:
            try:
                self.settings["jobs"] = int(jobs)
            except ValueError as e:
                raise ConfigError(f"XJX_JOBS must be an integer, got '{jobs}'") from e

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a setting value.

        Args:
            key: Setting key to retrieve
            default: Default value if key doesn't exist

        Returns:
            Setting value or default
        """
        return self.settings.get(key, default)

    def __getitem__(self, key: str) -> Any:
        return self.settings[key]

    def set(self, key: str, value: Any) -> None:
        """Set one value; unknown keys are rejected."""
        if key not in self.settings:
            raise ConfigError(f"Unknown setting '{key}' for command '{self.command}'")
        self.settings[key] = value
        logger.debug(f"Setting updated: {key}={value}")

    def update(self, settings: Dict[str, Any]) -> None:
        """
        Update several values at once; ``None`` values are skipped so that
        unset CLI flags keep the lower-precedence value.
        """
        for key, value in settings.items():
            if value is not None:
                self.set(key, value)

    def reset(self, key: Optional[str] = None) -> None:
        """
        Reset settings to default.

        Args:
            key: Optional specific setting to reset
        """
        defaults = self._defaults()
        if key:
            if key in defaults:
                self.settings[key] = defaults[key]
                logger.info(f"Reset setting: {key}")
            else:
                logger.warning(f"Unknown setting: {key}")
        else:
            self.settings = defaults
            logger.info("All settings reset to default")

    def as_dict(self) -> Dict[str, Any]:
        return json.loads(json.dumps(self.settings))

    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON of every result-affecting setting."""
        hashed = {k: v for k, v in self.settings.items() if k not in _UNHASHED_KEYS}
        canonical = json.dumps({"command": self.command, "settings": hashed}, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def validate(self) -> None:
        """Check every numeric parameter before dispatch; raises ConfigError."""
        from ..ensemble import SUPPORTED_LAWS

        s = self.settings
        self._require_int("seed", minimum=0)
        self._require_int("jobs", minimum=1)
        if s["law"] not in SUPPORTED_LAWS:
            raise ConfigError(f"Unknown entry law '{s['law']}', expected one of {', '.join(SUPPORTED_LAWS)}")
        for key in ("shape", "linearization_shape"):
            if s.get(key) is not None:
                self._require_shape(key)
        if s.get("gamma") is not None:
            self._require_positive("gamma")
        if "level" in s:
            level = s["level"]
            if not isinstance(level, (int, float)) or not 0 < level < 1:
                raise ConfigError(f"level must lie in (0, 1), got {level}")
        if "calibration_reps" in s:
            self._require_int("calibration_reps", minimum=50)
        if "trials" in s:
            self._require_int("trials", minimum=50 if self.command == "roc" else 1)
        if "grid_points" in s:
            self._require_int("grid_points", minimum=2)
        if "reference_seed" in s:
            self._require_int("reference_seed", minimum=0)
        if "test" in s and s["test"] not in ("t1", "t2", "t3"):
            raise ConfigError(f"test must be one of t1, t2, t3, got '{s['test']}'")
        if "tests" in s:
            bad = [t for t in s["tests"] if t not in ("t1", "t2", "t3")]
            if bad or not s["tests"]:
                raise ConfigError(f"tests must be a nonempty subset of t1, t2, t3, got {s['tests']}")
        if "alt" in s:
            parse_alternative(s["alt"])
        if "tol" in s:
            self._require_positive("tol")
        if self.command == "master":
            if not s["t"] or any(not isinstance(t, (int, float)) or t <= 0 for t in s["t"]):
                raise ConfigError(f"t values must be positive numbers, got {s['t']}")
            for z in s["z"]:
                parse_complex(z)
        if self.command == "smin":
            parse_complex(s["z"])
            parse_complex(s["linearization_z"])
        if "tolerance_scale" in s:
            scale = s["tolerance_scale"]
            if not isinstance(scale, (int, float)) or scale < 0:
                raise ConfigError(f"tolerance_scale must be >= 0, got {scale}")
        if self.command == "test" and s["shape"] is None:
            raise ConfigError("The test command needs --shape N n")
        logger.debug(f"Settings for '{self.command}' validated")

    def _require_int(self, key: str, minimum: int) -> None:
        value = self.settings[key]
        if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
            raise ConfigError(f"{key} must be an integer >= {minimum}, got {value!r}")

    def _require_positive(self, key: str) -> None:
        value = self.settings[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
            raise ConfigError(f"{key} must be a positive number, got {value!r}")

    def _require_shape(self, key: str) -> None:
        value = self.settings[key]
        if (
            not isinstance(value, (list, tuple))
            or len(value) != 2
            or any(isinstance(v, bool) or not isinstance(v, int) or v < 1 for v in value)
        ):
            raise ConfigError(f"{key} must be two positive integers N n, got {value!r}")

    def export_settings(self, export_path: Path) -> None:
        """
        Export settings to file.

        Args:
            export_path: Path to export settings to
        """
        try:
            settings_with_meta = {
                "metadata": {"version": SCHEMA_VERSION, "command": self.command},
                "settings": {self.command: self.as_dict()},
            }
            with open(export_path, "w") as f:
                json.dump(settings_with_meta, f, indent=4, sort_keys=True)
            logger.info(f"Settings exported to: {export_path}")
        except OSError as e:
            logger.error(f"Error exporting settings: {e}")
            raise

    def import_settings(self, import_path: Path) -> None:
        """
        Merge a JSON config file into the current values.

        The file holds ``{"metadata": {"version": ...}, "settings": {...}}``
        where ``settings`` has a ``general`` section and one section per
        command; a bare ``{section: {...}}`` object is accepted too.
        """
        try:
            with open(import_path, "r") as f:
                imported = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Error importing settings: {e}")
            raise ConfigError(f"Cannot read config file {import_path}: {e}") from e

        if not isinstance(imported, dict):
            raise ConfigError(f"Config file {import_path} must hold a JSON object")
        version = str(imported.get("metadata", {}).get("version", SCHEMA_VERSION))
        if version.split(".")[0] != SCHEMA_VERSION.split(".")[0]:
            raise ConfigError(f"Config schema version {version} is not supported (expected {SCHEMA_VERSION})")
        sections = imported.get("settings", imported)
        for section in ("general", self.command):
            values = sections.get(section, {})
            if not isinstance(values, dict):
                raise ConfigError(f"Section '{section}' of {import_path} must be an object")
            for key, value in values.items():
                self.set(key, value)
        logger.info(f"Settings imported from: {import_path}")


def parse_complex(text: Any) -> complex:
    """Parse a complex number written as ``1+0.5j`` (``i`` is accepted for ``j``)."""
    if isinstance(text, (int, float, complex)) and not isinstance(text, bool):
        return complex(text)
    try:
        return complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError as e:
        raise ConfigError(f"'{text}' is not a complex number") from e
