"""
Configuration management for Saturation Lab.
Defaults come from the environment (.env is honoured); a TOML file named by
SATLAB_CONFIG, or passed explicitly, overrides them at startup.
"""

import os
import logging
from pathlib import Path
from typing import List, Optional, Any

from dotenv import load_dotenv
import toml

from .errors import ConfigError

load_dotenv()

DEFAULT_SEED = 1729
DEFAULT_BUDGET = 5_000_000

# Lattice cap: no graph may have more than 2^24 tuple cells.
MAX_CELLS = 1 << 24

# Inclusion-exclusion over subsets of S_d is only offered up to this d.
Q_FORMULA_MAX_D = 4


def _bool_from_value(v: Any) -> bool:
    if isinstance(v, bool):
        return v
    return str(v).strip().lower() in ("true", "1", "yes")


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name, "")
    try:
        return int(raw) if raw.strip() else default
    except ValueError:
        logging.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


def _int_setting(key: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None


class Config:
    """
    Application configuration.
    Environment first (SATLAB_* variables), then TOML overrides via set_runtime_config.
    """

    WORKERS: int = _int_from_env("SATLAB_WORKERS", 1)
    BUDGET: int = _int_from_env("SATLAB_BUDGET", DEFAULT_BUDGET)
    SEED: int = _int_from_env("SATLAB_SEED", DEFAULT_SEED)
    LOG_LEVEL: str = (os.getenv("SATLAB_LOG_LEVEL", "WARNING") or "WARNING").upper()
    SYMMETRY: bool = _bool_from_value(os.getenv("SATLAB_SYMMETRY", "false"))
    CONFIG_PATH: Optional[str] = os.getenv("SATLAB_CONFIG") or None

    @classmethod
    def set_runtime_config(cls, config: dict) -> None:
        """
        Overwrite config from a parsed TOML document.
        Nothing is applied when any value has the wrong type.

        Raises:
            ConfigError: a numeric setting is not an integer
        """
        updates = {}
        for key, attr in (("workers", "WORKERS"), ("budget", "BUDGET"), ("seed", "SEED")):
            if key in config:
                updates[attr] = _int_setting(key, config[key])
        if "log_level" in config:
            updates["LOG_LEVEL"] = (str(config["log_level"] or "WARNING")).upper()
        if "symmetry" in config:
            updates["SYMMETRY"] = _bool_from_value(config["symmetry"])
        for attr, value in updates.items():
            setattr(cls, attr, value)

    @classmethod
    def load_file(cls, path: Optional[str] = None) -> None:
        """
        Load a TOML config file and apply it.

        Args:
            path: File to read; falls back to SATLAB_CONFIG. Nothing happens if neither is set.
        """
        path = path or cls.CONFIG_PATH
        if not path:
            return
        config_file = Path(path)
        if not config_file.is_file():
            logging.warning(f"Config file '{path}' not found, using defaults")
            return
        try:
            document = toml.loads(config_file.read_text(encoding="utf-8"))
        except (toml.TomlDecodeError, UnicodeDecodeError) as e:
            raise ConfigError(f"cannot parse config file '{path}': {e}") from e
        cls.set_runtime_config(document)

    @classmethod
    def resolve_workers(cls, workers: Optional[int] = None) -> int:
        """Worker count to use; 0 means one per CPU."""
        value = cls.WORKERS if workers is None else workers
        if value <= 0:
            return os.cpu_count() or 1
        return value

    @classmethod
    def validate(cls) -> List[str]:
        """
        Validate configuration and return list of errors.
        Returns empty list if configuration is valid.
        """
        errors = []

        if cls.WORKERS < 0:
            errors.append("workers cannot be negative")

        if cls.BUDGET < 1:
            errors.append("budget must be at least 1")

        if cls.SEED < 0:
            errors.append("seed cannot be negative")

        if not isinstance(getattr(logging, cls.LOG_LEVEL, None), int):
            errors.append(f"unknown log level '{cls.LOG_LEVEL}'")

        return errors

    @classmethod
    def setup_logging(cls) -> None:
        """Configure logging based on settings. Logs go to stderr; stdout carries artifacts."""
        log_level = getattr(logging, cls.LOG_LEVEL, logging.WARNING)

        logging.basicConfig(
            level=log_level,
            format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
            handlers=[logging.StreamHandler()]
        )
