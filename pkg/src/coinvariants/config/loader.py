# src/coinvariants/config/loader.py
"""
Config loader utilities.

This module only knows how to find and load `settings.yaml`, either from the
package's `config/` directory or from a path given in an environment variable.
Consumers read values with their own defaults, e.g.
``int(get_settings().get("series_coefficients", 12))``.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Dict

import yaml


SETTINGS_ENV_VAR = "COINVARIANTS_SETTINGS_FILE"


# ---------------------------------------------------------------------------
# path resolution utilities
# ---------------------------------------------------------------------------

def _package_config_dir() -> Path:
    """
    Return the default path to the config directory inside the package.
    This file lives at: src/coinvariants/config/loader.py
    """
    return Path(__file__).resolve().parent


def _resolve_yaml_path(filename: str, env_var: str | None = None) -> Path:
    """
    Determine the YAML path according to priority:

    1. If an environment variable is provided and set, use that path.
    2. Otherwise, fall back to the package's default config dir.
    """
    if env_var:
        env_value = os.getenv(env_var)
        if env_value:
            return Path(env_value).expanduser().resolve()
    return _package_config_dir() / filename


def _load_yaml(path: Path) -> Dict[str, Any]:
    """
    Load a YAML file from the given path.
    Raises FileNotFoundError if the file is missing.
    """
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")
    with path.open("r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


# ---------------------------------------------------------------------------
# public config loaders
# ---------------------------------------------------------------------------

def load_settings_yaml() -> Dict[str, Any]:
    """
    Load `settings.yaml`, using COINVARIANTS_SETTINGS_FILE if set.
    """
    path = _resolve_yaml_path("settings.yaml", env_var=SETTINGS_ENV_VAR)
    return _load_yaml(path)


def get_settings() -> Dict[str, Any]:
    """
    Return settings from settings.yaml.
    """
    return load_settings_yaml()


def get_section(name: str) -> Dict[str, Any]:
    """
    Return one nested section of the settings (``{}`` when absent).
    """
    section = get_settings().get(name) or {}
    if not isinstance(section, dict):
        raise ValueError(f"settings section '{name}' must be a mapping, got {type(section).__name__}")
    return section
