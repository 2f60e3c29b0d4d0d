"""Configuration loading, resolution, and persistence.

Config precedence (highest wins):
  CLI flags → env vars → project .toric-dh.json → global config → defaults
"""

import json
import os
import sys
from pathlib import Path
from typing import Any, Optional

DEFAULT_CONFIG_PATH = Path.home() / ".config" / "toric-dh" / "config.json"
PROJECT_CONFIG_NAME = ".toric-dh.json"

MAX_SUPPORTED_DIM = 4
FORMATS = ("json", "table")

DEFAULT_CONFIG: dict[str, Any] = {
    "max_dim": MAX_SUPPORTED_DIM,
    "search_radius": 3,
    "workers": 1,
    "format": "json",
    "indent": 2,
}

# Inclusive bounds for the integer keys.
INT_KEYS: dict[str, tuple[int, int]] = {
    "max_dim": (1, MAX_SUPPORTED_DIM),
    "search_radius": (1, 10),
    "workers": (1, 64),
    "indent": (0, 8),
}

ENV_MAX_DIM = "TORIC_DH_MAX_DIM"
ENV_SEARCH_RADIUS = "TORIC_DH_SEARCH_RADIUS"
ENV_WORKERS = "TORIC_DH_WORKERS"
ENV_FORMAT = "TORIC_DH_FORMAT"

_ENV_KEYS = {
    ENV_MAX_DIM: "max_dim",
    ENV_SEARCH_RADIUS: "search_radius",
    ENV_WORKERS: "workers",
    ENV_FORMAT: "format",
}


class ConfigError(ValueError):
    """A config value has the wrong type or is out of range."""


def load_json(path: Path) -> dict:
    if path.exists():
        try:
            return json.loads(path.read_text())
        except json.JSONDecodeError:
            print(f"Warning: {path} contains invalid JSON, ignoring.", file=sys.stderr)
            return {}
        except OSError:
            return {}
    return {}


def find_project_config(start: Path) -> Optional[Path]:
    """Walk up from *start* looking for .toric-dh.json, stopping at .git."""
    current = start.resolve()
    for parent in [current, *current.parents]:
        candidate = parent / PROJECT_CONFIG_NAME
        if candidate.exists():
            return candidate
        if (parent / ".git").exists():
            break
    return None


def coerce_value(key: str, value: Any) -> Any:
    """Validate *value* for *key*, converting integer strings."""
    if key not in DEFAULT_CONFIG:
        raise ConfigError(f"Unknown key '{key}'. Valid: {', '.join(sorted(DEFAULT_CONFIG))}")
    if key in INT_KEYS:
        if isinstance(value, bool):
            raise ConfigError(f"'{key}' must be an integer, got {value!r}.")
        try:
            number = int(value)
        except (TypeError, ValueError):
            raise ConfigError(f"'{key}' must be an integer, got {value!r}.") from None
        lo, hi = INT_KEYS[key]
        if not lo <= number <= hi:
            raise ConfigError(f"'{key}' must be between {lo} and {hi}, got {number}.")
        return number
    if key == "format" and value not in FORMATS:
        raise ConfigError(f"'format' must be one of {', '.join(FORMATS)}, got {value!r}.")
    return value


def resolve_config(
    project_dir: Path | None = None,
    cli_overrides: dict | None = None,
) -> dict:
    """Merge config: defaults < global < project < env < CLI.

    Raises ConfigError when a layer holds an invalid value for a known key;
    unknown keys in files are ignored.
    """
    cfg = dict(DEFAULT_CONFIG)

    def merge(layer: dict) -> None:
        for k, v in layer.items():
            if v is not None and k in DEFAULT_CONFIG:
                cfg[k] = coerce_value(k, v)

    merge(load_json(DEFAULT_CONFIG_PATH))

    anchor = (project_dir or Path.cwd()).resolve()
    proj_path = find_project_config(anchor)
    if proj_path:
        merge(load_json(proj_path))

    merge({key: os.environ[var] for var, key in _ENV_KEYS.items() if os.environ.get(var)})

    if cli_overrides:
        merge(cli_overrides)

    return cfg


def save_config(path: Path, data: dict):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2) + "\n")
