"""Settings service: JSON-persisted lab configuration."""

import json
import os
import tempfile

from pydantic import BaseModel

from compop import paths

# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------


class LabSettings(BaseModel):
    """Numerical defaults shared by the CLI and the HTTP service."""

    version: int = 1
    row_tolerance: float = 1e-12
    max_columns: int = 4000
    max_rows: int = 60000
    independence_bound: int = 10**9
    preimage_budget: int = 4096
    embedding_constant: float = 1.0
    zeta_tolerance: float = 1e-12
    zeta_max_terms: int = 10**8
    mc_samples: int = 10**6
    mc_seed: int = 0
    mc_block_size: int = 2**18
    workers: int = 1
    newton_max_steps: int = 200
    gram_condition_floor: float = 1e-12


class SettingsUpdate(BaseModel):
    """Partial settings update; every field optional."""

    model_config = {"extra": "ignore"}

    row_tolerance: float | None = None
    max_columns: int | None = None
    max_rows: int | None = None
    independence_bound: int | None = None
    preimage_budget: int | None = None
    embedding_constant: float | None = None
    zeta_tolerance: float | None = None
    zeta_max_terms: int | None = None
    mc_samples: int | None = None
    mc_seed: int | None = None
    mc_block_size: int | None = None
    workers: int | None = None
    newton_max_steps: int | None = None
    gram_condition_floor: float | None = None


# ---------------------------------------------------------------------------
# Module-level singleton
# ---------------------------------------------------------------------------

_settings: LabSettings = LabSettings()
_settings_path: str | None = None


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


def load_settings(path: str | None = None) -> None:
    """Load settings from JSON file, falling back to defaults."""
    global _settings, _settings_path
    if path is not None:
        _settings_path = path
    else:
        _settings_path = paths.get_settings_path()

    if os.path.isfile(_settings_path):
        with open(_settings_path, encoding="utf-8") as f:
            data = json.load(f)
        _settings = LabSettings(**data)
        validate_settings(_settings)
    else:
        _settings = LabSettings()


def save_settings() -> None:
    """Persist current settings to disk atomically."""
    if _settings_path is None:
        raise RuntimeError("load_settings() not called")
    dir_name = os.path.dirname(os.path.abspath(_settings_path))
    os.makedirs(dir_name, exist_ok=True)
    fd, temp_path = tempfile.mkstemp(suffix=".json.tmp", dir=dir_name)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            json.dump(_settings.model_dump(), f, indent=2)
        os.replace(temp_path, os.path.abspath(_settings_path))
    except Exception:
        try:
            os.unlink(temp_path)
        except OSError:
            pass
        raise


def get_settings() -> LabSettings:
    return _settings


def reset_settings() -> None:
    """Back to defaults, detached from any file."""
    global _settings, _settings_path
    _settings = LabSettings()
    _settings_path = None


def update_settings(updates: dict) -> LabSettings:
    """Merge partial updates into current settings, validate, and save."""
    global _settings
    current = _settings.model_dump()
    current.update({k: v for k, v in updates.items() if v is not None})
    new_settings = LabSettings(**current)
    validate_settings(new_settings)

    _settings = new_settings
    if _settings_path is not None:
        save_settings()
    return _settings


def validate_settings(s: LabSettings) -> None:
    """Reject tolerances and caps that would make every run meaningless."""
    for name in ("row_tolerance", "zeta_tolerance", "gram_condition_floor"):
        value = getattr(s, name)
        if not 0 < value < 1:
            raise ValueError(f"{name} must lie in (0, 1), got {value}")
    for name in (
        "max_columns",
        "max_rows",
        "preimage_budget",
        "mc_block_size",
        "workers",
        "newton_max_steps",
    ):
        if getattr(s, name) < 1:
            raise ValueError(f"{name} must be at least 1")
    if s.independence_bound < 2:
        raise ValueError("independence_bound must be at least 2")
    if s.embedding_constant <= 0:
        raise ValueError("embedding_constant must be positive")
    if s.zeta_max_terms < 16:
        raise ValueError("zeta_max_terms must be at least 16")
    if s.mc_samples < 1:
        raise ValueError("mc_samples must be positive")
