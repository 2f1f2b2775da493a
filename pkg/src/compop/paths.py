"""Path resolution for settings and run outputs.

The data directory is ``$COMPOP_HOME`` when set, otherwise ``./data``.
"""

import os

# Module-level cache
_data_dir: str | None = None


def init(base: str | None = None) -> None:
    """Resolve the data directory; ``base`` overrides the environment."""
    global _data_dir

    if base is not None:
        _data_dir = base
    else:
        _data_dir = os.environ.get("COMPOP_HOME") or "data"


def get_data_dir() -> str:
    if _data_dir is None:
        raise RuntimeError("paths.init() not called")
    return _data_dir


def get_settings_path() -> str:
    """Return path to settings.json file."""
    return os.path.join(get_data_dir(), "settings.json")


def get_output_dir() -> str:
    """Return the default directory for CSV/JSON run outputs."""
    return os.path.join(get_data_dir(), "runs")
