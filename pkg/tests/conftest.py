"""Shared fixtures: isolated data directory, default settings, spec files."""

import json

import pytest

from compop import paths
from compop.services.settings import reset_settings


@pytest.fixture(autouse=True)
def _fresh_state(tmp_path, monkeypatch):
    """Point the data directory at tmp_path and reset settings to defaults."""
    monkeypatch.setenv("COMPOP_HOME", str(tmp_path))
    paths.init(str(tmp_path))
    reset_settings()
    yield
    reset_settings()
    paths._data_dir = None


@pytest.fixture
def write_spec(tmp_path):
    """Write a JSON spec under tmp_path and return its path as a string."""

    def _write(name: str, data: dict) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return _write


# ---------------------------------------------------------------------------
# Spec payloads reused across CLI and API tests
# ---------------------------------------------------------------------------

DIAGONAL_SPEC = {"c0": 1, "psi": [["1", 1.0, 0.0]]}
SEVEN_QUARTERS_SPEC = {"c0": 0, "c1": [1.75, 0.0], "terms": [[2, -0.25, 0.0]]}
KAPPA_LOW_SPEC = {"c0": 0, "c1": [1.0, 0.0], "terms": [[2, -0.7, 0.0]]}
UNDECIDABLE_SPEC = {"c0": 0, "psi": [["1", 1.0, 0.0], ["2", -0.3, 0.0], ["4", 0.3, 0.0]]}
EDGE_D1_SPEC = {"c0": 0, "c1": [1.0, 0.0], "terms": [[2, -0.5, 0.0]]}
RESTRICTED_SPEC = {"kind": "restricted", "c1": [1.0, 0.0], "truncation": 16}
HALF_DISC_MAP = {"taylor": [[0.0, 0.0], [0.5, 0.0]]}
