"""Tests for settings service and API."""

import json

import pytest
import pytest_asyncio
from httpx import ASGITransport, AsyncClient

from compop.main import app
from compop.services.settings import (
    LabSettings,
    get_settings,
    load_settings,
    update_settings,
    validate_settings,
)


@pytest.fixture(autouse=True)
def _fresh_settings(tmp_path):
    """Reset settings to defaults using a temp file before each test."""
    load_settings(str(tmp_path / "settings.json"))


# ---------------------------------------------------------------------------
# Service tests
# ---------------------------------------------------------------------------


class TestSettingsService:
    def test_defaults(self):
        s = get_settings()
        assert s.row_tolerance == 1e-12
        assert s.max_columns == 4000
        assert s.independence_bound == 10**9
        assert s.mc_seed == 0
        assert s.workers == 1
        assert s.version == 1

    def test_save_reload(self, tmp_path):
        path = tmp_path / "settings.json"
        load_settings(str(path))
        update_settings({"row_tolerance": 1e-10, "mc_samples": 20_000})
        load_settings(str(path))
        s = get_settings()
        assert s.row_tolerance == 1e-10
        assert s.mc_samples == 20_000

    def test_partial_update(self):
        update_settings({"workers": 4})
        s = get_settings()
        assert s.workers == 4
        assert s.max_rows == 60000  # unchanged

    def test_none_values_ignored(self):
        update_settings({"workers": None})
        assert get_settings().workers == 1

    def test_missing_file_loads_defaults(self, tmp_path):
        load_settings(str(tmp_path / "nonexistent.json"))
        assert get_settings().max_columns == 4000

    def test_file_without_version(self, tmp_path):
        path = tmp_path / "settings.json"
        path.write_text(json.dumps({"mc_seed": 7}))
        load_settings(str(path))
        assert get_settings().mc_seed == 7
        assert get_settings().version == 1

    def test_invalid_file_rejected(self, tmp_path):
        path = tmp_path / "settings.json"
        path.write_text(json.dumps({"row_tolerance": 0.0}))
        with pytest.raises(ValueError, match="row_tolerance"):
            load_settings(str(path))


class TestValidation:
    def test_defaults_valid(self):
        validate_settings(LabSettings())

    @pytest.mark.parametrize("value", [0.0, -1e-12, 1.0, 2.0])
    def test_tolerance_range(self, value):
        with pytest.raises(ValueError, match="zeta_tolerance"):
            validate_settings(LabSettings(zeta_tolerance=value))

    def test_caps_positive(self):
        with pytest.raises(ValueError, match="max_columns"):
            validate_settings(LabSettings(max_columns=0))

    def test_independence_bound(self):
        with pytest.raises(ValueError, match="independence_bound"):
            validate_settings(LabSettings(independence_bound=1))

    def test_failed_update_keeps_previous(self):
        with pytest.raises(ValueError):
            update_settings({"workers": 0})
        assert get_settings().workers == 1


# ---------------------------------------------------------------------------
# API tests
# ---------------------------------------------------------------------------


@pytest_asyncio.fixture
async def client():
    transport = ASGITransport(app=app)
    async with AsyncClient(transport=transport, base_url="http://test") as c:
        yield c


@pytest.mark.asyncio
async def test_get_settings_defaults(client):
    resp = await client.get("/settings")
    assert resp.status_code == 200
    data = resp.json()
    assert data["row_tolerance"] == 1e-12
    assert data["mc_samples"] == 10**6


@pytest.mark.asyncio
async def test_put_settings_partial(client):
    resp = await client.put("/settings", json={"mc_seed": 42})
    assert resp.status_code == 200
    data = resp.json()
    assert data["mc_seed"] == 42
    assert data["max_columns"] == 4000  # unchanged


@pytest.mark.asyncio
async def test_put_settings_invalid_value(client):
    resp = await client.put("/settings", json={"row_tolerance": 2.0})
    assert resp.status_code == 422
    body = resp.json()
    assert body["code"] == "VALIDATION_ERROR"
    assert "row_tolerance" in body["error"]


@pytest.mark.asyncio
async def test_put_settings_invalid_type_422(client):
    resp = await client.put("/settings", json={"workers": "many"})
    assert resp.status_code == 422


@pytest.mark.asyncio
async def test_put_settings_unknown_field_ignored(client):
    resp = await client.put("/settings", json={"workers": 2, "bogus_field": 999})
    assert resp.status_code == 200
    assert resp.json()["workers"] == 2
    assert "bogus_field" not in resp.json()
