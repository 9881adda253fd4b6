"""
Test the verify, homology and render endpoints
"""

import pytest
from httpx import AsyncClient

from app.core.config import settings
from app.models.verify import SuiteName
from app.services import verify
from app.services.report import Report

PREFIX = settings.API_V1_STR


@pytest.mark.asyncio
async def test_list_suites(client: AsyncClient):
    response = await client.get(f"{PREFIX}/verify/suites")
    assert response.status_code == 200
    names = {s["name"] for s in response.json()}
    assert names == {s.value for s in SuiteName}


@pytest.mark.asyncio
async def test_verify_passes(client: AsyncClient):
    response = await client.post(f"{PREFIX}/verify", json={"suite": "nilcoxeter", "max_m": 3})
    assert response.status_code == 200
    data = response.json()
    assert data["passed"] is True
    assert data["failure_count"] == 0
    assert data["params"]["max_m"] == 3


@pytest.mark.asyncio
async def test_verify_bound_exceeded(client: AsyncClient):
    response = await client.post(f"{PREFIX}/verify", json={"suite": "grid", "n": 9})
    assert response.status_code == 422
    assert "exceeds the configured bound" in response.json()["detail"]


@pytest.mark.asyncio
async def test_verify_unknown_suite(client: AsyncClient):
    response = await client.post(f"{PREFIX}/verify", json={"suite": "nope"})
    assert response.status_code == 422


@pytest.mark.asyncio
async def test_failing_report_is_still_200(client: AsyncClient, monkeypatch: pytest.MonkeyPatch):
    def failing(params: verify.Params):
        report = Report(suite="broken")
        report.check("always", False, "forced")
        yield "", report

    monkeypatch.setitem(verify.REGISTRY, SuiteName.AZED, verify.SuiteEntry("broken", failing))
    response = await client.post(f"{PREFIX}/verify", json={"suite": "azed"})
    assert response.status_code == 200
    data = response.json()
    assert data["passed"] is False
    assert data["failures"][0]["replay"].startswith("cornered verify --suite azed")


@pytest.mark.asyncio
async def test_verify_unexpected_error(client: AsyncClient, monkeypatch: pytest.MonkeyPatch):
    def crashing(params: verify.Params):
        raise RuntimeError("boom")

    monkeypatch.setitem(verify.REGISTRY, SuiteName.AZED, verify.SuiteEntry("crash", crashing))
    response = await client.post(f"{PREFIX}/verify", json={"suite": "azed"})
    assert response.status_code == 500
    assert response.json()["detail"] == "Failed to run verification suite"


@pytest.mark.asyncio
async def test_homology_of_trivial_grid(client: AsyncClient):
    response = await client.post(f"{PREFIX}/homology", json={"grid": {"n": 1}})
    assert response.status_code == 200
    rows = response.json()["rows"]
    assert {"alexander": 0, "maslov": 0, "dimension": 1} in rows


@pytest.mark.asyncio
async def test_homology_window(client: AsyncClient):
    payload = {"grid": {"n": 2, "x": [1], "o": [1]}, "window": [{"alexander": 0, "maslov": -1}]}
    response = await client.post(f"{PREFIX}/homology", json=payload)
    assert response.status_code == 200
    assert response.json()["rows"] == [{"alexander": 0, "maslov": -1, "dimension": 1}]


@pytest.mark.asyncio
async def test_homology_bad_grid(client: AsyncClient):
    response = await client.post(f"{PREFIX}/homology", json={"grid": {"n": 3, "x": [1, 1], "o": [1, 2]}})
    assert response.status_code == 422


@pytest.mark.asyncio
async def test_homology_grid_too_large(client: AsyncClient):
    n = settings.MAX_N + 1
    cells = list(range(1, n))
    response = await client.post(f"{PREFIX}/homology", json={"grid": {"n": n, "x": cells, "o": cells}})
    assert response.status_code == 422


@pytest.mark.asyncio
async def test_render_word(client: AsyncClient):
    payload = {"kind": "nilcoxeter", "n": 4, "permutation": [1, 3, 2, 1], "word": True}
    response = await client.post(f"{PREFIX}/render", json=payload)
    assert response.status_code == 200
    assert response.json()["text"].count("X") == 4


@pytest.mark.asyncio
async def test_render_missing_field(client: AsyncClient):
    response = await client.post(f"{PREFIX}/render", json={"kind": "strands"})
    assert response.status_code == 422
    assert "needs `n`" in response.json()["detail"]
