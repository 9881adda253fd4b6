"""
Pytest configuration and fixtures
"""

import json
from collections.abc import AsyncGenerator
from pathlib import Path

import pytest
from click.testing import CliRunner
from httpx import ASGITransport, AsyncClient

from app.main import app
from app.services.gridcomplex import GridDiagram


@pytest.fixture(scope="function")
async def client() -> AsyncGenerator[AsyncClient]:
    """HTTP client bound to the application, no network"""
    async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
        yield ac


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def grid2() -> GridDiagram:
    """X and O share the single cell"""
    return GridDiagram(2, (1,), (1,))


@pytest.fixture
def grid3() -> GridDiagram:
    return GridDiagram(3, (1, 2), (2, 1))


@pytest.fixture
def grid4() -> GridDiagram:
    return GridDiagram(4, (1, 2, 3), (2, 3, 1))


def write_grid(path: Path, grid: GridDiagram) -> Path:
    path.write_text(json.dumps(grid.to_mapping()), encoding="utf-8")
    return path


@pytest.fixture
def grid2_file(tmp_path: Path, grid2: GridDiagram) -> Path:
    return write_grid(tmp_path / "grid2.json", grid2)


@pytest.fixture
def grid3_file(tmp_path: Path, grid3: GridDiagram) -> Path:
    return write_grid(tmp_path / "grid3.json", grid3)
