"""
Test the homology tables and their encodings
"""

import json

import pytest

from app.core.config import settings
from app.core.exceptions import BoundExceededError
from app.services import homology
from app.services.gradings import Bigrade
from app.services.gridcomplex import GridDiagram


def test_grid2_table(grid2: GridDiagram):
    table = homology.homology_table(grid2)
    assert len(table.rows) == 8
    assert all(row.dimension == 1 for row in table.rows)
    assert (table.rows[-1].alexander, table.rows[-1].maslov) == (0, 0)


def test_explicit_window(grid2: GridDiagram):
    table = homology.homology_table(grid2, [Bigrade(0, 0), Bigrade(5, 5), Bigrade(0, 0)])
    assert [(r.alexander, r.maslov, r.dimension) for r in table.rows] == [(0, 0, 1), (5, 5, 0)]


def test_size_bound():
    n = settings.MAX_N + 1
    cells = tuple(range(1, n))
    with pytest.raises(BoundExceededError):
        homology.homology_table(GridDiagram(n, cells, cells))


def test_encodings_agree(grid2: GridDiagram):
    table = homology.homology_table(grid2)
    assert homology.parse_tsv(homology.to_tsv(table)) == table
    payload = json.loads(homology.to_json(table))
    assert payload["rows"] == [row.model_dump() for row in table.rows]
    assert homology.to_tsv(table).splitlines()[0] == "alexander\tmaslov\tdimension"


def test_text_skips_zero_rows():
    table = homology.from_rows([(0, 0, 1), (1, 1, 0)])
    assert homology.to_text(table) == "(A=0, mu=0): 1"
    assert homology.to_text(homology.from_rows([(1, 1, 0)])) == "H(CP^-) vanishes on the window"
