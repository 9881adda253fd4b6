"""
Test double cuts, quadrant generators and cut-bounded regions
"""

import pytest

from app.core.exceptions import InvalidInputError
from app.services.coeffs import Polynomial
from app.services.cornered.quadrants import (
    DoubleCut,
    Quadrant,
    QuadrantGenerator,
    quadrant_rectangles,
    region_weight,
    scaled_cells,
    scaled_points,
)
from app.services.gridcomplex import GridDiagram, cp_diff


def test_cut_bounds(grid3: GridDiagram):
    DoubleCut(grid3, 0, 3)
    with pytest.raises(InvalidInputError):
        DoubleCut(grid3, 4, 1)
    with pytest.raises(InvalidInputError):
        DoubleCut(grid3, 1, -1)


def test_quadrant_sides():
    assert Quadrant.AA.left and Quadrant.AA.lower
    assert Quadrant.AD.left and not Quadrant.AD.lower
    assert not Quadrant.DA.left and Quadrant.DA.lower
    assert not (Quadrant.DD.left or Quadrant.DD.lower)


def test_generator_shares_nothing():
    with pytest.raises(InvalidInputError):
        QuadrantGenerator.of([(1, 1), (1, 2)])
    with pytest.raises(InvalidInputError):
        QuadrantGenerator.of([(1, 2), (3, 2)])
    x = QuadrantGenerator.of([(3, 1), (1, 2)])
    assert x.points == ((1, 2), (3, 1))
    assert x.row_of(3) == 1
    assert x.moved((3, 1), (2, 1)) == QuadrantGenerator.of([(1, 2), (2, 1)])
    assert str(x) == "{(1,2) (3,1)}"


def test_markings_by_quadrant(grid3: GridDiagram):
    cut = DoubleCut(grid3, 1, 1)
    assert cut.x_markings(Quadrant.AA) == [(1, 1)]
    assert cut.x_markings(Quadrant.DD) == [(2, 2)]
    assert cut.o_markings(Quadrant.AA) == []
    assert cut.o_markings(Quadrant.DA) == [(2, 1)]
    assert cut.o_markings(Quadrant.AD) == [(1, 2)]


@pytest.mark.parametrize(
    "quadrant, count",
    [(Quadrant.AA, 2), (Quadrant.AD, 3), (Quadrant.DA, 3), (Quadrant.DD, 7)],
)
def test_generator_counts(grid3: GridDiagram, quadrant: Quadrant, count: int):
    assert len(DoubleCut(grid3, 1, 1).generators(quadrant)) == count


def test_local_coordinates(grid4: GridDiagram):
    cut = DoubleCut(grid4, 1, 2)
    assert cut.local_column(3) == 2
    assert cut.local_row(4) == 2
    assert str(cut) == "N=4 k=1 k'=2"


def test_region_weight(grid3: GridDiagram):
    cut = DoubleCut(grid3, 1, 1)
    # the X at (1,1) blocks the region from (1,1) to both cut lines
    assert region_weight(cut, 1, 1, None, None) is None
    assert region_weight(cut, None, 1, 3, None) == Polynomial.u(1)
    assert region_weight(cut, None, 1, 3, None, blockers=[(2, 1)]) == Polynomial.u(1)
    assert region_weight(cut, 2, 1, 2, None) is None


def test_full_quadrant_rectangles_match_grid(grid3: GridDiagram):
    cut = DoubleCut(grid3, 0, 0)
    for x in grid3.generators():
        local = {frozenset(y.points): w for y, w in quadrant_rectangles(cut, QuadrantGenerator.of(x.points))}
        assert local == {y.points: w for y, w in cp_diff(grid3, x).items()}


def test_scaling():
    assert scaled_points([(1, 2)]) == [(4, 8)]
    assert scaled_cells([(1, 2)]) == [(6, 10)]
