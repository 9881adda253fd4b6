"""
Test planar grid diagrams, CP^- and its homology
"""

import pytest

from app.core.exceptions import InvalidInputError
from app.services.coeffs import Polynomial
from app.services.gradings import Bigrade
from app.services.gridcomplex import (
    EXAMPLE_SOURCE,
    EXAMPLE_TARGET,
    GridDiagram,
    PlanarGenerator,
    all_grids,
    bigrade_generator,
    c_m_homology,
    cp_diff,
    comparison_window,
    cp_homology,
    default_window,
    doubled_points,
    empty_rectangles,
    grid_suite,
    interleaving_count,
    nilcox_generator,
    nilcoxeter_grid_iso,
    rectangle_diff,
)


def test_grid_validation():
    with pytest.raises(InvalidInputError):
        GridDiagram(0, (), ())
    with pytest.raises(InvalidInputError):
        GridDiagram(3, (1, 1), (1, 2))
    with pytest.raises(InvalidInputError):
        GridDiagram.from_mapping({"n": 3, "x": [1, 2]})


def test_mapping_round_trip(grid3: GridDiagram):
    assert GridDiagram.from_mapping(grid3.to_mapping()) == grid3
    assert grid3.x_markings == [(1, 1), (2, 2)]
    assert grid3.o_markings == [(2, 1), (1, 2)]


def test_generators(grid3: GridDiagram):
    assert len(grid3.generators()) == 6
    assert PlanarGenerator((2, 3, 1)).points == frozenset({(2, 1), (3, 2), (1, 3)})
    with pytest.raises(InvalidInputError):
        PlanarGenerator((1, 1))


def test_all_grids_counts():
    assert len(list(all_grids(1))) == 1
    assert len(list(all_grids(3))) == 4


def test_interleaving_count():
    points = doubled_points([(1, 1), (2, 2), (3, 3)])
    assert interleaving_count(points, points) == 3


def test_grid2_bigrades_and_differential(grid2: GridDiagram):
    low, high = PlanarGenerator((1, 2)), PlanarGenerator((2, 1))
    assert bigrade_generator(grid2, low) == Bigrade(0, -1)
    assert bigrade_generator(grid2, high) == Bigrade(0, 0)
    # the only rectangles cover the doubly marked cell
    assert cp_diff(grid2, low).is_zero
    assert cp_diff(grid2, high).is_zero


def test_grid2_homology_is_free(grid2: GridDiagram):
    window = default_window(grid2, max_u=3)
    assert len(window) == 8
    homology = cp_homology(grid2, window)
    assert all(dim == 1 for dim in homology.values())
    assert homology[Bigrade(-2, -4)] == 1


def test_comparison_window_reaches_the_minimum(grid2: GridDiagram):
    trivial = GridDiagram(1, (), ())
    assert len(default_window(trivial)) == 1
    window = comparison_window(trivial, max_u=0, minimum=12)
    assert len(window) == 12
    assert window[0] == Bigrade(-11, -22)
    assert set(default_window(grid2, max_u=3)) <= set(comparison_window(grid2))
    assert len(comparison_window(grid2)) >= 12


@pytest.mark.parametrize("grid", list(all_grids(3)), ids=str)
def test_comparison_window_on_small_grids(grid: GridDiagram):
    assert len(comparison_window(grid)) >= 12


def test_trivial_grid_homology():
    grid = GridDiagram(1, (), ())
    assert cp_homology(grid, [Bigrade(0, 0), Bigrade(-1, -2)]) == {Bigrade(0, 0): 1, Bigrade(-1, -2): 0}


def test_rectangle_weights_use_o_rows(grid3: GridDiagram):
    for x in grid3.generators():
        for y, weight in cp_diff(grid3, x).items():
            for monomial in weight.monomials:
                assert all(index in (1, 2) for index, _ in monomial.exponents)
            assert weight != Polynomial()


def test_example_rectangle():
    source, target = nilcox_generator(EXAMPLE_SOURCE), nilcox_generator(EXAMPLE_TARGET)
    assert len(empty_rectangles(source, target)) == 1
    assert target in rectangle_diff(source)


def test_rectangle_complex_is_acyclic():
    assert c_m_homology(1) == [1]
    assert c_m_homology(3) == [0, 0, 0, 0]


@pytest.mark.parametrize("grid", list(all_grids(3)), ids=str)
def test_grid_suite_small_grids(grid: GridDiagram):
    report = grid_suite(grid)
    assert report.passed, report.failures


def test_grid_suite_grid4(grid4: GridDiagram):
    report = grid_suite(grid4)
    assert report.passed, report.failures


@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
def test_nilcoxeter_grid_iso(m: int):
    report = nilcoxeter_grid_iso(m)
    assert report.passed, report.failures
