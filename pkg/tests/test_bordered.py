"""
Test CPA^-, CPD^- and their pairing along a vertical line
"""

import math

import pytest

from app.core.exceptions import InvalidInputError
from app.services import bordered
from app.services.bordered import (
    PartialGenerator,
    PartialGrid,
    SliceSide,
    bigrade_partial,
    cpa_act,
    cpa_module_suite,
    cpd_basis,
    cpd_module_suite,
    half_strip_a,
    join_generators,
    paired_generators,
    pairing_lot2,
    slice_grid,
    split_generator,
)
from app.services.gridcomplex import GridDiagram, bigrade_generator, default_window
from app.services.strands import idempotent, triple


def test_partial_generator_rows_distinct():
    with pytest.raises(InvalidInputError):
        PartialGenerator(1, (2, 2))


def test_cut_out_of_range(grid3: GridDiagram):
    with pytest.raises(InvalidInputError):
        PartialGrid(grid3, SliceSide.A, 4)


def test_split_and_join(grid3: GridDiagram):
    for x in grid3.generators():
        a, d = split_generator(x, 1)
        assert a.columns == range(1, 2)
        assert d.columns == range(2, 4)
        assert join_generators(a, d) == x


def test_join_rejects_shared_row():
    assert join_generators(PartialGenerator(1, (1,)), PartialGenerator(2, (1, 2))) is None


@pytest.mark.parametrize("k", [1, 2])
def test_paired_generators_count(grid3: GridDiagram, k: int):
    left, right = slice_grid(grid3, k)
    assert len(paired_generators(left, right)) == math.factorial(3)


@pytest.mark.parametrize("k", [1, 2])
def test_bigrades_add_up(grid3: GridDiagram, k: int):
    left, right = slice_grid(grid3, k)
    for x in grid3.generators():
        a, d = split_generator(x, k)
        assert bigrade_partial(left, a) + bigrade_partial(right, d) == bigrade_generator(grid3, x)


def test_idempotent_acts_by_identity(grid3: GridDiagram):
    left, _ = slice_grid(grid3, 1)
    x = PartialGenerator(1, (2,))
    (term,) = idempotent(3, {2}).keys()
    assert cpa_act(left, x, term) == (x, idempotent(3, {2}).coefficient(term))
    (other,) = idempotent(3, {1}).keys()
    assert cpa_act(left, x, other) is None


def test_half_strip_needs_upward_move(grid3: GridDiagram):
    left, _ = slice_grid(grid3, 1)
    x, y = PartialGenerator(1, (1,)), PartialGenerator(1, (2,))
    with pytest.raises(InvalidInputError):
        half_strip_a(left, y, x, 2, 1)


def test_chord_action_through_half_strip(grid3: GridDiagram):
    # X of row 1 sits in column 1, so the strip from (1,1) up to row 2 is blocked
    left, _ = slice_grid(grid3, 1)
    assert cpa_act(left, PartialGenerator(1, (1,)), triple(3, {1: 2})) is None


def test_cpd_basis_idempotents_match(grid3: GridDiagram):
    _, right = slice_grid(grid3, 1)
    for term in cpd_basis(right):
        assert len(term.generator.rows) == 2


@pytest.mark.parametrize("k", [1, 2])
def test_pairing(grid3: GridDiagram, k: int):
    report = pairing_lot2(grid3, k)
    assert report.passed, report.failures


@pytest.mark.parametrize("k", [1, 2])
def test_cpa_module(grid3: GridDiagram, k: int):
    report = cpa_module_suite(grid3, k)
    assert report.passed, report.failures


@pytest.mark.parametrize("k", [1, 2])
def test_cpd_module(grid3: GridDiagram, k: int):
    report = cpd_module_suite(grid3, k)
    assert report.passed, report.failures


def test_pairing_compares_homology_on_a_wide_window(grid3: GridDiagram, monkeypatch: pytest.MonkeyPatch):
    report = pairing_lot2(grid3, 1)
    assert report.passed, report.failures
    monkeypatch.setattr(bordered, "comparison_window", lambda grid: default_window(grid))
    narrow = pairing_lot2(grid3, 1)
    assert not narrow.passed
    assert [f.case for f in narrow.failures] == ["window size"]
