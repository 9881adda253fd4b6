"""
Test matched intervals, matched circles and the matching algebra
"""

import pytest

from app.core.exceptions import InvalidInputError
from app.services import strands
from app.services.gradings import GradingElement
from app.services.matched import (
    MatchedInterval,
    PointedMatchedCircle,
    Side,
    g_of_z_membership,
    glue_intervals,
    interval_algebra_module_basis,
    matched_suite,
    matching_algebra_basis,
    pushforward,
    refinement_data,
    surgery_components,
    theorem_azed_check,
    torus_interval,
)


def torus_circle() -> PointedMatchedCircle:
    return PointedMatchedCircle.from_pairs(4, [(1, 3), (2, 4)])


def test_torus_interval_is_valid():
    z = torus_interval()
    z.validate()
    assert z.genus == 1
    assert z.pairs() == [(1, 3), (2, 4)]
    assert surgery_components(z) == 1


def test_split_pairs_fail_surgery():
    z = MatchedInterval.from_pairs(4, [(1, 2), (3, 4)])
    assert surgery_components(z) == 3
    with pytest.raises(InvalidInputError):
        z.validate()


def test_point_count_must_be_multiple_of_four():
    with pytest.raises(InvalidInputError):
        MatchedInterval.from_pairs(6, [(1, 4), (2, 5), (3, 6)]).validate()


def test_pairs_must_cover_points_once():
    with pytest.raises(InvalidInputError):
        MatchedInterval.from_pairs(4, [(1, 3), (1, 4)])
    with pytest.raises(InvalidInputError):
        PointedMatchedCircle.from_pairs(4, [(1, 3), (2, 4)], split=5)


def test_sections():
    z = torus_circle()
    assert z.sections((1,)) == [(1,), (3,)]
    assert len(z.sections((1, 2))) == 4
    assert z.is_section((1, 2))
    assert not z.is_section((1, 3))


def test_glue_and_halves():
    z = glue_intervals(torus_interval(), torus_interval())
    assert z.points == 8
    assert z.split == 4
    assert surgery_components(z) == 1
    first, second = z.halves()
    assert first == torus_interval()
    assert second == torus_interval()


def test_halves_need_a_split():
    with pytest.raises(InvalidInputError):
        torus_circle().halves()


def test_torus_algebra_one_strand_part():
    basis = matching_algebra_basis(torus_circle())
    sizes = [len(g.moving) + len(g.horizontal) for g in basis]
    assert sizes.count(0) == 1
    assert sizes.count(1) == 8


def test_horizontal_pairs_sum_over_sections():
    for g in matching_algebra_basis(torus_circle()):
        assert len(g.element) == 2 ** len(g.horizontal)


def test_top_module_decorations():
    plain = interval_algebra_module_basis(torus_interval(), Side.TOP, decorated=False)
    decorated = interval_algebra_module_basis(torus_interval(), Side.TOP)
    assert len(decorated) >= len(plain)
    assert all(g.m <= 2 for g in plain)


def test_refinement_data_boundaries():
    z = torus_circle()
    psi = refinement_data(z)
    assert set(psi) == {(), (1,), (2,), (1, 2)}
    assert pushforward(z, psi[(2,)].alpha) == {2: 1, 1: -1}
    assert not pushforward(z, psi[(1,)].alpha)


def test_refinement_data_rejects_bad_base():
    with pytest.raises(InvalidInputError):
        refinement_data(torus_circle(), {0: (), 1: (1, 2), 2: (1, 2)})


def test_identity_lies_in_g_of_z():
    assert g_of_z_membership(torus_circle(), GradingElement.identity(4))
    assert not g_of_z_membership(torus_circle(), GradingElement.identity(3))


def test_matched_suite_torus():
    report = matched_suite(torus_circle())
    assert report.passed, report.failures


def test_azed_torus_pair():
    report = theorem_azed_check(torus_interval(), torus_interval())
    assert report.passed, report.failures


def test_azed_compares_products_across_the_split(monkeypatch):
    monkeypatch.setattr(strands, "tensor_mul", lambda x, y: None)
    report = theorem_azed_check(torus_interval(), torus_interval())
    assert not report.passed
    assert any(f.case.startswith("split(") for f in report.failures)
