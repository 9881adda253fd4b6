"""
Test the grading groups, gr' and the Alexander/Maslov bigrading
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.core.exceptions import InvalidInputError
from app.services.diagrams import Edge, Slot
from app.services.gradings import (
    U_BIGRADE,
    Bigrade,
    GradingElement,
    GradingVariant,
    MultiplicityClass,
    amalgamate_to_total,
    bigrade_algebra,
    canonical_lift,
    generator,
    gr_prime,
    grading_suite,
    in_index_two_subgroup,
    mult_at,
    tau,
)
from app.services.strands import half_chord_bottom, half_chord_top, triple

N = 3


@st.composite
def elements(draw: st.DrawFn, variant: GradingVariant = GradingVariant.BASE) -> GradingElement:
    free = {
        GradingVariant.BASE: range(1, N),
        GradingVariant.TOP: range(1, N + 1),
        GradingVariant.BOTTOM: range(0, N),
    }[variant]
    segments = tuple(draw(st.integers(-3, 3)) if p in free else 0 for p in range(N + 1))
    return GradingElement(draw(st.integers(-6, 6)), MultiplicityClass(variant, segments))


variants = st.sampled_from(list(GradingVariant))


@given(st.data(), variants)
def test_group_axioms(data: st.DataObject, variant: GradingVariant):
    a, b, c = (data.draw(elements(variant)) for _ in range(3))
    one = GradingElement.identity(N, variant)
    assert (a * b) * c == a * (b * c)
    assert a * one == one * a == a
    assert a * a.inverse() == one == a.inverse() * a


@given(st.data(), variants)
def test_lambda_is_central_and_tau_additive(data: st.DataObject, variant: GradingVariant):
    a, b = data.draw(elements(variant)), data.draw(elements(variant))
    lam = GradingElement.lam(N, variant)
    assert lam * a == a * lam
    assert tau(a * b) == tau(a) + tau(b)
    assert tau(lam) == 0


@given(elements(), elements())
def test_commutator_is_a_power_of_lambda(a: GradingElement, b: GradingElement):
    twice = b.alpha.twice_pairing(a.alpha.delta())
    assert a * b == b * a * GradingElement.lam(N, GradingVariant.BASE, twice)


@given(elements())
def test_negative_power_is_inverse_power(a: GradingElement):
    assert a**-2 == (a**2).inverse()


def test_interval_class():
    alpha = MultiplicityClass.interval(N, 1, 3)
    assert alpha.delta() == (-1, 0, 1)
    assert mult_at(alpha, 1) == Fraction(1, 2)
    assert mult_at(alpha, 2) == 1


def test_base_variant_rejects_end_segments():
    with pytest.raises(InvalidInputError):
        MultiplicityClass(GradingVariant.BASE, (1, 0, 0, 0))
    MultiplicityClass(GradingVariant.BOTTOM, (1, 0, 0, 0))


def test_variant_mismatch():
    with pytest.raises(InvalidInputError):
        MultiplicityClass.zero(N) + MultiplicityClass.zero(N, GradingVariant.TOP)


def test_chord_grade_is_a_generator():
    assert gr_prime(triple(2, {1: 2})) == generator(2, 1)
    assert gr_prime(triple(2, {1: 1, 2: 2})) == GradingElement.identity(2)


def test_canonical_lift_is_in_subgroup():
    alpha = MultiplicityClass.interval(N, 1, 3)
    lift = canonical_lift(alpha)
    assert lift.alpha == alpha
    assert in_index_two_subgroup(lift)
    assert not in_index_two_subgroup(GradingElement(lift.twice_k + 1, alpha))


def test_tau_counts_free_strands():
    for d in half_chord_top(N, 2):
        assert tau(gr_prime(d)) == 1
    for d in half_chord_bottom(N, 2):
        assert tau(gr_prime(d)) == 1


def test_amalgamation_needs_top_then_bottom():
    top = GradingElement.identity(2, GradingVariant.TOP)
    bottom = GradingElement.identity(2, GradingVariant.BOTTOM)
    assert amalgamate_to_total(top, bottom) == GradingElement.identity(4)
    with pytest.raises(InvalidInputError):
        amalgamate_to_total(bottom, top)


def test_bigrade_arithmetic():
    assert Bigrade(1, 2) + U_BIGRADE == Bigrade(0, 0)
    assert Bigrade(0, 0) - U_BIGRADE == Bigrade(1, 2)


def test_bigrade_of_a_chord():
    d = triple(3, {1: 3})
    assert d.occupied(Edge.LEFT) == frozenset({1})
    assert Slot(Edge.RIGHT, 3) in d.partner
    # the strand meets rows 1 and 2
    assert bigrade_algebra(d, {1}, {2}) == Bigrade(0, -2)
    assert bigrade_algebra(d, {1, 2}, set()) == Bigrade(2, 0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_grading_suite(n: int):
    report = grading_suite(n, seed=7, samples=20)
    assert report.passed, report.failures
