"""
Test the strands algebra, the top/bottom algebra-modules and the cut isomorphism
"""

import pytest

from app.core.exceptions import InvalidInputError
from app.services.coeffs import LinearCombination
from app.services.diagrams import Direction, glue
from app.services.strands import (
    bottom_basis,
    chord,
    consistent_chord_element,
    count_triples,
    format_triple,
    half_chord_bottom,
    half_chord_top,
    idempotent,
    merge_tensor,
    relation_suite_strands,
    relation_suite_topbottom,
    split,
    strands_basis,
    strands_diff,
    strands_mul,
    tensor_mul,
    theorem_bnt_check,
    top_basis,
    triple,
    unit,
)


def test_a2_dimension():
    assert len(strands_basis(2)) == 5
    assert [len(strands_basis(2, k)) for k in range(3)] == [1, 3, 1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_basis_matches_brute_force_count(n: int):
    for k in range(n + 1):
        assert len(strands_basis(n, k)) == count_triples(n, k)


def test_triple_rejects_downward_strand():
    with pytest.raises(InvalidInputError):
        triple(3, {2: 1})


def test_triple_rejects_non_injective_map():
    with pytest.raises(InvalidInputError):
        triple(3, {1: 3, 2: 3})


def test_triple_rejects_out_of_range_position():
    with pytest.raises(InvalidInputError):
        triple(2, {1: 3})


def test_format_triple():
    assert format_triple(triple(3, {1: 2, 3: 3})) == "{1,3}->{2,3}: 1->2, 3->3"


def test_idempotents_are_orthogonal():
    a, b = idempotent(3, {1}), idempotent(3, {2})
    assert strands_mul(a, a) == a
    assert strands_mul(a, b).is_zero


def test_unit_is_two_sided():
    one = unit(3)
    for d in strands_basis(3):
        x = LinearCombination.basis(d)
        assert strands_mul(one, x) == x
        assert strands_mul(x, one) == x


def test_chord_product_and_differential():
    rho12, rho23, rho13 = chord(3, 1, 2), chord(3, 2, 3), chord(3, 1, 3)
    assert strands_mul(rho12, rho23) == strands_mul(idempotent(3, {1}), rho13)
    assert strands_mul(rho23, rho12) == LinearCombination.basis(triple(3, {1: 2, 2: 3}))
    assert strands_diff(rho13) == strands_mul(rho23, rho12)
    assert strands_diff(rho12).is_zero


def test_chord_needs_upward_pair():
    with pytest.raises(InvalidInputError):
        chord(3, 2, 2)
    with pytest.raises(InvalidInputError):
        consistent_chord_element(3, [(1, 2), (1, 3)])


def test_half_chords_have_one_free_strand():
    for d in half_chord_top(3, 2):
        assert d.spec.top == (1,)
    for d in half_chord_bottom(3, 2):
        assert d.spec.bottom == (1,)


def test_module_bases():
    assert len(top_basis(1, 1)) == 1
    assert len(bottom_basis(1, 1)) == 1
    assert len(top_basis(2, 2)) == 2
    assert len(top_basis(2, 2, base_only=True)) == 1


def test_split_then_merge_is_identity():
    for a in strands_basis(3):
        for n in range(1, 3):
            assert merge_tensor(split(a, n)) == a


def test_split_out_of_range():
    with pytest.raises(InvalidInputError):
        split(triple(2, {1: 2}), 3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_relation_suite_strands(n: int):
    report = relation_suite_strands(n)
    assert report.passed, report.failures


@pytest.mark.parametrize("n", [1, 2, 3])
def test_relation_suite_topbottom(n: int):
    report = relation_suite_topbottom(n)
    assert report.passed, report.failures


@pytest.mark.parametrize("n, n2", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_cut_isomorphism(n: int, n2: int):
    report = theorem_bnt_check(n, n2)
    assert report.passed, report.failures


def test_cut_isomorphism_compares_every_pair():
    report = theorem_bnt_check(1, 2)
    assert report.passed, report.failures
    assert report.cases >= len(strands_basis(3)) ** 2


def test_split_of_a_non_composable_product_is_zero():
    x, y = triple(3, {1: 2}), triple(3, {3: 3})
    assert glue(x, y, Direction.HORIZONTAL) is None
    assert tensor_mul(split(x, 1), split(y, 1)) is None
