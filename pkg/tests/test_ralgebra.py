"""
Test the algebra-modules R(k) and L(k) along a horizontal cut
"""

import pytest

from app.core.exceptions import InvalidInputError
from app.services.cornered.ralgebra import (
    Interface,
    Letter,
    LetterKind,
    Side,
    count_r,
    format_r,
    interfaces,
    l_basis,
    l_bottom,
    l_piece,
    l_word,
    r_basis,
    r_bottom,
    r_piece,
    r_top,
    r_word,
    relation_suite_l,
    relation_suite_r,
    word_product,
)

SHAPES = [(m, p) for m in range(3) for p in range(3)]


def test_interfaces():
    assert len(interfaces(2, 1)) == 8
    assert Interface.of([3, 1], 0) == Interface((1, 3), 0)


def test_r1_small_pieces():
    assert len(r_basis(1, 0, 0)) == 2
    assert len(r_basis(1, 1, 0)) == 1
    assert r_basis(1, 0, 1) == []


@pytest.mark.parametrize("k", [1, 2, 3])
def test_r_basis_matches_count(k: int):
    for m, p in SHAPES:
        assert len(r_basis(k, m, p)) == count_r(k, m, p)


@pytest.mark.parametrize("k", [1, 2])
def test_l_basis_is_r_basis_rotated(k: int):
    for m, p in SHAPES:
        assert len(l_basis(k, m, p)) == count_r(k, p, m)


@pytest.mark.parametrize("k", [1, 2])
def test_words_rebuild_diagrams(k: int):
    for m, p in SHAPES:
        for d in r_basis(k, m, p):
            assert word_product(Side.RIGHT, k, r_word(d), r_bottom(d)) == d
        for d in l_basis(k, m, p):
            assert word_product(Side.LEFT, k, l_word(d), l_bottom(d)) == d


def test_chord_piece_needs_free_end():
    chord = Letter(LetterKind.CHORD, 1, 2)
    assert r_piece(2, chord, Interface.of([1, 2], 0)) is None
    assert r_piece(2, chord, Interface.of([2], 0)) is None
    d = r_piece(2, chord, Interface.of([1], 1))
    assert d is not None
    assert r_top(d) == Interface.of([2], 1)


def test_cap_consumes_a_nilcoxeter_point():
    d = r_piece(2, Letter(LetterKind.CAP, 1), Interface.of([1, 2], 2))
    assert d is not None
    assert r_top(d) == Interface.of([2], 1)
    assert "caps[1~1]" in format_r(d)
    assert r_piece(2, Letter(LetterKind.CAP, 1), Interface.of([1], 0)) is None


def test_cup_needs_a_free_position():
    assert l_piece(2, Letter(LetterKind.CUP, 1), Interface.of([1], 0)) is None
    assert l_piece(2, Letter(LetterKind.CUP, 1), Interface.of([2], 0)) is not None


def test_wrong_family_letters():
    with pytest.raises(InvalidInputError):
        r_piece(2, Letter(LetterKind.CUP, 1), Interface.of([], 0))
    with pytest.raises(InvalidInputError):
        l_piece(2, Letter(LetterKind.CAP, 1), Interface.of([1], 1))


@pytest.mark.parametrize("k", [1, 2])
def test_relation_suite_r(k: int):
    report = relation_suite_r(k, max_m=2)
    assert report.passed, report.failures


@pytest.mark.parametrize("k", [1, 2])
def test_relation_suite_l(k: int):
    report = relation_suite_l(k, max_m=2)
    assert report.passed, report.failures
