"""
Test strand diagrams and the nilCoxeter 2-algebra
"""

import itertools

import pytest

from app.core.exceptions import InvalidInputError, VerificationFailure
from app.services.coeffs import LinearCombination
from app.services.diagrams import (
    BoxDiagram,
    Direction,
    Edge,
    Flavor,
    NilCoxGen,
    Slot,
    SlotSpec,
    concat_2algebra,
    diagram_diff,
    glue,
    juxtapose,
    nc_basis,
    nc_homology,
    nilcoxeter_suite,
    two_algebra_suite,
)
from app.services.report import Report


def test_basis_sizes():
    assert [len(nc_basis(m)) for m in range(5)] == [1, 1, 2, 6, 24]


def test_negative_m_rejected():
    with pytest.raises(InvalidInputError):
        nc_basis(-1)


def test_not_a_permutation():
    with pytest.raises(InvalidInputError):
        NilCoxGen.of((1, 1, 2))


def test_simple_generators_square_to_zero():
    for i in (1, 2):
        s = NilCoxGen.simple(i, 3)
        assert s * s is None
    with pytest.raises(InvalidInputError):
        NilCoxGen.simple(3, 3)


def test_braid_relation():
    assert NilCoxGen.from_word([1, 2, 1], 3) == NilCoxGen.from_word([2, 1, 2], 3) == NilCoxGen.of((3, 2, 1))
    assert NilCoxGen.from_word([1, 1], 3) is None


def test_longest_element_differential():
    d = NilCoxGen.of((3, 2, 1)).differential()
    assert len(d) == 2
    assert all(g.length == 2 for g in d)


def test_reduced_word_rebuilds_element():
    for g in nc_basis(4):
        word = g.reduced_word()
        assert len(word) == g.length
        assert NilCoxGen.from_word(word, 4) == g


def test_diagram_round_trip_and_crossings():
    g = NilCoxGen.of((3, 2, 1))
    assert g.diagram.crossing_count == 3
    assert NilCoxGen.from_diagram(g.diagram) == g


def test_resolutions_match_covers():
    for g in nc_basis(3):
        assert diagram_diff(g.diagram).map_keys(NilCoxGen.from_diagram) == g.differential()


def test_vertical_glue():
    s1, e = NilCoxGen.simple(1, 2), NilCoxGen.identity(2)
    assert glue(s1.diagram, e.diagram, Direction.VERTICAL) == s1.diagram
    assert glue(s1.diagram, s1.diagram, Direction.VERTICAL) is None


def test_glue_interface_mismatch():
    assert glue(NilCoxGen.identity(2).diagram, NilCoxGen.identity(3).diagram, Direction.VERTICAL) is None


def test_juxtapose_is_concatenation():
    s1, e1 = NilCoxGen.simple(1, 2), NilCoxGen.identity(1)
    assert juxtapose(s1.diagram, e1.diagram) == concat_2algebra(s1, e1).diagram
    assert concat_2algebra(s1, e1) == NilCoxGen.of((2, 1, 3))


def test_build_rejects_reused_slot():
    spec = SlotSpec(bottom=(2,), top=(2,))
    b1, t1, t2 = Slot(Edge.BOTTOM, 1), Slot(Edge.TOP, 1), Slot(Edge.TOP, 2)
    with pytest.raises(InvalidInputError):
        BoxDiagram.build(Flavor.NILCOX, spec, [(b1, t1), (b1, t2)])


def test_build_rejects_inadmissible_strand():
    spec = SlotSpec(bottom=(2,), top=(2,))
    with pytest.raises(InvalidInputError):
        BoxDiagram.build(Flavor.NILCOX, spec, [(Slot(Edge.BOTTOM, 1), Slot(Edge.BOTTOM, 2))])


def test_nilcoxeter_is_acyclic():
    assert nc_homology(0) == [1]
    assert nc_homology(1) == [1]
    assert nc_homology(3) == [0, 0, 0, 0]


def test_leibniz_on_n3():
    for a, b in itertools.product(nc_basis(3), repeat=2):
        ab = a * b
        lhs = ab.differential() if ab is not None else LinearCombination.zero()
        rhs = LinearCombination.from_keys(
            [p for p in (x * b for x in a.covers()) if p is not None]
            + [p for p in (a * y for y in b.covers()) if p is not None]
        )
        assert lhs == rhs


def test_nilcoxeter_suite_passes():
    report = nilcoxeter_suite(4)
    assert report.passed, report.failures
    assert report.cases > 0
    assert report.params == {"max_m": 4}


def test_two_algebra_suite_passes():
    report = two_algebra_suite(3)
    assert report.passed, report.failures


def test_report_records_failures():
    report = Report(suite="demo")
    report.check("ok", True)
    report.expect_equal("bad", 1, 2, rendering="picture")
    assert not report.passed
    assert report.failures[0].detail == "1 != 2"
    assert report.failures[0].rendering == "picture"
    with pytest.raises(VerificationFailure):
        report.raise_for_failures()


def test_report_absorb_prefixes_cases():
    outer, inner = Report(suite="outer"), Report(suite="inner")
    inner.check("case", False, "boom")
    outer.absorb(inner, prefix="n=2 ")
    assert outer.cases == 1
    assert outer.failure_count == 1
    assert outer.failures[0].case == "n=2 case"
