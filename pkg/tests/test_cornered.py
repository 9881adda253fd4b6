"""
Test the four quadrant modules and their pairings along both cuts
"""

import itertools

import pytest

from app.services import strands
from app.services.bordered import PartialGrid, SliceSide, split_generator
from app.services.coeffs import LinearCombination
from app.services.cornered import ad, da, dd, pairing
from app.services.cornered.aa import aa_basis, aa_bigrade, aa_diff, aa_generator, aa_suite
from app.services.cornered.ad import ad_basis, ad_generator, ad_left_mul, ad_suite
from app.services.cornered.da import da_basis, da_generator, da_left_mul, da_suite
from app.services.cornered.dd import dd_basis, dd_diff, dd_generator, dd_structure_map, dd_suite
from app.services.cornered.pairing import (
    bigrading_suite,
    bitensor_suite,
    corner_size,
    cpa_suite,
    cpd_suite,
    join_left,
    left_pair,
    quad_generator,
    right_basis,
)
from app.services.cornered.quadrants import DoubleCut, Quadrant, QuadrantGenerator
from app.services.cornered.ralgebra import Interface, Letter, LetterKind, r_bottom, r_piece
from app.services.diagrams import NilCoxGen
from app.services.gradings import Bigrade
from app.services.gridcomplex import GridDiagram

CUTS = list(itertools.product(range(4), repeat=2))


def test_aa_generator_defaults():
    g = aa_generator(QuadrantGenerator.of([]), (2, 1))
    assert g.arrows == (1, 2)
    assert g.sigma == NilCoxGen.identity(2)
    assert g.interface == Interface.of([1, 2], 2)


def test_aa_basis_small_cut(grid3: GridDiagram):
    cut = DoubleCut(grid3, 1, 1)
    basis = aa_basis(cut)
    # the empty generator with or without an arrow at column 1, or the point (1,1)
    assert len(basis) == 3
    empty = aa_generator(QuadrantGenerator.of([]))
    assert aa_bigrade(cut, empty) == Bigrade(0, 0)
    for g in basis:
        assert aa_diff(cut, g).is_zero


def test_aa_basis_respects_arrow_limit(grid4: GridDiagram):
    cut = DoubleCut(grid4, 3, 1)
    assert all(g.m <= 1 for g in aa_basis(cut, max_arrows=1))
    assert len(aa_basis(cut, max_arrows=1)) < len(aa_basis(cut))


@pytest.mark.parametrize("k, kp", CUTS)
def test_generators_lie_in_bases(grid3: GridDiagram, k: int, kp: int):
    cut = DoubleCut(grid3, k, kp)
    ads, das, dds = set(ad_basis(cut)), set(da_basis(cut)), set(dd_basis(cut))
    assert all(ad_generator(cut, x) in ads for x in cut.generators(Quadrant.AD))
    assert all(da_generator(cut, x) in das for x in cut.generators(Quadrant.DA))
    assert all(dd_generator(cut, x) in dds for x in cut.generators(Quadrant.DD))


@pytest.mark.parametrize("k, kp", CUTS)
def test_quadrants_cover_a_generator(grid3: GridDiagram, k: int, kp: int):
    cut = DoubleCut(grid3, k, kp)
    for x in grid3.generators():
        g = quad_generator(cut, x)
        points = g.left.aa.points + g.left.ad.points + g.da.points + g.dd.points
        assert frozenset(points) == x.points
        a, _ = split_generator(x, k)
        assert join_left(left_pair(cut, a)) == a


def test_left_pair_splits_at_horizontal_cut(grid3: GridDiagram):
    cut = DoubleCut(grid3, 2, 1)
    part = PartialGrid(grid3, SliceSide.A, 2)
    for x in part.generators():
        pair = left_pair(cut, x)
        assert all(r <= 1 for _, r in pair.aa.points)
        assert all(r > 1 for _, r in pair.ad.points)


@pytest.mark.parametrize("k, kp", CUTS)
def test_aa_suite(grid3: GridDiagram, k: int, kp: int):
    report = aa_suite(DoubleCut(grid3, k, kp))
    assert report.passed, report.failures


@pytest.mark.parametrize("k, kp", CUTS)
def test_ad_suite(grid3: GridDiagram, k: int, kp: int):
    report = ad_suite(DoubleCut(grid3, k, kp))
    assert report.passed, report.failures


@pytest.mark.parametrize("k, kp", CUTS)
def test_da_suite(grid3: GridDiagram, k: int, kp: int):
    report = da_suite(DoubleCut(grid3, k, kp))
    assert report.passed, report.failures


def test_ad_left_unit(grid3: GridDiagram):
    cut = DoubleCut(grid3, 2, 1)
    for term in ad_basis(cut):
        tx = LinearCombination.basis(term)
        unit = r_piece(cut.k, Letter(LetterKind.IDEMPOTENT), r_bottom(term.phi))
        assert ad_left_mul(cut, LinearCombination.basis(unit), tx) == tx
        other = Interface.of(r_bottom(term.phi).positions, r_bottom(term.phi).m + 1)
        assert ad_left_mul(cut, LinearCombination.basis(r_piece(cut.k, Letter(LetterKind.IDEMPOTENT), other)), tx).is_zero


def test_da_left_unit(grid3: GridDiagram):
    cut = DoubleCut(grid3, 1, 2)
    for term in da_basis(cut):
        tx = LinearCombination.basis(term)
        left = sorted(set(strands.through_map(term.t)) | set(strands.exits(term.t)))
        unit = strands.top_gen(cut.kp, {r: r for r in left}, ())
        assert da_left_mul(cut, LinearCombination.basis(unit), tx) == tx


@pytest.mark.parametrize("module, name", [(ad, "ad_left_mul"), (da, "da_left_mul")], ids=["ad", "da"])
def test_side_checks_catch_an_ignored_coefficient(grid3: GridDiagram, module, name: str, monkeypatch):
    cut = DoubleCut(grid3, 2, 2)
    suite = ad_suite if module is ad else da_suite
    assert suite(cut).passed
    monkeypatch.setattr(module, name, lambda cut, coefficients, a: a)
    assert not suite(cut).passed


@pytest.mark.parametrize("k, kp", CUTS)
def test_dd_suite(grid3: GridDiagram, k: int, kp: int):
    report = dd_suite(DoubleCut(grid3, k, kp))
    assert report.passed, report.failures


@pytest.mark.parametrize("k, kp", CUTS)
def test_dd_structure_map_is_the_generator_differential(grid3: GridDiagram, k: int, kp: int):
    cut = DoubleCut(grid3, k, kp)
    for x in cut.generators(Quadrant.DD):
        assert dd_diff(cut, dd_generator(cut, x)) == dd_structure_map(cut, x)


def test_dd_suite_checks_both_actions(grid3: GridDiagram):
    report = dd_suite(DoubleCut(grid3, 0, 0))
    assert report.passed, report.failures
    # unit, associativity, commutation and Leibniz cases on top of d^2 and gradings
    assert report.cases > 2 * len(dd_basis(DoubleCut(grid3, 0, 0)))


def test_dd_suite_catches_a_missing_widening(grid3: GridDiagram, monkeypatch):
    cut = DoubleCut(grid3, 0, 0)
    assert any(strands.module_index(t.b) > 0 for t in dd_basis(cut))
    monkeypatch.setattr(dd, "_widen", lambda ell, m: ell)
    report = dd_suite(cut)
    assert not report.passed


@pytest.mark.parametrize("k, kp", CUTS)
def test_cpa_pairing(grid3: GridDiagram, k: int, kp: int):
    report = cpa_suite(DoubleCut(grid3, k, kp))
    assert report.passed, report.failures


@pytest.mark.parametrize("k, kp", CUTS)
def test_cpd_pairing(grid3: GridDiagram, k: int, kp: int):
    report = cpd_suite(DoubleCut(grid3, k, kp))
    assert report.passed, report.failures


def test_cpd_suite_compares_the_algebra_action(grid3: GridDiagram, monkeypatch):
    cut = DoubleCut(grid3, 1, 1)
    assert cpd_suite(cut).passed
    monkeypatch.setattr(pairing, "right_act", lambda cut, a, term: LinearCombination.basis(term))
    assert not cpd_suite(cut).passed


def test_corner_size(grid4: GridDiagram, monkeypatch):
    assert corner_size(DoubleCut(grid4, 0, 2)) == 2
    assert corner_size(DoubleCut(grid4, 2, 1)) == 1
    assert corner_size(DoubleCut(grid4, 3, 4)) == 0
    assert corner_size(DoubleCut(grid4, 0, 2), max_m=1) == 1
    monkeypatch.setattr(pairing.settings, "MAX_CORNER_M", 1)
    assert corner_size(DoubleCut(grid4, 0, 2)) == 1


@pytest.mark.parametrize("k, kp", [(0, 2), (1, 2), (2, 2)])
def test_right_basis_defaults_to_every_corner_size(grid4: GridDiagram, k: int, kp: int):
    cut = DoubleCut(grid4, k, kp)
    full = right_basis(cut)
    assert full == right_basis(cut, cut.n)
    assert set(right_basis(cut, 0)) <= set(full)
    assert all(strands.module_index(t.b) <= corner_size(cut) for t in full)


@pytest.mark.parametrize("k, kp", CUTS)
def test_bitensor(grid3: GridDiagram, k: int, kp: int):
    report = bitensor_suite(DoubleCut(grid3, k, kp))
    assert report.passed, report.failures


@pytest.mark.parametrize("k, kp", CUTS)
def test_bigrading(grid3: GridDiagram, k: int, kp: int):
    report = bigrading_suite(DoubleCut(grid3, k, kp))
    assert report.passed, report.failures


@pytest.mark.parametrize("k, kp", [(2, 2), (1, 3), (3, 1)])
def test_bitensor_grid4(grid4: GridDiagram, k: int, kp: int):
    report = bitensor_suite(DoubleCut(grid4, k, kp))
    assert report.passed, report.failures
