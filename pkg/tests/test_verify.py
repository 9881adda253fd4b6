"""
Test the suite registry, its defaults and safety bounds
"""

import random

import pytest

from app.core.config import settings
from app.core.exceptions import BoundExceededError, InvalidInputError
from app.models.grid import GridSpec
from app.models.verify import SuiteName, VerifyRequest
from app.services import verify
from app.services.gridcomplex import GridDiagram
from app.services.report import CaseFailure, Report


def test_registry_covers_every_suite():
    assert set(verify.REGISTRY) == set(SuiteName)
    assert len(verify.suite_catalog()) == len(SuiteName)


def test_defaults_are_filled():
    params = verify.resolve(VerifyRequest(suite=SuiteName.NILCOXETER))
    assert params.max_m == 6
    assert params.seed == settings.DEFAULT_SEED
    assert params.n == 3


def test_grid_fixes_n(grid3: GridDiagram):
    params = verify.resolve(VerifyRequest(suite=SuiteName.AA, n=5, grid=GridSpec.from_grid(grid3)))
    assert params.n == 3
    assert params.grid == grid3
    assert verify.grids(params) == [grid3]


def test_bounds():
    with pytest.raises(BoundExceededError):
        verify.resolve(VerifyRequest(suite=SuiteName.GRID, n=settings.MAX_N + 1))
    with pytest.raises(BoundExceededError):
        verify.resolve(VerifyRequest(suite=SuiteName.NILCOXETER, max_m=settings.MAX_M + 1))
    with pytest.raises(BoundExceededError):
        verify.resolve(VerifyRequest(suite=SuiteName.R_RELATIONS, max_m=settings.MAX_CORNER_M + 1))
    with pytest.raises(BoundExceededError):
        verify.resolve(VerifyRequest(suite=SuiteName.AA, n=2, cut_k=3))


def test_right_pairing_defaults_to_the_corner_bound():
    params = verify.resolve(VerifyRequest(suite=SuiteName.CPD, n=4))
    assert params.max_m == settings.MAX_CORNER_M
    with pytest.raises(BoundExceededError):
        verify.resolve(VerifyRequest(suite=SuiteName.CPD, n=4, max_m=settings.MAX_CORNER_M + 1))


def test_cut_values_outside_grid(grid2: GridDiagram):
    params = verify.Params(SuiteName.AA, 2, 3, None, 2, 0, grid2)
    with pytest.raises(InvalidInputError):
        verify.cuts(params)


def test_cuts_enumerate_both_lines(grid2: GridDiagram):
    params = verify.Params(SuiteName.AA, 2, None, 1, 2, 0, grid2)
    assert [(c.k, c.kp) for c in verify.cuts(params)] == [(0, 1), (1, 1), (2, 1)]


def test_small_sizes_are_exhaustive():
    params = verify.resolve(VerifyRequest(suite=SuiteName.GRID, n=3))
    assert len(verify.grids(params)) == 4


def test_random_grids_follow_the_seed():
    params = verify.resolve(VerifyRequest(suite=SuiteName.GRID, n=5, seed=11))
    first, second = verify.grids(params), verify.grids(params)
    assert first == second
    assert len(first) == settings.RANDOM_DIAGRAMS
    other = verify.grids(verify.resolve(VerifyRequest(suite=SuiteName.GRID, n=5, seed=12)))
    assert first != other


def test_vertical_pairing_samples_more_grids():
    params = verify.resolve(VerifyRequest(suite=SuiteName.LOT2, n=5))
    assert params.random_count == settings.PAIRING_RANDOM_DIAGRAMS
    assert len(verify.grids(params)) >= 50
    assert all(g.n == 5 for g in verify.grids(params))
    # other suites keep the smaller sample
    assert verify.resolve(VerifyRequest(suite=SuiteName.BITENSOR, n=5)).random_count == settings.RANDOM_DIAGRAMS


def test_random_grid_is_valid():
    g = verify.random_grid(random.Random(3), 6)
    assert sorted(g.x_cells) == sorted(g.o_cells) == [1, 2, 3, 4, 5]


def test_replay_command(grid3: GridDiagram):
    params = verify.resolve(VerifyRequest(suite=SuiteName.DD, cut_k=1, seed=5, grid=GridSpec.from_grid(grid3)))
    assert verify.replay_command(params) == (
        "cornered verify --suite dd --n 3 --max-m 2 --cut-k 1 --seed 5 --input <grid.json>"
    )


@pytest.mark.parametrize(
    "request_",
    [
        VerifyRequest(suite=SuiteName.NILCOXETER, max_m=4),
        VerifyRequest(suite=SuiteName.TWO_ALGEBRA, max_m=3),
        VerifyRequest(suite=SuiteName.GRID_NILCOXETER, max_m=3),
        VerifyRequest(suite=SuiteName.STRANDS_RELATIONS, n=3),
        VerifyRequest(suite=SuiteName.BNT, n=3),
        VerifyRequest(suite=SuiteName.R_RELATIONS, cut_k=2, max_m=2),
        VerifyRequest(suite=SuiteName.AA, n=3, cut_k=2, cut_kp=1),
    ],
    ids=lambda r: r.suite.value,
)
def test_run_verify_passes(request_: VerifyRequest):
    report = verify.run_verify(request_)
    assert report.passed, report.failures
    assert report.cases > 0
    assert report.suite == request_.suite.value


def test_run_verify_records_grid(grid3: GridDiagram):
    request = VerifyRequest(suite=SuiteName.LOT2, grid=GridSpec.from_grid(grid3))
    report = verify.run_verify(request)
    assert report.passed, report.failures
    assert report.params["grid"] == grid3.to_mapping()


def test_report_read_carries_replay():
    report = Report(suite="aa", cases=2, failure_count=1, failures=[CaseFailure("d^2 x", "nonzero")], replay="again")
    read = verify.report_read(report)
    assert not read.passed
    assert read.failures[0].replay == "again"
    assert read.failures[0].case == "d^2 x"
