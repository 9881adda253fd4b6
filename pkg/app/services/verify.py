"""
Verification registry: one runner per suite, shared by the HTTP endpoints and the command line

Suites that take a grid run over every grid of size n when n <= 3, otherwise over
the suite's `random_count` grids drawn from `random.Random(seed)`. Suites that take
a cut run over every k (and k') unless one is given.
"""

import logging
import random
from collections.abc import Callable, Iterable
from dataclasses import dataclass

from app.core.config import settings
from app.core.exceptions import InvalidInputError, check_bound
from app.core.logger import get_logger
from app.models.verify import CaseFailureRead, ReportRead, SuiteName, SuiteRead, VerifyRequest
from app.services import bordered, diagrams, gradings, gridcomplex, matched, strands
from app.services.cornered import aa, ad, da, dd, pairing, ralgebra
from app.services.cornered.quadrants import DoubleCut
from app.services.gridcomplex import GridDiagram
from app.services.report import Report, timed

logger = get_logger(__name__, logging.INFO)

# largest n whose grids are all enumerated
EXHAUSTIVE_N = 3


@dataclass(frozen=True)
class Params:
    """A VerifyRequest with the suite defaults filled in."""

    suite: SuiteName
    n: int
    cut_k: int | None
    cut_kp: int | None
    max_m: int
    seed: int
    grid: GridDiagram | None = None
    random_count: int = settings.RANDOM_DIAGRAMS


Runner = Callable[[Params], Iterable[tuple[str, Report]]]


@dataclass(frozen=True)
class SuiteEntry:
    description: str
    runner: Runner
    default_n: int = 3
    default_max_m: int = 2
    random_count: int = settings.RANDOM_DIAGRAMS


# ------ Inputs ------


def random_grid(rng: random.Random, n: int) -> GridDiagram:
    cells = list(range(1, n))
    return GridDiagram(n, tuple(rng.sample(cells, len(cells))), tuple(rng.sample(cells, len(cells))))


def grids(params: Params) -> list[GridDiagram]:
    if params.grid is not None:
        return [params.grid]
    if params.n <= EXHAUSTIVE_N:
        return list(gridcomplex.all_grids(params.n))
    rng = random.Random(params.seed)
    return [random_grid(rng, params.n) for _ in range(params.random_count)]


def _cut_values(value: int | None, n: int) -> list[int]:
    if value is None:
        return list(range(n + 1))
    if value > n:
        raise InvalidInputError(f"Cut {value} is outside [0, {n}]")
    return [value]


def cuts(params: Params) -> list[DoubleCut]:
    result = []
    for grid in grids(params):
        for k in _cut_values(params.cut_k, grid.n):
            for kp in _cut_values(params.cut_kp, grid.n):
                result.append(DoubleCut(grid, k, kp))
    return result


def _grid_label(grid: GridDiagram) -> str:
    return f"x={list(grid.x_cells)} o={list(grid.o_cells)}"


def _cut_label(cut: DoubleCut) -> str:
    return f"{_grid_label(cut.grid)} k={cut.k} k'={cut.kp}"


# ------ Runners ------


def _nilcoxeter(params: Params) -> Iterable[tuple[str, Report]]:
    yield "", diagrams.nilcoxeter_suite(params.max_m)


def _two_algebra(params: Params) -> Iterable[tuple[str, Report]]:
    yield "", diagrams.two_algebra_suite(params.max_m)


def _grid_nilcoxeter(params: Params) -> Iterable[tuple[str, Report]]:
    for m in range(params.max_m + 1):
        yield f"m={m} ", gridcomplex.nilcoxeter_grid_iso(m)


def _strands_relations(params: Params) -> Iterable[tuple[str, Report]]:
    for n in range(1, params.n + 1):
        yield f"N={n} ", strands.relation_suite_strands(n)


def _topbottom_relations(params: Params) -> Iterable[tuple[str, Report]]:
    for n in range(1, params.n + 1):
        yield f"N={n} ", strands.relation_suite_topbottom(n)


def _bnt(params: Params) -> Iterable[tuple[str, Report]]:
    for total in range(1, params.n + 1):
        for n1 in range(total + 1):
            yield f"N={n1} N'={total - n1} ", strands.theorem_bnt_check(n1, total - n1)


def _gradings(params: Params) -> Iterable[tuple[str, Report]]:
    for n in range(1, params.n + 1):
        yield f"N={n} ", gradings.grading_suite(n, params.seed)


def _matched(params: Params) -> Iterable[tuple[str, Report]]:
    torus = matched.torus_interval()
    yield "torus ", matched.matched_suite(matched.PointedMatchedCircle.from_pairs(4, torus.pairs()))
    yield "torus#torus ", matched.matched_suite(matched.glue_intervals(torus, torus))


def _azed(params: Params) -> Iterable[tuple[str, Report]]:
    torus = matched.torus_interval()
    yield "", matched.theorem_azed_check(torus, torus)


def _lot2(params: Params) -> Iterable[tuple[str, Report]]:
    for grid in grids(params):
        for k in _cut_values(params.cut_k, grid.n):
            yield f"{_grid_label(grid)} k={k} ", bordered.pairing_lot2(grid, k)


def _grid(params: Params) -> Iterable[tuple[str, Report]]:
    for grid in grids(params):
        yield f"{_grid_label(grid)} ", gridcomplex.grid_suite(grid)
        for k in _cut_values(params.cut_k, grid.n):
            yield f"{_grid_label(grid)} k={k} A ", bordered.cpa_module_suite(grid, k)
            yield f"{_grid_label(grid)} k={k} D ", bordered.cpd_module_suite(grid, k)


def _widths(params: Params) -> list[int]:
    top = params.cut_k if params.cut_k is not None else settings.MAX_K
    return list(range(1, top + 1))


def _r_relations(params: Params) -> Iterable[tuple[str, Report]]:
    for k in _widths(params):
        yield f"k={k} ", ralgebra.relation_suite_r(k, params.max_m)


def _l_relations(params: Params) -> Iterable[tuple[str, Report]]:
    for k in _widths(params):
        yield f"k={k} ", ralgebra.relation_suite_l(k, params.max_m)


def _per_cut(suite: Callable[[DoubleCut, int], Report]) -> Runner:
    def runner(params: Params) -> Iterable[tuple[str, Report]]:
        for cut in cuts(params):
            yield f"{_cut_label(cut)} ", suite(cut, params.max_m)

    return runner


def _each_cut(suite: Callable[[DoubleCut], Report]) -> Runner:
    def runner(params: Params) -> Iterable[tuple[str, Report]]:
        for cut in cuts(params):
            yield f"{_cut_label(cut)} ", suite(cut)

    return runner


REGISTRY: dict[SuiteName, SuiteEntry] = {
    SuiteName.NILCOXETER: SuiteEntry(
        "Dimensions, d^2 = 0, Bruhat covers against box resolutions, Leibniz and acyclicity of the nilCoxeter algebras",
        _nilcoxeter,
        default_max_m=6,
    ),
    SuiteName.TWO_ALGEBRA: SuiteEntry(
        "Unit, associativity, Leibniz and local commutation of the horizontal product on the nilCoxeter family",
        _two_algebra,
        default_max_m=4,
    ),
    SuiteName.GRID: SuiteEntry(
        "Grid complex d^2 = 0, bigrading and rectangle emptiness, plus the module laws of both vertical slices",
        _grid,
    ),
    SuiteName.GRID_NILCOXETER: SuiteEntry(
        "The rectangle complex of the diagonal grid is the nilCoxeter complex, gradings included",
        _grid_nilcoxeter,
        default_max_m=5,
    ),
    SuiteName.STRANDS_RELATIONS: SuiteEntry(
        "Defining relations, d^2 = 0 and Leibniz on the strands algebra", _strands_relations, default_n=4
    ),
    SuiteName.TOPBOTTOM_RELATIONS: SuiteEntry(
        "Top and bottom algebra-modules: relations and the nilCoxeter actions", _topbottom_relations, default_n=4
    ),
    SuiteName.BNT: SuiteEntry(
        "Cutting the strands algebra horizontally is an isomorphism onto the top-bottom tensor product",
        _bnt,
        default_n=5,
    ),
    SuiteName.GRADINGS: SuiteEntry(
        "Grading group axioms and multiplicativity of the strands gradings", _gradings, default_n=4
    ),
    SuiteName.MATCHED: SuiteEntry(
        "Matched circles: surgery, sections, the two constructions of the matching algebra and its gradings", _matched
    ),
    SuiteName.AZED: SuiteEntry(
        "The matching algebra of a glued circle is the tensor product of its interval halves", _azed
    ),
    SuiteName.LOT2: SuiteEntry(
        "Vertical slicing: the grid complex equals the box tensor of its A and D halves, homology included",
        _lot2,
        random_count=settings.PAIRING_RANDOM_DIAGRAMS,
    ),
    SuiteName.R_RELATIONS: SuiteEntry("Relations and module laws of the right algebra-module", _r_relations),
    SuiteName.L_RELATIONS: SuiteEntry("Relations and module laws of the left algebra-module", _l_relations),
    SuiteName.AA: SuiteEntry(
        "Lower-left quadrant: d^2 = 0, gradings, both actions, Leibniz, associativity and commutation",
        _per_cut(aa.aa_suite),
    ),
    SuiteName.AD: SuiteEntry(
        "Upper-left quadrant: d^2 = 0, gradings, the bottom action and the R(k) side, units and commutation included",
        _per_cut(ad.ad_suite),
    ),
    SuiteName.DA: SuiteEntry(
        "Lower-right quadrant: d^2 = 0, gradings, the left action and the T(k') side, units and commutation included",
        _per_cut(da.da_suite),
    ),
    SuiteName.DD: SuiteEntry(
        "Upper-right quadrant: d^2 = 0, gradings, the structure map and both coefficient actions",
        _per_cut(dd.dd_suite),
    ),
    SuiteName.CPA: SuiteEntry(
        "Horizontal pairing of the left quadrants against the A half of the vertical slicing",
        _each_cut(pairing.cpa_suite),
    ),
    SuiteName.CPD: SuiteEntry(
        "Horizontal pairing of the right quadrants against the D half of the vertical slicing, A(N) action included",
        _per_cut(pairing.cpd_suite),
        default_max_m=settings.MAX_CORNER_M,
    ),
    SuiteName.BITENSOR: SuiteEntry(
        "The double tensor product of the four quadrants equals the grid complex, homology included",
        _each_cut(pairing.bitensor_suite),
    ),
    SuiteName.BIGRADING: SuiteEntry(
        "Additivity of the Alexander and Maslov gradings across both cuts", _per_cut(pairing.bigrading_suite)
    ),
}


# ------ Entry point ------


def resolve(request: VerifyRequest) -> Params:
    """Fill defaults and apply the configured safety bounds."""
    entry = REGISTRY[request.suite]
    grid = request.grid.to_grid() if request.grid is not None else None
    n = grid.n if grid is not None else (request.n if request.n is not None else entry.default_n)
    max_m = request.max_m if request.max_m is not None else entry.default_max_m
    check_bound("n", n, settings.MAX_N)
    check_bound("max_m", max_m, settings.MAX_M)
    if request.suite in (SuiteName.R_RELATIONS, SuiteName.L_RELATIONS, SuiteName.CPD):
        check_bound("max_m", max_m, settings.MAX_CORNER_M)
    if request.suite in (SuiteName.R_RELATIONS, SuiteName.L_RELATIONS) and request.cut_k is not None:
        check_bound("cut_k", request.cut_k, settings.MAX_K)
    for name, value in (("cut_k", request.cut_k), ("cut_kp", request.cut_kp)):
        if value is not None and request.suite not in (SuiteName.R_RELATIONS, SuiteName.L_RELATIONS):
            check_bound(name, value, n)
    seed = request.seed if request.seed is not None else settings.DEFAULT_SEED
    return Params(request.suite, n, request.cut_k, request.cut_kp, max_m, seed, grid, entry.random_count)


def replay_command(params: Params) -> str:
    parts = ["cornered verify", f"--suite {params.suite.value}", f"--n {params.n}", f"--max-m {params.max_m}"]
    if params.cut_k is not None:
        parts.append(f"--cut-k {params.cut_k}")
    if params.cut_kp is not None:
        parts.append(f"--cut-kp {params.cut_kp}")
    parts.append(f"--seed {params.seed}")
    if params.grid is not None:
        parts.append("--input <grid.json>")
    return " ".join(parts)


def run_verify(request: VerifyRequest) -> Report:
    """Run one registered suite over all of its inputs and aggregate the parts into a single report."""
    params = resolve(request)
    entry = REGISTRY[params.suite]
    report = Report(
        suite=params.suite.value,
        params={"n": params.n, "cut_k": params.cut_k, "cut_kp": params.cut_kp, "max_m": params.max_m, "seed": params.seed},
        replay=replay_command(params),
    )
    if params.grid is not None:
        report.params["grid"] = params.grid.to_mapping()
    with timed(report):
        for prefix, part in entry.runner(params):
            report.absorb(part, prefix)
    return report


def report_read(report: Report) -> ReportRead:
    return ReportRead(
        suite=report.suite,
        cases=report.cases,
        passed=report.passed,
        failure_count=report.failure_count,
        failures=[
            CaseFailureRead(case=f.case, detail=f.detail, rendering=f.rendering, replay=report.replay)
            for f in report.failures
        ],
        elapsed_ms=report.elapsed_ms,
        params=report.params,
    )


def suite_catalog() -> list[SuiteRead]:
    return [SuiteRead(name=name, description=entry.description) for name, entry in REGISTRY.items()]
