"""
Gluing quadrants back together

    AA (x)_R AD  ~  CPA^- of the left half          (suite "cpa")
    DA (x)_L DD  ~  CPD^- of the right half         (suite "cpd")
    (AA (x) AD) (x) (DA (x) DD)  ~  CP^- of the grid    (suite "bitensor")

Along l' the A side acts on the coefficients the D side produces. Along l the
two halves meet over T(k') (.) B(N-k') = A(N), the coefficient t (.) b standing
for the merged strands generator.
"""

import logging
from dataclasses import dataclass

from app.core.config import settings
from app.core.logger import get_logger
from app.services import strands
from app.services.bordered import (
    CPDTerm,
    PartialGenerator,
    PartialGrid,
    SliceSide,
    bigrade_cpd,
    bigrade_partial,
    cpa_action,
    cpa_diff,
    cpd_diff,
    cpd_left_action,
)
from app.services.coeffs import LinearCombination
from app.services.cornered.aa import aa_act_right, aa_act_top, aa_bigrade, aa_diff, aa_generator
from app.services.cornered.ad import ad_act, ad_bigrade, ad_diff, ad_generator
from app.services.cornered.da import DATerm, da_act, da_bigrade, da_diff
from app.services.cornered.dd import DDTerm, dd_bigrade, dd_diff, dd_mul_b, free_local_columns
from app.services.cornered.quadrants import (
    DoubleCut,
    Quadrant,
    QuadrantGenerator,
    bottom_bigrade,
    left_bigrade,
    right_bigrade,
    top_bigrade,
)
from app.services.cornered.ralgebra import l_basis, l_diagram, r_basis, vmul
from app.services.diagrams import BoxDiagram, Direction, Flavor, glue
from app.services.gradings import Bigrade
from app.services.gridcomplex import (
    PlanarGenerator,
    bigrade_generator,
    comparison_window,
    cp_diff,
    cp_homology,
    windowed_homology,
)
from app.services.report import Report, run_suite

logger = get_logger(__name__, logging.INFO)


@dataclass(frozen=True, order=True)
class LeftPair:
    """x^AA (x) x^AD, a generator of AA (x)_R AD."""

    aa: QuadrantGenerator
    ad: QuadrantGenerator

    def __str__(self) -> str:
        return f"{self.aa} (x) {self.ad}"


@dataclass(frozen=True, order=True)
class RightTerm:
    """(t (.) b) (x) (x^DA (x) x^DD), a basis element of DA (x)_L DD."""

    t: BoxDiagram
    da: QuadrantGenerator
    b: BoxDiagram
    dd: QuadrantGenerator

    def __str__(self) -> str:
        return f"{strands.format_top(self.t)} (.) {strands.format_bottom(self.b)} (x) {self.da} (x) {self.dd}"


@dataclass(frozen=True, order=True)
class QuadGenerator:
    left: LeftPair
    da: QuadrantGenerator
    dd: QuadrantGenerator

    def __str__(self) -> str:
        return f"{self.left} (x) {self.da} (x) {self.dd}"


# ------ Splitting and joining ------


def split_points(cut: DoubleCut, points: frozenset[tuple[int, int]] | tuple[tuple[int, int], ...]) -> dict[Quadrant, QuadrantGenerator]:
    return {q: QuadrantGenerator.of(p for p in points if cut.contains(q, p)) for q in Quadrant}


def left_pair(cut: DoubleCut, x: PartialGenerator) -> LeftPair:
    parts = split_points(cut, tuple(x.points))
    return LeftPair(parts[Quadrant.AA], parts[Quadrant.AD])


def join_left(pair: LeftPair) -> PartialGenerator:
    points = dict((*pair.aa.points, *pair.ad.points))
    return PartialGenerator(1, tuple(points[c] for c in range(1, len(points) + 1)))


def join_right(cut: DoubleCut, da: QuadrantGenerator, dd: QuadrantGenerator) -> PartialGenerator:
    points = dict((*da.points, *dd.points))
    return PartialGenerator(cut.k + 1, tuple(points[c] for c in range(cut.k + 1, cut.n + 1)))


def quad_generator(cut: DoubleCut, x: PlanarGenerator) -> QuadGenerator:
    parts = split_points(cut, x.points)
    return QuadGenerator(LeftPair(parts[Quadrant.AA], parts[Quadrant.AD]), parts[Quadrant.DA], parts[Quadrant.DD])


def merged(term: RightTerm) -> BoxDiagram | None:
    return glue(term.t, term.b, Direction.VERTICAL, flavor=Flavor.STRANDS)


def to_cpd(cut: DoubleCut, term: RightTerm) -> CPDTerm | None:
    algebra = merged(term)
    return None if algebra is None else CPDTerm(algebra, join_right(cut, term.da, term.dd))


def _free_rows(cut: DoubleCut, x: QuadrantGenerator, low: int, high: int) -> dict[int, int]:
    return {r - low: r - low for r in range(low + 1, high + 1) if r not in x.rows}


def right_generator(cut: DoubleCut, da: QuadrantGenerator, dd: QuadrantGenerator) -> RightTerm:
    t = strands.top_gen(cut.kp, _free_rows(cut, da, 0, cut.kp), ())
    b = strands.bottom_gen(cut.n - cut.kp, _free_rows(cut, dd, cut.kp, cut.n), ())
    return RightTerm(t, da, b, dd)


# ------ AA (x)_R AD ------


def left_diff(cut: DoubleCut, pair: LeftPair) -> LinearCombination[LeftPair]:
    """d(g (x) y) = dg (x) y + sum of (g . phi) (x) y' over delta(y) = sum phi (x) y'."""
    g = aa_generator(pair.aa)
    result = aa_diff(cut, g).map_keys(lambda h: LeftPair(h.x, pair.ad) if h.m == 0 else None)
    for term, coefficient in ad_diff(cut, ad_generator(cut, pair.ad)).items():
        acted = aa_act_right(cut, g, term.phi)
        if acted is not None and acted[0].m == 0:
            result += LinearCombination.basis(LeftPair(acted[0].x, term.x), acted[1] * coefficient)
    return result


def left_act(cut: DoubleCut, pair: LeftPair, t: BoxDiagram, b: BoxDiagram) -> LinearCombination[LeftPair]:
    """(g (x) y) * (t (.) b): t acts on AA, b on AD, and the caps it produces act back on AA."""
    top = aa_act_top(cut, aa_generator(pair.aa), t)
    if top is None:
        return LinearCombination.zero()
    g, weight = top
    terms = []
    for term, coefficient in ad_act(cut, ad_generator(cut, pair.ad), b).items():
        acted = aa_act_right(cut, g, term.phi)
        if acted is not None and acted[0].m == 0:
            terms.append((LeftPair(acted[0].x, term.x), weight * acted[1] * coefficient))
    return LinearCombination.from_terms(terms)


def left_bigrade_pair(cut: DoubleCut, pair: LeftPair) -> Bigrade:
    return aa_bigrade(cut, aa_generator(pair.aa)) + ad_bigrade(cut, ad_generator(cut, pair.ad))


# ------ DA (x)_L DD ------


def _dd_idempotent(cut: DoubleCut, term: RightTerm) -> BoxDiagram:
    p = strands.module_index(term.b)
    columns = free_local_columns(cut, term.dd)
    return l_diagram(cut.n - cut.k, p, {q: q for q in range(1, p + 1)}, {c: c for c in columns})


def right_diff(cut: DoubleCut, term: RightTerm) -> LinearCombination[RightTerm]:
    """The DA differential, plus DA . ell for every ell . (b' * y) in the DD differential."""
    result = da_diff(cut, DATerm(term.t, term.da)).map_keys(lambda h: RightTerm(h.t, h.x, term.b, term.dd))
    da = DATerm(term.t, term.da)
    for dd, coefficient in dd_diff(cut, DDTerm(_dd_idempotent(cut, term), term.b, term.dd)).items():
        acted = da_act(cut, da, dd.ell)
        result += acted.map_keys(lambda h, dd=dd: RightTerm(h.t, h.x, dd.b, dd.x)).scale(coefficient)
    return result


def right_bigrade_term(cut: DoubleCut, term: RightTerm) -> Bigrade:
    return da_bigrade(cut, DATerm(term.t, term.da)) + dd_bigrade(cut, DDTerm(_dd_idempotent(cut, term), term.b, term.dd))


def corner_size(cut: DoubleCut, max_m: int | None = None) -> int:
    """Largest number of strands crossing l on the right half, capped by `max_m` or MAX_CORNER_M."""
    bound = min(cut.kp, cut.n - cut.kp)
    return min(bound, settings.MAX_CORNER_M if max_m is None else max_m)


def right_act(cut: DoubleCut, a: BoxDiagram, term: RightTerm) -> LinearCombination[RightTerm]:
    """a * ((t (.) b) (x) y): the lower piece of a acts on t, the upper on b, and the ell it leaves acts on DA."""
    pieces = strands.split(a, cut.kp)
    t = glue(pieces.top, term.t, Direction.HORIZONTAL)
    if t is None:
        return LinearCombination.zero()
    da = DATerm(t, term.da)
    dd = LinearCombination.basis(DDTerm(_dd_idempotent(cut, term), term.b, term.dd))
    result: LinearCombination[RightTerm] = LinearCombination.zero()
    for h, coefficient in dd_mul_b(cut, LinearCombination.basis(pieces.bottom), dd).items():
        acted = da_act(cut, da, h.ell)
        result += acted.map_keys(lambda g, h=h: RightTerm(g.t, g.x, h.b, h.x)).scale(coefficient)
    return result


def right_basis(cut: DoubleCut, max_m: int | None = None) -> list[RightTerm]:
    max_m = corner_size(cut, max_m)
    result = []
    height = cut.n - cut.kp
    for da in cut.generators(Quadrant.DA):
        used = {c for c in da.columns}
        free_top = set(_free_rows(cut, da, 0, cut.kp))
        for dd in cut.generators(Quadrant.DD):
            if used & dd.columns or len(used) + len(dd) != cut.n - cut.k:
                continue
            free_bottom = set(_free_rows(cut, dd, cut.kp, cut.n))
            for p in range(max_m + 1):
                tops = [t for t in strands.top_basis(cut.kp, p) if set(strands.through_map(t).values()) == free_top]
                bottoms = [
                    b
                    for b in strands.bottom_basis(height, p, base_only=True)
                    if set(strands.through_map(b).values()) | set(strands.entries(b)) == free_bottom
                ]
                result.extend(RightTerm(t, da, b, dd) for t in tops for b in bottoms)
    return sorted(result)


# ------ The full grid ------


def bitensor_diff(cut: DoubleCut, g: QuadGenerator) -> LinearCombination[QuadGenerator]:
    """d of (AA (x) AD) (x) (DA (x) DD): the left differential plus the left half acted on by the right one."""
    result = left_diff(cut, g.left).map_keys(lambda pair: QuadGenerator(pair, g.da, g.dd))
    for term, coefficient in right_diff(cut, right_generator(cut, g.da, g.dd)).items():
        acted = left_act(cut, g.left, term.t, term.b)
        result += acted.map_keys(lambda pair, term=term: QuadGenerator(pair, term.da, term.dd)).scale(coefficient)
    return result


def bitensor_bigrade(cut: DoubleCut, g: QuadGenerator) -> Bigrade:
    return left_bigrade_pair(cut, g.left) + right_bigrade_term(cut, right_generator(cut, g.da, g.dd))


# ------ Suites ------


def _params(cut: DoubleCut) -> dict[str, object]:
    return {"n": cut.n, "k": cut.k, "kp": cut.kp, "x": list(cut.grid.x_cells), "o": list(cut.grid.o_cells)}


def cpa_suite(cut: DoubleCut) -> Report:
    """AA (x)_R AD against CPA^- of the left half: generators, gradings, differential and A(N) action."""
    part = PartialGrid(cut.grid, SliceSide.A, cut.k)

    def body(report: Report) -> None:
        algebra = strands.strands_basis(cut.n, cut.k)
        for x in part.generators():
            pair = left_pair(cut, x)
            report.expect_equal(f"join {x}", join_left(pair), x)
            report.expect_equal(f"grading {x}", left_bigrade_pair(cut, pair), bigrade_partial(part, x))
            report.expect_equal(f"d {x}", left_diff(cut, pair), cpa_diff(part, x).map_keys(lambda y: left_pair(cut, y)))
            for a in algebra:
                if set(strands.through_map(a)) != x.image:
                    continue
                pieces = strands.split(a, cut.kp)
                expected = cpa_action(part, LinearCombination.basis(x), LinearCombination.basis(a))
                report.expect_equal(
                    f"{x} * {strands.format_triple(a)}",
                    left_act(cut, pair, pieces.top, pieces.bottom),
                    expected.map_keys(lambda y: left_pair(cut, y)),
                )

    return run_suite("cpa", body, **_params(cut))


def cpd_suite(cut: DoubleCut, max_m: int | None = None) -> Report:
    """DA (x)_L DD against CPD^- of the right half: gradings, differential and A(N) action."""
    part = PartialGrid(cut.grid, SliceSide.D, cut.k)

    def body(report: Report) -> None:
        algebra = strands.strands_basis(cut.n)
        for term in right_basis(cut, max_m):
            image = to_cpd(cut, term)
            if image is None:
                continue
            for a in algebra:
                if set(strands.through_map(a).values()) != set(strands.through_map(image.algebra)):
                    continue
                report.expect_equal(
                    f"{strands.format_triple(a)} * {term}",
                    right_act(cut, a, term).map_keys(lambda h: to_cpd(cut, h)),
                    cpd_left_action(part, LinearCombination.basis(a), LinearCombination.basis(image)),
                )
            report.expect_equal(f"grading {term}", right_bigrade_term(cut, term), bigrade_cpd(part, image))
            report.expect_equal(
                f"d {term}",
                right_diff(cut, term).map_keys(lambda h: to_cpd(cut, h)),
                cpd_diff(part, LinearCombination.basis(image)),
            )

    return run_suite("cpd", body, **_params(cut))


def bitensor_suite(cut: DoubleCut) -> Report:
    """The glued quadrants against CP^- of the grid: generators, gradings, differential and homology."""
    grid = cut.grid

    def body(report: Report) -> None:
        generators = grid.generators()
        grades = {}
        for x in generators:
            g = quad_generator(cut, x)
            grades[g] = bitensor_bigrade(cut, g)
            report.expect_equal(f"grading {x}", grades[g], bigrade_generator(grid, x))
            report.expect_equal(
                f"d {x}",
                bitensor_diff(cut, g),
                cp_diff(grid, x).map_keys(lambda y: quad_generator(cut, y)),
            )
        window = comparison_window(grid)
        report.check("window size", len(window) >= settings.HOMOLOGY_MIN_BIDEGREES, str(len(window)))
        homology = windowed_homology(grades, lambda g: bitensor_diff(cut, g), grid.n - 1, window)
        report.expect_equal("homology", homology, cp_homology(grid, window))

    return run_suite("bitensor", body, **_params(cut))


def bigrading_suite(cut: DoubleCut, max_m: int = 2) -> Report:
    """Additivity of the four algebra gradings under multiplication."""

    def body(report: Report) -> None:
        tops = [t for m in range(min(cut.kp, max_m) + 1) for t in strands.top_basis(cut.kp, m)]
        for t in tops:
            for t2 in tops:
                product = glue(t, t2, Direction.HORIZONTAL)
                if product is not None:
                    report.expect_equal(
                        f"T grading {strands.format_top(t)} * {strands.format_top(t2)}",
                        top_bigrade(cut, product),
                        top_bigrade(cut, t) + top_bigrade(cut, t2),
                    )
        height = cut.n - cut.kp
        bottoms = [b for m in range(min(height, max_m) + 1) for b in strands.bottom_basis(height, m)]
        for b in bottoms:
            for b2 in bottoms:
                product = glue(b, b2, Direction.HORIZONTAL)
                if product is not None:
                    report.expect_equal(
                        f"B grading {strands.format_bottom(b)} * {strands.format_bottom(b2)}",
                        bottom_bigrade(cut, product),
                        bottom_bigrade(cut, b) + bottom_bigrade(cut, b2),
                    )
        rights = [r for m in range(max_m + 1) for p in range(m + 1) for r in r_basis(cut.k, m, p)]
        for r in rights:
            for r2 in rights:
                for product, _ in vmul(LinearCombination.basis(r), LinearCombination.basis(r2)).items():
                    report.expect_equal(f"R grading {r} . {r2}", right_bigrade(cut, product), right_bigrade(cut, r) + right_bigrade(cut, r2))
        width = cut.n - cut.k
        lefts = [d for m in range(max_m + 1) for p in range(m, max_m + 1) for d in l_basis(width, m, p)]
        for d in lefts:
            for d2 in lefts:
                for product, _ in vmul(LinearCombination.basis(d), LinearCombination.basis(d2)).items():
                    report.expect_equal(f"L grading {d} . {d2}", left_bigrade(cut, product), left_bigrade(cut, d) + left_bigrade(cut, d2))

    return run_suite("bigrading", body, **_params(cut))

