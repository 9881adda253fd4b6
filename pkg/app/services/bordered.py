"""
Vertical slicing of a planar grid: CPA^- and CPD^- over A(N, k) and their pairing

The line l sits at x = k + 3/4, so columns 1..k (and the markings in cell
columns 1..k) belong to the A side and columns k+1..N to the D side.

Object          Basis                                  Structure
--------------  -------------------------------------  ------------------------------------
CPA^-(H^A)      x^A, an injection columns 1..k -> rows  right A(N,k)-module, d = rectangles
CPD^-(H^D)      a (x) x^D with T(a) = rows(x^D)^c       left A(N,k)-module, d = rectangles
                                                       plus half-strips rho_ij * y^D
CPA (x) CPD     x^A (x) x^D with complementary rows     d from the two modules, reduced

A chord acts on CPA^- through a half-strip from the moved component to l; a
general strands generator acts through its factorisation into single chords,
moving strands in order of decreasing end.
"""

import itertools
import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum

from app.core.config import settings
from app.core.exceptions import InvalidInputError
from app.core.logger import get_logger
from app.services import strands
from app.services.coeffs import ONE, LinearCombination, Polynomial, bilinear
from app.services.diagrams import BoxDiagram, Direction, glue
from app.services.gradings import Bigrade, bigrade_algebra
from app.services.gridcomplex import (
    GridDiagram,
    PlanarGenerator,
    Rectangle,
    bigrade_generator,
    bigrade_points,
    comparison_window,
    cp_diff,
    cp_homology,
    doubled_cells,
    doubled_points,
    interleaving_count,
    rect_weight,
    rectangle_between,
    u_shift,
    windowed_homology,
)
from app.services.report import Report, run_suite

logger = get_logger(__name__, logging.INFO)


class SliceSide(str, Enum):
    A = "A"
    D = "D"


@dataclass(frozen=True, order=True)
class PartialGenerator:
    """Components at (first_column + j, rows[j]) for j = 0..width-1."""

    first_column: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.rows)) != len(self.rows):
            raise InvalidInputError(f"Partial generator rows must be distinct, got {list(self.rows)}")

    @property
    def columns(self) -> range:
        return range(self.first_column, self.first_column + len(self.rows))

    @property
    def points(self) -> frozenset[tuple[int, int]]:
        return frozenset(zip(self.columns, self.rows))

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.rows)

    def row_of(self, column: int) -> int:
        return self.rows[column - self.first_column]

    def column_of(self, row: int) -> int:
        return self.first_column + self.rows.index(row)

    def with_row(self, column: int, row: int) -> "PartialGenerator":
        rows = list(self.rows)
        rows[column - self.first_column] = row
        return PartialGenerator(self.first_column, tuple(rows))

    def __str__(self) -> str:
        return f"x{self.first_column}(" + ",".join(str(r) for r in self.rows) + ")"


@dataclass(frozen=True)
class PartialGrid:
    grid: GridDiagram
    side: SliceSide
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.grid.n:
            raise InvalidInputError(f"Cut k={self.k} is outside [0, {self.grid.n}]")

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def first_column(self) -> int:
        return 1 if self.side is SliceSide.A else self.k + 1

    @property
    def width(self) -> int:
        return self.k if self.side is SliceSide.A else self.n - self.k

    def _on_side(self, column: int) -> bool:
        return column <= self.k if self.side is SliceSide.A else column > self.k

    @property
    def x_markings(self) -> list[tuple[int, int]]:
        return [cell for cell in self.grid.x_markings if self._on_side(cell[0])]

    @property
    def o_markings(self) -> list[tuple[int, int]]:
        return [cell for cell in self.grid.o_markings if self._on_side(cell[0])]

    def generators(self) -> list[PartialGenerator]:
        return [
            PartialGenerator(self.first_column, rows)
            for rows in itertools.permutations(range(1, self.n + 1), self.width)
        ]

    def complement(self, x: PartialGenerator) -> frozenset[int]:
        return frozenset(range(1, self.n + 1)) - x.image


def slice_grid(grid: GridDiagram, k: int) -> tuple[PartialGrid, PartialGrid]:
    return PartialGrid(grid, SliceSide.A, k), PartialGrid(grid, SliceSide.D, k)


def split_generator(x: PlanarGenerator, k: int) -> tuple[PartialGenerator, PartialGenerator]:
    row_of_column = {c: r for r, c in enumerate(x.w, start=1)}
    left = PartialGenerator(1, tuple(row_of_column[c] for c in range(1, k + 1)))
    right = PartialGenerator(k + 1, tuple(row_of_column[c] for c in range(k + 1, x.n + 1)))
    return left, right


def join_generators(a: PartialGenerator, d: PartialGenerator) -> PlanarGenerator | None:
    if a.image & d.image:
        return None
    column_of_row = {r: c for c, r in (*a.points, *d.points)}
    return PlanarGenerator(tuple(column_of_row[r] for r in range(1, len(column_of_row) + 1)))


# ------ Gradings ------


def _marking_rows(cells: Iterable[tuple[int, int]]) -> frozenset[int]:
    return frozenset(row for _, row in cells)


def algebra_bigrade(part: PartialGrid, a: BoxDiagram) -> Bigrade:
    """(A, mu) of a strands generator against the marking lines of the A side."""
    left = PartialGrid(part.grid, SliceSide.A, part.k)
    return bigrade_algebra(a, _marking_rows(left.x_markings), _marking_rows(left.o_markings))


def bigrade_partial(part: PartialGrid, x: PartialGenerator) -> Bigrade:
    """
    (A, mu) of a partial generator.

    The A side counts its own markings only. The D side counts every marking
    and adds I(x^A, x^D) for some extension x^A, which depends only on the rows
    left free by x^D.
    """
    points = doubled_points(x.points)
    if part.side is SliceSide.A:
        return bigrade_points(doubled_cells(part.x_markings), doubled_cells(part.o_markings), points)
    extension = PartialGenerator(1, tuple(sorted(part.complement(x))))
    base = bigrade_points(doubled_cells(part.grid.x_markings), doubled_cells(part.grid.o_markings), points)
    return base + Bigrade(0, interleaving_count(doubled_points(extension.points), points))


# ------ Rectangles and half-strips ------


@dataclass(frozen=True)
class HalfStrip:
    column: int
    start: int
    end: int
    weight: Polynomial


def _partial_rectangles(part: PartialGrid, x: PartialGenerator) -> list[tuple[PartialGenerator, Polynomial]]:
    """X-free empty rectangles inside one side, with their U-weights."""
    result = []
    for c1, c2 in itertools.combinations(x.columns, 2):
        y = x.with_row(c1, x.row_of(c2)).with_row(c2, x.row_of(c1))
        rect = rectangle_between(x.points, y.points)
        if rect is None:
            continue
        x_count, weight = rect_weight(part.grid, rect)
        if x_count == 0:
            result.append((y, weight))
    return result


def _moved_column(x: PartialGenerator, y: PartialGenerator) -> int | None:
    if x.first_column != y.first_column or len(x.rows) != len(y.rows):
        return None
    moved = [c for c in x.columns if x.row_of(c) != y.row_of(c)]
    return moved[0] if len(moved) == 1 else None


def _strip(part: PartialGrid, x: PartialGenerator, y: PartialGenerator, blocking: Rectangle, cells: Rectangle) -> Polynomial | None:
    if any(blocking.contains_point(p) for p in x.points & y.points):
        return None
    x_count, weight = rect_weight(part.grid, cells)
    return None if x_count else weight


def half_strip_a(part: PartialGrid, x: PartialGenerator, y: PartialGenerator, i: int, j: int) -> HalfStrip | None:
    """The strip from the segment (c, i)-(c, j) rightwards to l, moving a component of x up from i to j."""
    if i >= j:
        raise InvalidInputError(f"Half-strip needs i < j, got {i}, {j}")
    column = _moved_column(x, y)
    if column is None or x.row_of(column) != i or y.row_of(column) != j:
        return None
    region = Rectangle(column, i, part.k + 1, j)
    weight = _strip(part, x, y, region, region)
    return None if weight is None else HalfStrip(column, i, j, weight)


def half_strip_d(part: PartialGrid, x: PartialGenerator, y: PartialGenerator, i: int, j: int) -> HalfStrip | None:
    """The strip from l rightwards to the segment (c, i)-(c, j), moving a component of x down from j to i."""
    if i >= j:
        raise InvalidInputError(f"Half-strip needs i < j, got {i}, {j}")
    column = _moved_column(x, y)
    if column is None or x.row_of(column) != j or y.row_of(column) != i:
        return None
    weight = _strip(part, x, y, Rectangle(part.k, i, column, j), Rectangle(part.k + 1, i, column, j))
    return None if weight is None else HalfStrip(column, i, j, weight)


# ------ CPA^- ------


def cpa_diff(part: PartialGrid, x: PartialGenerator) -> LinearCombination[PartialGenerator]:
    return LinearCombination.from_terms(_partial_rectangles(part, x))


def cpa_diff_lc(part: PartialGrid, a: LinearCombination[PartialGenerator]) -> LinearCombination[PartialGenerator]:
    return a.map_linear(lambda x: cpa_diff(part, x))


def cpa_act(part: PartialGrid, x: PartialGenerator, a: BoxDiagram) -> tuple[PartialGenerator, Polynomial] | None:
    """x * a for one strands generator; zero unless the left idempotent of a is I_{rows(x)}."""
    phi = strands.through_map(a)
    if set(phi) != x.image:
        return None
    current, weight = x, ONE
    for start, end in sorted(((s, e) for s, e in phi.items() if s != e), key=lambda move: -move[1]):
        column = current.column_of(start)
        target = current.with_row(column, end)
        strip = half_strip_a(part, current, target, start, end)
        if strip is None:
            return None
        current, weight = target, weight * strip.weight
    return current, weight


def cpa_action(
    part: PartialGrid,
    x: LinearCombination[PartialGenerator],
    a: LinearCombination[BoxDiagram],
) -> LinearCombination[PartialGenerator]:
    def act(g: PartialGenerator, d: BoxDiagram) -> LinearCombination[PartialGenerator] | None:
        result = cpa_act(part, g, d)
        return None if result is None else LinearCombination.basis(*result)

    return bilinear(x, a, act)


# ------ CPD^- ------


@dataclass(frozen=True, order=True)
class CPDTerm:
    """The basis element a (x) x^D of CPD^-."""

    algebra: BoxDiagram
    generator: PartialGenerator

    def __str__(self) -> str:
        return f"[{strands.format_triple(self.algebra)}] (x) {self.generator}"


def _right_set(a: BoxDiagram) -> frozenset[int]:
    return frozenset(strands.through_map(a).values())


def cpd_generator(part: PartialGrid, x: PartialGenerator) -> LinearCombination[CPDTerm]:
    """x^D itself, i.e. I_S (x) x^D with S the rows x^D leaves free."""
    idempotent = strands.triple(part.n, {s: s for s in part.complement(x)})
    return LinearCombination.basis(CPDTerm(idempotent, x))


def cpd_basis(part: PartialGrid) -> list[CPDTerm]:
    basis = []
    algebra = strands.strands_basis(part.n, part.k)
    for x in part.generators():
        free = part.complement(x)
        basis.extend(CPDTerm(a, x) for a in algebra if _right_set(a) == free)
    return sorted(basis)


def cpd_left_action(
    part: PartialGrid,
    a: LinearCombination[BoxDiagram],
    m: LinearCombination[CPDTerm],
) -> LinearCombination[CPDTerm]:
    def act(d: BoxDiagram, term: CPDTerm) -> LinearCombination[CPDTerm] | None:
        product = glue(d, term.algebra, Direction.HORIZONTAL)
        return None if product is None else LinearCombination.basis(CPDTerm(product, term.generator))

    return bilinear(a, m, act)


def cpd_diff_generator(part: PartialGrid, x: PartialGenerator) -> LinearCombination[CPDTerm]:
    """Rectangles inside H^D plus U(H) rho_ij * y^D over the X-free half-strips."""
    terms = []
    for y, weight in _partial_rectangles(part, x):
        terms.extend(cpd_generator(part, y).scale(weight).items())
    free = part.complement(x)
    for column in x.columns:
        j = x.row_of(column)
        for i in range(1, j):
            if i not in free:
                continue
            y = x.with_row(column, i)
            strip = half_strip_d(part, x, y, i, j)
            if strip is None:
                continue
            chord = strands.triple(part.n, {**{s: s for s in free if s != i}, i: j})
            terms.append((CPDTerm(chord, y), strip.weight))
    return LinearCombination.from_terms(terms)


def cpd_diff(part: PartialGrid, m: LinearCombination[CPDTerm]) -> LinearCombination[CPDTerm]:
    def on_term(term: CPDTerm) -> LinearCombination[CPDTerm]:
        algebra = LinearCombination.basis(term.algebra)
        d_algebra = strands.strands_diff(algebra).map_keys(lambda b: CPDTerm(b, term.generator))
        return d_algebra + cpd_left_action(part, algebra, cpd_diff_generator(part, term.generator))

    return m.map_linear(on_term)


def bigrade_cpd(part: PartialGrid, term: CPDTerm) -> Bigrade:
    return algebra_bigrade(part, term.algebra) + bigrade_partial(part, term.generator)


# ------ The pairing ------


@dataclass(frozen=True, order=True)
class PairedGenerator:
    """x^A (x) x^D in CPA^- (x)_A CPD^-."""

    a: PartialGenerator
    d: PartialGenerator

    def __str__(self) -> str:
        return f"{self.a} (x) {self.d}"


def paired_generators(left: PartialGrid, right: PartialGrid) -> list[PairedGenerator]:
    return [
        PairedGenerator(a, d)
        for a in left.generators()
        for d in right.generators()
        if not a.image & d.image
    ]


def box_tensor_diff(left: PartialGrid, right: PartialGrid, p: PairedGenerator) -> LinearCombination[PairedGenerator]:
    """
    d(x^A (x) x^D) = dx^A (x) x^D + x^A (x) d(x^D), with every term a (x) y^D of
    the second sum reduced to (x^A * a) (x) y^D.
    """
    result = cpa_diff(left, p.a).map_keys(lambda y: PairedGenerator(y, p.d))
    for term, coefficient in cpd_diff(right, cpd_generator(right, p.d)).items():
        acted = cpa_action(left, LinearCombination.basis(p.a), LinearCombination.basis(term.algebra))
        result = result + acted.map_keys(lambda y, d=term.generator: PairedGenerator(y, d)).scale(coefficient)
    return result


def pairing_lot2(grid: GridDiagram, k: int) -> Report:
    """CP^-(H) against CPA^-(H^A) (x) CPD^-(H^D): generators, bigrades, differentials, homology."""
    left, right = slice_grid(grid, k)

    def body(report: Report) -> None:
        pairs = paired_generators(left, right)
        report.expect_equal("generator count", len(pairs), math.factorial(grid.n))
        for x in grid.generators():
            a, d = split_generator(x, k)
            p = PairedGenerator(a, d)
            report.expect_equal(f"join {x}", join_generators(a, d), x)
            report.expect_equal(f"bigrade {x}", bigrade_partial(left, a) + bigrade_partial(right, d), bigrade_generator(grid, x))
            image = cp_diff(grid, x).map_keys(lambda y: PairedGenerator(*split_generator(y, k)))
            report.expect_equal(f"d {x}", box_tensor_diff(left, right, p), image, rendering=str(p))

        window = comparison_window(grid)
        report.check("window size", len(window) >= settings.HOMOLOGY_MIN_BIDEGREES, str(len(window)))
        grades = {p: bigrade_partial(left, p.a) + bigrade_partial(right, p.d) for p in pairs}
        tensor_homology = windowed_homology(grades, lambda p: box_tensor_diff(left, right, p), grid.n - 1, window)
        report.expect_equal("homology", tensor_homology, cp_homology(grid, window))

    return run_suite("lot2", body, n=grid.n, k=k, x=list(grid.x_cells), o=list(grid.o_cells))


# ------ Module suites ------


def cpa_module_suite(grid: GridDiagram, k: int) -> Report:
    """d^2 = 0, gradings, idempotents, single-term chord action, associativity and Leibniz on CPA^-."""
    part = PartialGrid(grid, SliceSide.A, k)
    algebra = strands.strands_basis(grid.n, k)

    def body(report: Report) -> None:
        for x in part.generators():
            gx = LinearCombination.basis(x)
            grade = bigrade_partial(part, x)
            dx = cpa_diff(part, x)
            report.check(f"d^2 {x}", cpa_diff_lc(part, dx).is_zero)
            for y, weight in dx.items():
                for monomial in weight.monomials:
                    report.expect_equal(f"d grading {x} -> {y}", u_shift(bigrade_partial(part, y), monomial.degree), grade - Bigrade(0, 1))
            for subset in itertools.combinations(range(1, grid.n + 1), k):
                acted = cpa_action(part, gx, strands.idempotent(grid.n, subset))
                report.expect_equal(f"{x} * I{set(subset)}", acted, gx if set(subset) == x.image else LinearCombination.zero())
            for a in algebra:
                ga = LinearCombination.basis(a)
                xa = cpa_action(part, gx, ga)
                report.check(f"single term {x} * {a}", len(xa) <= 1)
                for y, weight in xa.items():
                    for monomial in weight.monomials:
                        expected = grade + algebra_bigrade(part, a)
                        report.expect_equal(f"action grading {x} * {a}", u_shift(bigrade_partial(part, y), monomial.degree), expected)
                leibniz = cpa_action(part, dx, ga) + cpa_action(part, gx, strands.strands_diff(ga))
                report.expect_equal(f"Leibniz {x} * {a}", cpa_diff_lc(part, xa), leibniz)
                if strands.through_map(a).keys() != x.image:
                    continue
                for b in algebra:
                    gb = LinearCombination.basis(b)
                    report.expect_equal(
                        f"associative {x} * {a} * {b}",
                        cpa_action(part, xa, gb),
                        cpa_action(part, gx, strands.strands_mul(ga, gb)),
                    )

    return run_suite("cpa-module", body, n=grid.n, k=k, x=list(grid.x_cells), o=list(grid.o_cells))


def cpd_module_suite(grid: GridDiagram, k: int, leibniz: bool | None = None) -> Report:
    """d^2 = 0, closure of the basis, gradings and (for N <= 3 by default) Leibniz on CPD^-."""
    part = PartialGrid(grid, SliceSide.D, k)
    if leibniz is None:
        leibniz = grid.n <= 3
    algebra = strands.strands_basis(grid.n, k)

    def body(report: Report) -> None:
        for m in cpd_basis(part):
            gm = LinearCombination.basis(m)
            dm = cpd_diff(part, gm)
            report.check(f"d^2 {m}", cpd_diff(part, dm).is_zero, str(cpd_diff(part, dm)))
            grade = bigrade_cpd(part, m)
            for term, weight in dm.items():
                report.check(f"basis closure {term}", _right_set(term.algebra) == part.complement(term.generator))
                for monomial in weight.monomials:
                    report.expect_equal(f"d grading {m} -> {term}", u_shift(bigrade_cpd(part, term), monomial.degree), grade - Bigrade(0, 1))
            if not leibniz:
                continue
            for b in algebra:
                gb = LinearCombination.basis(b)
                bm = cpd_left_action(part, gb, gm)
                if bm.is_zero:
                    continue
                expected = cpd_left_action(part, strands.strands_diff(gb), gm) + cpd_left_action(part, gb, dm)
                report.expect_equal(f"Leibniz {b} * {m}", cpd_diff(part, bm), expected)

    return run_suite("cpd-module", body, n=grid.n, k=k, x=list(grid.x_cells), o=list(grid.o_cells))
