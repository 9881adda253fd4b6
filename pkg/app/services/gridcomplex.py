"""
Planar grid diagrams and the planar Floer complex CP^-

A grid of size N has horizontal lines y = 1..N and vertical lines x = 1..N.
Cell-row r (1..N-1) is the strip between y = r and y = r + 1, rows counted
bottom to top; `x_cells[r-1]` and `o_cells[r-1]` are the columns of the X and O
in that row. The O in row r carries the variable U_r.

A planar generator is a permutation w with components at (w(i), i). Markings
sit at cell centres; rectangles are open, so all containment tests are done in
doubled integer coordinates.

The nilCoxeter grid model C(m) draws its alpha lines top to bottom; it is the
unmarked grid read with the rows reversed, see `nilcox_generator`.
"""

import itertools
import logging
from collections import defaultdict
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from app.core.config import settings
from app.core.exceptions import ChainComplexError, InvalidInputError
from app.core.logger import get_logger
from app.services.coeffs import (
    F2Matrix,
    LinearCombination,
    Monomial,
    Polynomial,
    chain_complex_dims,
    complex_homology_dims,
)
from app.services.diagrams import NilCoxGen, inversions, nc_basis
from app.services.gradings import U_BIGRADE, Bigrade
from app.services.report import Report, run_suite

logger = get_logger(__name__, logging.INFO)

Point = tuple[int, int]


def _check_permutation_of(values: Sequence[int], size: int, name: str) -> tuple[int, ...]:
    values = tuple(values)
    if sorted(values) != list(range(1, size + 1)):
        raise InvalidInputError(f"{name} must be a permutation of 1..{size}, got {list(values)}")
    return values


@dataclass(frozen=True)
class GridDiagram:
    n: int
    x_cells: tuple[int, ...]
    o_cells: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidInputError(f"Grid size must be at least 1, got {self.n}")
        object.__setattr__(self, "x_cells", _check_permutation_of(self.x_cells, self.n - 1, "X columns"))
        object.__setattr__(self, "o_cells", _check_permutation_of(self.o_cells, self.n - 1, "O columns"))

    @classmethod
    def from_mapping(cls, data: Mapping[str, object]) -> "GridDiagram":
        """Parse `{"n": 3, "x": [..], "o": [..]}` with 1-based columns."""
        try:
            n = int(data["n"])  # type: ignore[call-overload]
            x = [int(c) for c in data["x"]]  # type: ignore[attr-defined]
            o = [int(c) for c in data["o"]]  # type: ignore[attr-defined]
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInputError(f"Malformed grid: {e}")
        return cls(n, tuple(x), tuple(o))

    def to_mapping(self) -> dict[str, object]:
        return {"n": self.n, "x": list(self.x_cells), "o": list(self.o_cells)}

    @property
    def x_markings(self) -> list[tuple[int, int]]:
        """X markings as (column, row) cells."""
        return [(c, r) for r, c in enumerate(self.x_cells, start=1)]

    @property
    def o_markings(self) -> list[tuple[int, int]]:
        """O markings as (column, row) cells; the O of row r carries U_r."""
        return [(c, r) for r, c in enumerate(self.o_cells, start=1)]

    def generators(self) -> list["PlanarGenerator"]:
        return [PlanarGenerator(w) for w in itertools.permutations(range(1, self.n + 1))]


@dataclass(frozen=True, order=True)
class PlanarGenerator:
    """Components at (w(i), i): row i meets column w(i)."""

    w: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", _check_permutation_of(self.w, len(self.w), "Generator"))

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def points(self) -> frozenset[Point]:
        return frozenset((c, r) for r, c in enumerate(self.w, start=1))

    def __str__(self) -> str:
        return "x(" + ",".join(str(c) for c in self.w) + ")"


def nilcox_generator(w: Sequence[int]) -> PlanarGenerator:
    """The generator x_w of C(m): alpha_i counted from the top is row m + 1 - i."""
    return PlanarGenerator(tuple(reversed(tuple(w))))


def nilcox_permutation(x: PlanarGenerator) -> tuple[int, ...]:
    return tuple(reversed(x.w))


# ------ Rectangles ------


@dataclass(frozen=True)
class Rectangle:
    """Open rectangle (left, right) x (bottom, top) between lattice points."""

    left: int
    bottom: int
    right: int
    top: int

    def contains_point(self, point: Point) -> bool:
        px, py = point
        return self.left < px < self.right and self.bottom < py < self.top

    def contains_cell(self, cell: tuple[int, int]) -> bool:
        col, row = cell
        return self.left <= col < self.right and self.bottom <= row < self.top

    @property
    def rows(self) -> range:
        return range(self.bottom, self.top)

    def __str__(self) -> str:
        return f"[{self.left},{self.right}]x[{self.bottom},{self.top}]"


def rectangle_between(x_points: Iterable[Point], y_points: Iterable[Point]) -> Rectangle | None:
    """
    The empty rectangle from x to y on arbitrary point sets, or None.

    x and y must differ in exactly two points each; the lower-left and
    upper-right corners belong to x, the other two to y, and no shared point
    lies in the interior.
    """
    xs, ys = frozenset(x_points), frozenset(y_points)
    only_x, only_y = sorted(xs - ys), ys - xs
    if len(only_x) != 2 or len(only_y) != 2:
        return None
    (a, b), (c, d) = only_x
    if not (a < c and b < d):
        return None
    if only_y != {(a, d), (c, b)}:
        return None
    rect = Rectangle(a, b, c, d)
    if any(rect.contains_point(p) for p in xs & ys):
        return None
    return rect


def empty_rectangles(x: PlanarGenerator, y: PlanarGenerator) -> list[Rectangle]:
    if x.n != y.n:
        raise InvalidInputError(f"Generators of different sizes: {x} and {y}")
    rect = rectangle_between(x.points, y.points)
    return [] if rect is None else [rect]


def _swaps(x: PlanarGenerator) -> Iterable[PlanarGenerator]:
    """Every generator differing from x in exactly two rows."""
    for i, j in itertools.combinations(range(x.n), 2):
        w = list(x.w)
        w[i], w[j] = w[j], w[i]
        yield PlanarGenerator(tuple(w))


def outgoing_rectangles(x: PlanarGenerator) -> list[tuple[PlanarGenerator, Rectangle]]:
    result = []
    for y in _swaps(x):
        for rect in empty_rectangles(x, y):
            result.append((y, rect))
    return result


def _u_product(rows: Iterable[int], variables: int) -> Polynomial:
    return Polynomial.monomial(Monomial.of({r: 1 for r in rows}, variables))


def rect_weight(grid: GridDiagram, rect: Rectangle) -> tuple[int, Polynomial]:
    """(number of X markings inside, U-monomial of the O markings inside)."""
    x_count = sum(1 for cell in grid.x_markings if rect.contains_cell(cell))
    o_rows = [row for col, row in grid.o_markings if rect.contains_cell((col, row))]
    return x_count, _u_product(o_rows, grid.n - 1)


def cp_diff(grid: GridDiagram, x: PlanarGenerator) -> LinearCombination[PlanarGenerator]:
    """Sum of U(R) y over the X-free empty rectangles R from x to y."""
    if x.n != grid.n:
        raise InvalidInputError(f"Generator {x} does not fit a grid of size {grid.n}")
    terms = []
    for y, rect in outgoing_rectangles(x):
        x_count, weight = rect_weight(grid, rect)
        if x_count == 0:
            terms.append((y, weight))
    return LinearCombination.from_terms(terms)


def cp_diff_lc(grid: GridDiagram, a: LinearCombination[PlanarGenerator]) -> LinearCombination[PlanarGenerator]:
    return a.map_linear(lambda x: cp_diff(grid, x))


def rectangle_diff(x: PlanarGenerator) -> LinearCombination[PlanarGenerator]:
    """Differential counting every empty rectangle, markings ignored."""
    return LinearCombination.from_keys(y for y, _ in outgoing_rectangles(x))


# ------ Gradings ------


def doubled_points(points: Iterable[Point]) -> list[Point]:
    return [(2 * px, 2 * py) for px, py in points]


def doubled_cells(cells: Iterable[tuple[int, int]]) -> list[Point]:
    return [(2 * c + 1, 2 * r + 1) for c, r in cells]


def interleaving_count(e: Sequence[Point], f: Sequence[Point]) -> int:
    """I(E, F): pairs (e, f) with e below and to the left of f."""
    return sum(1 for e1, e2 in e for f1, f2 in f if e1 < f1 and e2 < f2)


def bigrade_points(x_marks: Sequence[Point], o_marks: Sequence[Point], points: Sequence[Point]) -> Bigrade:
    """(A, mu) of a point set against doubled marking centres; all inputs doubled."""
    alexander = interleaving_count(x_marks, points) - interleaving_count(o_marks, points)
    maslov = interleaving_count(points, points) - 2 * interleaving_count(o_marks, points)
    return Bigrade(alexander, maslov)


def bigrade_generator(grid: GridDiagram, x: PlanarGenerator) -> Bigrade:
    return bigrade_points(
        doubled_cells(grid.x_markings),
        doubled_cells(grid.o_markings),
        doubled_points(x.points),
    )


def u_shift(g: Bigrade, degree: int) -> Bigrade:
    """The bigrade of U^m * x for a monomial of total degree `degree`."""
    return Bigrade(g.alexander + degree * U_BIGRADE.alexander, g.maslov + degree * U_BIGRADE.maslov)


def bigrade_term(grid: GridDiagram, x: PlanarGenerator, monomial: Monomial) -> Bigrade:
    return u_shift(bigrade_generator(grid, x), monomial.degree)


# ------ Homology in bidegree windows ------


@dataclass(frozen=True, order=True)
class WindowTerm:
    """Basis element U^m * x of one bidegree slice."""

    generator: Any
    monomial: Monomial

    def __str__(self) -> str:
        return f"{self.monomial}*{self.generator}" if self.monomial.exponents else str(self.generator)


def _monomials(variables: int, degree: int) -> list[Monomial]:
    result = []
    for combo in itertools.combinations_with_replacement(range(1, variables + 1), degree):
        powers: dict[int, int] = defaultdict(int)
        for index in combo:
            powers[index] += 1
        result.append(Monomial.of(powers, variables))
    return result


def window_basis(grades: Mapping[Any, Bigrade], variables: int, target: Bigrade) -> list[WindowTerm]:
    """The F2 basis U^m * x in bigrade `target` of a free complex over F2[U1..U_variables]."""
    basis = []
    for x, g in grades.items():
        degree = g.alexander - target.alexander
        if degree < 0 or g.maslov - 2 * degree != target.maslov:
            continue
        basis.extend(WindowTerm(x, m) for m in _monomials(variables, degree))
    return sorted(basis)


def _slice_matrix(diff: Callable[[Any], LinearCombination[Any]], source: Sequence[WindowTerm], target: Sequence[WindowTerm]) -> F2Matrix:
    index = {term: i for i, term in enumerate(target)}
    entries: set[tuple[int, int]] = set()
    for col, term in enumerate(source):
        for y, weight in diff(term.generator).items():
            for monomial in weight.monomials:
                image = WindowTerm(y, monomial * term.monomial)
                row = index.get(image)
                if row is None:
                    raise ChainComplexError(f"Differential of {term} leaves its bidegree slice: {image}")
                entries ^= {(row, col)}
    return F2Matrix(len(target), len(source), frozenset(entries))


def windowed_homology(
    grades: Mapping[Any, Bigrade],
    diff: Callable[[Any], LinearCombination[Any]],
    variables: int,
    window: Iterable[Bigrade],
) -> dict[Bigrade, int]:
    """Homology dimensions, bigrade by bigrade, of a free bigraded complex over F2[U]."""
    result = {}
    for target in sorted(set(window)):
        above = window_basis(grades, variables, target + Bigrade(0, 1))
        here = window_basis(grades, variables, target)
        below = window_basis(grades, variables, target - Bigrade(0, 1))
        boundaries = [_slice_matrix(diff, here, below), _slice_matrix(diff, above, here)]
        result[target] = complex_homology_dims(boundaries)[0]
    return result


def cp_homology(grid: GridDiagram, window: Iterable[Bigrade]) -> dict[Bigrade, int]:
    """F2 dimension of H(CP^-) in each requested bigrade."""
    grades = {x: bigrade_generator(grid, x) for x in grid.generators()}
    result = windowed_homology(grades, lambda x: cp_diff(grid, x), grid.n - 1, window)
    logger.debug(f"CP^- homology of {grid.to_mapping()}: {result}")
    return result


def default_window(grid: GridDiagram, max_u: int = 0) -> list[Bigrade]:
    """Generator bigrades and their U^d-shifts for d <= max_u."""
    grades = {bigrade_generator(grid, x) for x in grid.generators()}
    return sorted({u_shift(g, d) for g in grades for d in range(max_u + 1)})


def comparison_window(grid: GridDiagram, max_u: int | None = None, minimum: int | None = None) -> list[Bigrade]:
    """`default_window` with max_u raised until it holds at least `minimum` bigrades.

    Each extra U-power reaches a Maslov degree below every earlier one, so the loop ends.
    """
    max_u = settings.HOMOLOGY_WINDOW // 2 if max_u is None else max_u
    minimum = settings.HOMOLOGY_MIN_BIDEGREES if minimum is None else minimum
    window = default_window(grid, max_u)
    while len(window) < minimum:
        max_u += 1
        window = default_window(grid, max_u)
    return window


# ------ Verification ------


def _scan_interior(rect: Rectangle, shared: Iterable[Point]) -> bool:
    """Independent emptiness test: walk every lattice point strictly inside."""
    inside = {(px, py) for px in range(rect.left + 1, rect.right) for py in range(rect.bottom + 1, rect.top)}
    return not (inside & set(shared))


def _scan_cells(grid: GridDiagram, rect: Rectangle) -> tuple[int, Polynomial]:
    x_cols = dict(enumerate(grid.x_cells, start=1))
    o_cols = dict(enumerate(grid.o_cells, start=1))
    x_count, o_rows = 0, []
    for row in rect.rows:
        for col in range(rect.left, rect.right):
            x_count += x_cols[row] == col
            if o_cols[row] == col:
                o_rows.append(row)
    return x_count, _u_product(o_rows, grid.n - 1)


def grid_suite(grid: GridDiagram) -> Report:
    """d^2 = 0, bigrading, rectangle emptiness and domain consistency on one grid."""

    def body(report: Report) -> None:
        generators = grid.generators()
        grades = {x: bigrade_generator(grid, x) for x in generators}
        for x in generators:
            points = doubled_points(x.points)
            non_inversions = x.n * (x.n - 1) // 2 - inversions(x.w)
            report.expect_equal(f"I(x,x) of {x}", interleaving_count(points, points), non_inversions)
            dx = cp_diff(grid, x)
            report.check(f"d^2 {x}", cp_diff_lc(grid, dx).is_zero, str(cp_diff_lc(grid, dx)))
            for y, weight in dx.items():
                for monomial in weight.monomials:
                    report.expect_equal(f"d grading {x} -> {y}", bigrade_term(grid, y, monomial), grades[x] - Bigrade(0, 1))
            paths: dict[PlanarGenerator, set[tuple[int, Polynomial]]] = defaultdict(set)
            for y, rect in outgoing_rectangles(x):
                shared = x.points & y.points
                report.check(f"empty {x} -> {y}", _scan_interior(rect, shared), str(rect))
                report.expect_equal(f"weight {x} -> {y}", rect_weight(grid, rect), _scan_cells(grid, rect))
                first = rect_weight(grid, rect)
                for z, second_rect in outgoing_rectangles(y):
                    second = rect_weight(grid, second_rect)
                    paths[z].add((first[0] + second[0], first[1] * second[1]))
            for z, weights in paths.items():
                report.expect_equal(f"domain {x} -> {z}", len(weights), 1)

    return run_suite("grid", body, n=grid.n, x=list(grid.x_cells), o=list(grid.o_cells))


def all_grids(n: int) -> Iterable[GridDiagram]:
    for x in itertools.permutations(range(1, n)):
        for o in itertools.permutations(range(1, n)):
            yield GridDiagram(n, x, o)


def c_m_homology(m: int) -> list[int]:
    """Homology of the rectangle complex C(m) graded by mu = I(x, x)."""
    graded: dict[int, list[PlanarGenerator]] = defaultdict(list)
    for g in nc_basis(m):
        graded[g.length].append(nilcox_generator(g.w))
    for d in range(m * (m - 1) // 2 + 1):
        graded.setdefault(d, [])
    dims = chain_complex_dims(graded, rectangle_diff)
    return [dims[d] for d in sorted(dims)]


# the example pair drawn for C(6)
EXAMPLE_SOURCE = (3, 1, 5, 6, 2, 4)
EXAMPLE_TARGET = (3, 1, 2, 6, 5, 4)


def nilcoxeter_grid_iso(m: int) -> Report:
    """x_w -> sigma_w carries the rectangle differential to the Bruhat differential and mu to cr."""

    def body(report: Report) -> None:
        for g in nc_basis(m):
            x = nilcox_generator(g.w)
            points = doubled_points(x.points)
            report.expect_equal(f"mu = cr for {g}", interleaving_count(points, points), g.length)
            image = rectangle_diff(x).map_keys(lambda y: NilCoxGen(nilcox_permutation(y)))
            report.expect_equal(f"d of {g}", image, g.differential())
        report.check(
            "drawn rectangle",
            len(empty_rectangles(nilcox_generator(EXAMPLE_SOURCE), nilcox_generator(EXAMPLE_TARGET))) == 1,
        )
        expected = [1] if m <= 1 else [0] * (m * (m - 1) // 2 + 1)
        report.expect_equal("homology of C(m)", c_m_homology(m), expected)

    return run_suite("grid-nilcoxeter", body, m=m)
