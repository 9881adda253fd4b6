"""
Cutting a planar grid into four quadrants

The vertical line l sits at x = k + 3/4 and the horizontal line l' at
y = k' + 3/4, so cell column k belongs to the left half and cell row k' to the
lower half:

    +------------+------------+
    |  AD        |  DD        |   rows k'+1..N
    |  cols<=k   |  cols>k    |
    +----- l' ---+------------+
    |  AA        |  DA        |   rows 1..k'
    |            |            |
    +------------+--- l ------+

Gradings use quadrupled coordinates: a lattice point (c, r) becomes (4c, 4r), a
marking in cell (c, r) becomes (4c+2, 4r+2), and points on l or l' use 4k+3 or
4k'+3 for the coordinate they sit at.

The algebras along the cuts are T(k') and B(N-k') on l (rows, the second one
renumbered from 1) and R(k) and L(N-k) on l' (columns, L renumbered from 1).
"""

import itertools
import logging
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from app.core.exceptions import InvalidInputError
from app.core.logger import get_logger
from app.services.coeffs import Polynomial
from app.services.cornered.ralgebra import l_parts, r_parts
from app.services.diagrams import BoxDiagram, Edge
from app.services.gradings import Bigrade, bigrade_algebra
from app.services.gridcomplex import GridDiagram, Rectangle, interleaving_count, rect_weight, rectangle_between

logger = get_logger(__name__, logging.INFO)

Point = tuple[int, int]


class Quadrant(str, Enum):
    AA = "AA"
    AD = "AD"
    DA = "DA"
    DD = "DD"

    @property
    def left(self) -> bool:
        return self in (Quadrant.AA, Quadrant.AD)

    @property
    def lower(self) -> bool:
        return self in (Quadrant.AA, Quadrant.DA)


@dataclass(frozen=True, order=True)
class QuadrantGenerator:
    """A partial matching of columns and rows inside one quadrant, as (column, row) points."""

    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        columns = [c for c, _ in self.points]
        rows = [r for _, r in self.points]
        if len(set(columns)) != len(columns) or len(set(rows)) != len(rows):
            raise InvalidInputError(f"Points {list(self.points)} share a row or a column")

    @classmethod
    def of(cls, points: Iterable[Point]) -> "QuadrantGenerator":
        return cls(tuple(sorted(points)))

    @cached_property
    def columns(self) -> frozenset[int]:
        return frozenset(c for c, _ in self.points)

    @cached_property
    def rows(self) -> frozenset[int]:
        return frozenset(r for _, r in self.points)

    def row_of(self, column: int) -> int:
        return next(r for c, r in self.points if c == column)

    def column_of(self, row: int) -> int:
        return next(c for c, r in self.points if r == row)

    def moved(self, old: Point, new: Point) -> "QuadrantGenerator":
        return QuadrantGenerator.of([p for p in self.points if p != old] + [new])

    def added(self, point: Point) -> "QuadrantGenerator":
        return QuadrantGenerator.of([*self.points, point])

    def removed(self, point: Point) -> "QuadrantGenerator":
        return QuadrantGenerator.of(p for p in self.points if p != point)

    def __len__(self) -> int:
        return len(self.points)

    def __str__(self) -> str:
        return "{" + " ".join(f"({c},{r})" for c, r in self.points) + "}"


@dataclass(frozen=True)
class DoubleCut:
    grid: GridDiagram
    k: int
    kp: int

    def __post_init__(self) -> None:
        for name, value in (("k", self.k), ("k'", self.kp)):
            if not 0 <= value <= self.grid.n:
                raise InvalidInputError(f"Cut {name}={value} is outside [0, {self.grid.n}]")

    @property
    def n(self) -> int:
        return self.grid.n

    def columns(self, quadrant: Quadrant) -> range:
        return range(1, self.k + 1) if quadrant.left else range(self.k + 1, self.n + 1)

    def rows(self, quadrant: Quadrant) -> range:
        return range(1, self.kp + 1) if quadrant.lower else range(self.kp + 1, self.n + 1)

    def contains(self, quadrant: Quadrant, cell: Point) -> bool:
        col, row = cell
        return col in self.columns(quadrant) and row in self.rows(quadrant)

    def x_markings(self, *quadrants: Quadrant) -> list[Point]:
        return [cell for cell in self.grid.x_markings if any(self.contains(q, cell) for q in quadrants)]

    def o_markings(self, *quadrants: Quadrant) -> list[Point]:
        return [cell for cell in self.grid.o_markings if any(self.contains(q, cell) for q in quadrants)]

    def generators(self, quadrant: Quadrant) -> list[QuadrantGenerator]:
        columns, rows = self.columns(quadrant), self.rows(quadrant)
        result = []
        for size in range(min(len(columns), len(rows)) + 1):
            for chosen in itertools.combinations(columns, size):
                for image in itertools.permutations(rows, size):
                    result.append(QuadrantGenerator.of(zip(chosen, image)))
        return sorted(result)

    def local_column(self, column: int) -> int:
        return column - self.k

    def local_row(self, row: int) -> int:
        return row - self.kp

    def __str__(self) -> str:
        return f"N={self.n} k={self.k} k'={self.kp}"


# ------ Regions ------


def region_weight(
    cut: DoubleCut,
    left: int | None,
    bottom: int | None,
    right: int | None,
    top: int | None,
    blockers: Iterable[Point] = (),
) -> Polynomial | None:
    """
    U-weight of an X-free region with no blocker in its interior, else None.

    A None bound is a cut line: left/right stands for l, bottom/top for l'.
    """
    points = Rectangle(
        cut.k if left is None else left,
        cut.kp if bottom is None else bottom,
        cut.k + 1 if right is None else right,
        cut.kp + 1 if top is None else top,
    )
    cells = Rectangle(
        cut.k + 1 if left is None else left,
        cut.kp + 1 if bottom is None else bottom,
        cut.k + 1 if right is None else right,
        cut.kp + 1 if top is None else top,
    )
    if points.left >= points.right or points.bottom >= points.top:
        return None
    if any(points.contains_point(p) for p in blockers):
        return None
    x_count, weight = rect_weight(cut.grid, cells)
    return None if x_count else weight


def quadrant_rectangles(cut: DoubleCut, x: QuadrantGenerator) -> list[tuple[QuadrantGenerator, Polynomial]]:
    """X-free empty rectangles with both x-corners in the quadrant of x."""
    result = []
    for (c1, r1), (c2, r2) in itertools.combinations(x.points, 2):
        if not (c1 < c2 and r1 < r2):
            continue
        kept = [p for p in x.points if p not in ((c1, r1), (c2, r2))]
        y = QuadrantGenerator.of([*kept, (c1, r2), (c2, r1)])
        rect = rectangle_between(x.points, y.points)
        if rect is None:
            continue
        x_count, weight = rect_weight(cut.grid, rect)
        if x_count == 0:
            result.append((y, weight))
    return result


# ------ Gradings ------


def scaled_points(points: Iterable[Point]) -> list[Point]:
    return [(4 * c, 4 * r) for c, r in points]


def scaled_cells(cells: Iterable[Point]) -> list[Point]:
    return [(4 * c + 2, 4 * r + 2) for c, r in cells]


def on_vertical_cut(cut: DoubleCut, rows: Iterable[int]) -> list[Point]:
    return [(4 * cut.k + 3, 4 * r) for r in rows]


def on_horizontal_cut(cut: DoubleCut, columns: Iterable[int]) -> list[Point]:
    return [(4 * c, 4 * cut.kp + 3) for c in columns]


def point_bigrade(x_marks: list[Point], o_marks: list[Point], points: list[Point], reference: list[Point]) -> Bigrade:
    """A = I(X, x) - I(O, x) and mu = I(reference, x) - 2 I(O, x); every input already scaled."""
    alexander = interleaving_count(x_marks, points) - interleaving_count(o_marks, points)
    maslov = interleaving_count(reference, points) - 2 * interleaving_count(o_marks, points)
    return Bigrade(alexander, maslov)


def top_bigrade(cut: DoubleCut, t: BoxDiagram) -> Bigrade:
    """T(k') against the marking lines of AA."""
    return bigrade_algebra(
        t,
        frozenset(r for _, r in cut.x_markings(Quadrant.AA)),
        frozenset(r for _, r in cut.o_markings(Quadrant.AA)),
    )


def bottom_bigrade(cut: DoubleCut, b: BoxDiagram) -> Bigrade:
    """B(N-k') against the marking lines of AD, renumbered from 1."""
    return bigrade_algebra(
        b,
        frozenset(cut.local_row(r) for _, r in cut.x_markings(Quadrant.AD)),
        frozenset(cut.local_row(r) for _, r in cut.o_markings(Quadrant.AD)),
    )


def _crossed(columns: Iterable[int], low: int, high: int) -> int:
    """Marking lines x = c + 1/2 met by a strand going from position low to position high."""
    return sum(1 for c in columns if low <= c < high)


def right_bigrade(cut: DoubleCut, d: BoxDiagram) -> Bigrade:
    """
    The grading of R(k) along l'.

    Strands meet the vertical marking lines of AA; with c = m - p caps and s
    occupied bottom positions, the caps contribute the correction terms in c.
    """
    through, caps, _ = r_parts(d)
    m, p = d.spec.bottom[1], d.spec.top[1]
    c = m - p
    s = len(d.occupied(Edge.BOTTOM, 0))
    xs = [col for col, _ in cut.x_markings(Quadrant.AA)]
    os = [col for col, _ in cut.o_markings(Quadrant.AA)]

    def lines(columns: list[int]) -> int:
        count = sum(_crossed(columns, a, b) for a, b in through.items())
        return count + sum(1 for a in caps for col in columns if col >= a)

    lx, lo = lines(xs), lines(os)
    alexander = lx - lo - c * (len(xs) - len(os))
    maslov = d.crossing_count - 2 * lo + 2 * c * len(os) - c * s + c * (c + 1) // 2
    return Bigrade(alexander, maslov)


def left_bigrade(cut: DoubleCut, d: BoxDiagram) -> Bigrade:
    """
    The grading of L(N-k) along l'.

    Strands meet the vertical marking lines of DA, renumbered from 1; with
    c = p - m cups and t occupied top positions, the cups contribute the
    correction terms in c.
    """
    _, through, cups = l_parts(d)
    m, p = d.spec.bottom[0], d.spec.top[0]
    c = p - m
    t = len(d.occupied(Edge.TOP, 1))
    xs = [cut.local_column(col) for col, _ in cut.x_markings(Quadrant.DA)]
    os = [cut.local_column(col) for col, _ in cut.o_markings(Quadrant.DA)]
    x_aa, o_aa = len(cut.x_markings(Quadrant.AA)), len(cut.o_markings(Quadrant.AA))

    def lines(columns: list[int]) -> int:
        count = sum(_crossed(columns, a, b) for a, b in through.items())
        return count + sum(1 for a in cups.values() for col in columns if col < a)

    lx, lo = lines(xs), lines(os)
    alexander = lx - lo + c * (x_aa - o_aa)
    maslov = d.crossing_count - 2 * lo - 2 * c * o_aa - c * (cut.kp - t) - c * (c - 1) // 2
    return Bigrade(alexander, maslov)
