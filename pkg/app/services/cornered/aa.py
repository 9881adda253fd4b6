"""
The AA quadrant: a right module over T(k') along l and over R(k) along l'

A generator is (x, M, sigma): points x in the lower-left quadrant, arrows at the
columns M on l' (none shared with x), and a nilCoxeter element sigma in N_|M|
whose strand from bottom a is paired with the a-th smallest arrow.

The differential has three parts: d sigma, X-free empty rectangles, and the
regions from a point of x up to an arrow on its right, which move the point
onto l' and release the arrow's column.
"""

import itertools
import logging
from dataclasses import dataclass

from app.core.logger import get_logger
from app.services import strands
from app.services.coeffs import ONE, LinearCombination, Polynomial, bilinear
from app.services.cornered.quadrants import (
    DoubleCut,
    Quadrant,
    QuadrantGenerator,
    on_horizontal_cut,
    point_bigrade,
    quadrant_rectangles,
    region_weight,
    right_bigrade,
    scaled_cells,
    scaled_points,
    top_bigrade,
)
from app.services.cornered.ralgebra import (
    Interface,
    Letter,
    LetterKind,
    r_basis,
    r_bottom,
    r_star,
    r_word,
    vdiff,
    vmul,
)
from app.services.diagrams import BoxDiagram, Direction, NilCoxGen, diagram_diff, glue, nc_basis
from app.services.gradings import Bigrade
from app.services.gridcomplex import u_shift
from app.services.report import Report, run_suite

logger = get_logger(__name__, logging.INFO)


@dataclass(frozen=True, order=True)
class AAGenerator:
    x: QuadrantGenerator
    arrows: tuple[int, ...]
    sigma: NilCoxGen

    @property
    def m(self) -> int:
        return len(self.arrows)

    @property
    def interface(self) -> Interface:
        """The idempotent J_{S,m} of R(k) fixing this generator."""
        return Interface.of(self.x.columns | set(self.arrows), self.m)

    def __str__(self) -> str:
        arrows = ",".join(str(a) for a in self.arrows)
        return f"{self.x} M={{{arrows}}} s={self.sigma}"


Module = LinearCombination[AAGenerator]


def aa_generator(x: QuadrantGenerator, arrows: tuple[int, ...] = (), sigma: NilCoxGen | None = None) -> AAGenerator:
    return AAGenerator(x, tuple(sorted(arrows)), sigma or NilCoxGen.identity(len(arrows)))


def aa_basis(cut: DoubleCut, max_arrows: int | None = None) -> list[AAGenerator]:
    result = []
    for x in cut.generators(Quadrant.AA):
        free = [c for c in range(1, cut.k + 1) if c not in x.columns]
        limit = len(free) if max_arrows is None else min(len(free), max_arrows)
        for size in range(limit + 1):
            for arrows in itertools.combinations(free, size):
                result.extend(AAGenerator(x, arrows, sigma) for sigma in nc_basis(size))
    return sorted(result)


def aa_bigrade(cut: DoubleCut, g: AAGenerator) -> Bigrade:
    """A = I(X, x+M) - I(O, x+M), mu = I(x+M, x+M) + cr(sigma) - 2 I(O, x+M) against the AA markings."""
    points = scaled_points(g.x.points) + on_horizontal_cut(cut, g.arrows)
    base = point_bigrade(
        scaled_cells(cut.x_markings(Quadrant.AA)),
        scaled_cells(cut.o_markings(Quadrant.AA)),
        points,
        points,
    )
    return base + Bigrade(0, g.sigma.length)


# ------ Differential ------


def _cycle_up(start: int, stop: int, m: int) -> NilCoxGen | None:
    """sigma_start . sigma_{start+1} ... sigma_{stop-1}: bottom `start` travels up to `stop`."""
    return NilCoxGen.from_word(list(range(start, stop)), m)


def _release_arrows(cut: DoubleCut, g: AAGenerator) -> list[tuple[AAGenerator, Polynomial]]:
    """A point (j, i) slides right to an arrow at l > j; the arrow's strand is re-paired with j."""
    result = []
    for j, i in g.x.points:
        for index, l in enumerate(g.arrows, 1):
            if l <= j:
                continue
            weight = region_weight(cut, j, i, l, None, g.x.points)
            if weight is None:
                continue
            below = sum(1 for u in g.arrows if u < j)
            cycle = _cycle_up(below + 1, index, g.m)
            sigma = None if cycle is None else cycle * g.sigma
            if sigma is None:
                continue
            arrows = tuple(sorted([u for u in g.arrows if u != l] + [j]))
            result.append((AAGenerator(g.x.moved((j, i), (l, i)), arrows, sigma), weight))
    return result


def aa_diff(cut: DoubleCut, g: AAGenerator) -> Module:
    terms = [(AAGenerator(g.x, g.arrows, s), ONE) for s in g.sigma.covers()]
    terms += [(AAGenerator(y, g.arrows, g.sigma), w) for y, w in quadrant_rectangles(cut, g.x)]
    terms += _release_arrows(cut, g)
    return LinearCombination.from_terms(terms)


def aa_diff_lc(cut: DoubleCut, a: Module) -> Module:
    return a.map_linear(lambda g: aa_diff(cut, g))


# ------ Right action of T(k') ------


def _insert_strand(sigma: NilCoxGen, bottom: int) -> NilCoxGen:
    """sigma with a new strand from `bottom` to the new last top position."""
    w = list(sigma.w)
    w.insert(bottom - 1, sigma.m + 1)
    return NilCoxGen(tuple(w))


def _act_half_chord(cut: DoubleCut, g: AAGenerator, row: int) -> tuple[AAGenerator, Polynomial] | None:
    """x * mu_row: the point in `row` leaves through the quarter strip to the corner and becomes an arrow."""
    if row not in g.x.rows:
        return None
    column = g.x.column_of(row)
    weight = region_weight(cut, column, row, None, None, g.x.points)
    if weight is None:
        return None
    below = sum(1 for u in g.arrows if u < column)
    arrows = tuple(sorted([*g.arrows, column]))
    return AAGenerator(g.x.removed((column, row)), arrows, _insert_strand(g.sigma, below + 1)), weight


def _act_chord(cut: DoubleCut, g: AAGenerator, start: int, end: int) -> tuple[AAGenerator, Polynomial] | None:
    """x * rho_{start,end}: the half strip from the point in row `start` to l moves it up to `end`."""
    column = g.x.column_of(start)
    weight = region_weight(cut, column, start, None, end, g.x.points)
    if weight is None:
        return None
    return AAGenerator(g.x.moved((column, start), (column, end)), g.arrows, g.sigma), weight


def aa_act_top(cut: DoubleCut, g: AAGenerator, t: BoxDiagram) -> tuple[AAGenerator, Polynomial] | None:
    """g * t for a T(k') generator t = mu_e1 * ... * mu_er * c . w with e1 > ... > er."""
    through = strands.through_map(t)
    if set(through) | set(strands.exits(t)) != g.x.rows:
        return None
    base, w = strands.top_decompose(t)
    current, weight = g, ONE
    moves: list[tuple[str, int, int]] = [("mu", e, 0) for e in strands.exits(base)]
    moves += [("rho", s, e) for s, e in sorted(through.items(), key=lambda mv: -mv[1]) if s != e]
    for kind, a, b in moves:
        step = _act_half_chord(cut, current, a) if kind == "mu" else _act_chord(cut, current, a, b)
        if step is None:
            return None
        current, weight = step[0], weight * step[1]
    old = g.m
    sigma = current.sigma * NilCoxGen.identity(old).star(w)
    if sigma is None:
        return None
    return AAGenerator(current.x, current.arrows, sigma), weight


def aa_top_action(cut: DoubleCut, a: Module, t: LinearCombination[BoxDiagram]) -> Module:
    def act(g: AAGenerator, d: BoxDiagram) -> Module | None:
        result = aa_act_top(cut, g, d)
        return None if result is None else LinearCombination.basis(*result)

    return bilinear(a, t, act)


# ------ Right action of R(k) ------


def _act_letter(cut: DoubleCut, g: AAGenerator, letter: Letter) -> tuple[AAGenerator, Polynomial] | None:
    if letter.kind is LetterKind.IDEMPOTENT:
        return g, ONE
    if letter.kind in (LetterKind.PERM, LetterKind.SIMPLE):
        factor = NilCoxGen(letter.w) if letter.kind is LetterKind.PERM else NilCoxGen.simple(letter.i, g.m)
        sigma = g.sigma * factor
        return None if sigma is None else (AAGenerator(g.x, g.arrows, sigma), ONE)
    if letter.kind is LetterKind.CHORD:
        i, j = letter.i, letter.j
        if i in g.x.columns:
            if any(i < u < j for u in g.arrows):
                return None
            row = g.x.row_of(i)
            weight = region_weight(cut, i, row, j, None, g.x.points)
            if weight is None:
                return None
            return AAGenerator(g.x.moved((i, row), (j, row)), g.arrows, g.sigma), weight
        index = g.arrows.index(i) + 1
        target = sum(1 for u in g.arrows if u < j)
        cycle = NilCoxGen.from_word(list(range(target - 1, index - 1, -1)), g.m)
        sigma = None if cycle is None else cycle * g.sigma
        if sigma is None:
            return None
        arrows = tuple(sorted([u for u in g.arrows if u != i] + [j]))
        return AAGenerator(g.x, arrows, sigma), ONE
    if letter.kind is LetterKind.CAP:
        if letter.i not in g.arrows:
            return None
        index = g.arrows.index(letter.i) + 1
        if g.sigma.w[index - 1] != 1:
            return None
        w = tuple(top - 1 for a, top in enumerate(g.sigma.w, 1) if a != index)
        arrows = tuple(u for u in g.arrows if u != letter.i)
        return AAGenerator(g.x, arrows, NilCoxGen(w)), ONE
    return None


def aa_act_right(cut: DoubleCut, g: AAGenerator, r: BoxDiagram) -> tuple[AAGenerator, Polynomial] | None:
    """g . r for an R(k) basis diagram, acting letter by letter along its factorisation."""
    if r_bottom(r) != g.interface:
        return None
    current, weight = g, ONE
    for letter in r_word(r):
        step = _act_letter(cut, current, letter)
        if step is None:
            return None
        current, weight = step[0], weight * step[1]
    return current, weight


def aa_right_action(cut: DoubleCut, a: Module, r: LinearCombination[BoxDiagram]) -> Module:
    def act(g: AAGenerator, d: BoxDiagram) -> Module | None:
        result = aa_act_right(cut, g, d)
        return None if result is None else LinearCombination.basis(*result)

    return bilinear(a, r, act)


# ------ Verification suite ------


def _expect_grading(report: Report, case: str, cut: DoubleCut, image: Module, expected: Bigrade) -> None:
    for y, weight in image.items():
        for monomial in weight.monomials:
            report.expect_equal(case, u_shift(aa_bigrade(cut, y), monomial.degree), expected)


def aa_suite(cut: DoubleCut, max_arrows: int = 2) -> Report:
    """d^2 = 0, gradings, both actions with their Leibniz and associativity laws, and local commutation."""

    def body(report: Report) -> None:
        basis = aa_basis(cut, max_arrows)
        tops = [t for m in range(min(cut.kp, 2) + 1) for t in strands.top_basis(cut.kp, m)]
        rights = [r for m in range(max_arrows + 1) for p in range(m + 1) for r in r_basis(cut.k, m, p)]
        for g in basis:
            gx = LinearCombination.basis(g)
            grade = aa_bigrade(cut, g)
            dg = aa_diff(cut, g)
            report.check(f"d^2 {g}", aa_diff_lc(cut, dg).is_zero, str(aa_diff_lc(cut, dg)))
            _expect_grading(report, f"d grading {g}", cut, dg, grade - Bigrade(0, 1))

            for t in tops:
                gt = aa_top_action(cut, gx, LinearCombination.basis(t))
                if gt.is_zero:
                    continue
                _expect_grading(report, f"grading {g} * {t}", cut, gt, grade + top_bigrade(cut, t))
                lhs = aa_diff_lc(cut, gt)
                rhs = aa_top_action(cut, dg, LinearCombination.basis(t)) + aa_top_action(cut, gx, diagram_diff(t))
                report.expect_equal(f"Leibniz {g} * {t}", lhs, rhs)
                for t2 in tops:
                    product = glue(t, t2, Direction.HORIZONTAL)
                    report.expect_equal(
                        f"associative {g} * {t} * {t2}",
                        aa_top_action(cut, gt, LinearCombination.basis(t2)),
                        LinearCombination.zero() if product is None else aa_top_action(cut, gx, LinearCombination.basis(product)),
                    )

            for r in rights:
                gr = aa_right_action(cut, gx, LinearCombination.basis(r))
                if gr.is_zero:
                    continue
                _expect_grading(report, f"grading {g} . {r}", cut, gr, grade + right_bigrade(cut, r))
                lhs = aa_diff_lc(cut, gr)
                rhs = aa_right_action(cut, dg, LinearCombination.basis(r)) + aa_right_action(cut, gx, vdiff(LinearCombination.basis(r)))
                report.expect_equal(f"Leibniz {g} . {r}", lhs, rhs)
                for r2 in rights:
                    report.expect_equal(
                        f"associative {g} . {r} . {r2}",
                        aa_right_action(cut, gr, LinearCombination.basis(r2)),
                        aa_right_action(cut, gx, vmul(LinearCombination.basis(r), LinearCombination.basis(r2))),
                    )
                for t in tops:
                    m_t = strands.module_index(t)
                    widened = r_star(LinearCombination.basis(r), LinearCombination.basis(NilCoxGen.identity(m_t)))
                    report.expect_equal(
                        f"commute {g} . {r} * {t}",
                        aa_right_action(cut, aa_top_action(cut, gx, LinearCombination.basis(t)), widened),
                        aa_top_action(cut, gr, LinearCombination.basis(t)),
                    )

    return run_suite("aa", body, n=cut.n, k=cut.k, kp=cut.kp, x=list(cut.grid.x_cells), o=list(cut.grid.o_cells))
