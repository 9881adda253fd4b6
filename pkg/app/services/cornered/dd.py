"""
The DD quadrant: type D over B(N-k') along l and over L(N-k) along l'

A generator is ell . (b * x): x a partial matching in the upper-right
quadrant, b in B(N-k')_p with uncrossed entering strands whose right edge is the
set of free local rows, and ell in L(N-k) whose top carries the p points fed
by b and the free local columns. Crossings among the corner strands always live
in ell, so each generator has a single normal form.
"""

import logging
from dataclasses import dataclass

from app.core.logger import get_logger
from app.services import strands
from app.services.coeffs import ONE, LinearCombination, Polynomial, bilinear
from app.services.cornered.quadrants import (
    DoubleCut,
    Quadrant,
    QuadrantGenerator,
    bottom_bigrade,
    left_bigrade,
    on_horizontal_cut,
    on_vertical_cut,
    point_bigrade,
    quadrant_rectangles,
    region_weight,
    scaled_cells,
    scaled_points,
)
from app.services.cornered.ralgebra import (
    Interface,
    Letter,
    LetterKind,
    format_l,
    interfaces,
    l_basis,
    l_bottom,
    l_diagram,
    l_local,
    l_piece,
    l_top,
    vdiff,
    vmul,
)
from app.services.diagrams import BoxDiagram, Direction, NilCoxGen, diagram_diff, glue, juxtapose
from app.services.gradings import Bigrade
from app.services.gridcomplex import u_shift
from app.services.report import Report, run_suite

logger = get_logger(__name__, logging.INFO)


@dataclass(frozen=True, order=True)
class DDTerm:
    ell: BoxDiagram
    b: BoxDiagram
    x: QuadrantGenerator

    def __str__(self) -> str:
        return f"{format_l(self.ell)} . ({strands.format_bottom(self.b)} * {self.x})"


Module = LinearCombination[DDTerm]


def _width(cut: DoubleCut) -> int:
    return cut.n - cut.k


def _height(cut: DoubleCut) -> int:
    return cut.n - cut.kp


def free_local_rows(cut: DoubleCut, x: QuadrantGenerator) -> tuple[int, ...]:
    rows = {cut.local_row(r) for r in x.rows}
    return tuple(r for r in range(1, _height(cut) + 1) if r not in rows)


def free_local_columns(cut: DoubleCut, x: QuadrantGenerator) -> tuple[int, ...]:
    columns = {cut.local_column(c) for c in x.columns}
    return tuple(c for c in range(1, _width(cut) + 1) if c not in columns)


def _right_edge(b: BoxDiagram) -> set[int]:
    return set(strands.through_map(b).values()) | set(strands.entries(b))


def dd_generator(cut: DoubleCut, x: QuadrantGenerator) -> DDTerm:
    rows, columns = free_local_rows(cut, x), free_local_columns(cut, x)
    b = strands.bottom_gen(_height(cut), {r: r for r in rows}, ())
    ell = l_diagram(_width(cut), 0, {}, {c: c for c in columns})
    return DDTerm(ell, b, x)


def dd_basis(cut: DoubleCut, max_m: int = 2) -> list[DDTerm]:
    result = []
    for x in cut.generators(Quadrant.DD):
        rows, columns = set(free_local_rows(cut, x)), free_local_columns(cut, x)
        for p in range(max_m + 1):
            face = Interface.of(columns, p)
            bases = [b for b in strands.bottom_basis(_height(cut), p, base_only=True) if _right_edge(b) == rows]
            if not bases:
                continue
            ells = [ell for m in range(p + 1) for ell in l_basis(_width(cut), m, p) if l_top(ell) == face]
            result.extend(DDTerm(ell, b, x) for ell in ells for b in bases)
    return sorted(result)


def dd_bigrade(cut: DoubleCut, term: DDTerm) -> Bigrade:
    x = term.x
    points = scaled_points(x.points)
    rows = [cut.kp + r for r in free_local_rows(cut, x)]
    columns = [cut.k + c for c in free_local_columns(cut, x)]
    reference = points + on_vertical_cut(cut, rows) + on_horizontal_cut(cut, columns)
    base = point_bigrade(scaled_cells(cut.grid.x_markings), scaled_cells(cut.grid.o_markings), points, reference)
    correction = (len(x) + cut.k + cut.kp - cut.n) * len(x)
    return base + Bigrade(0, correction) + bottom_bigrade(cut, term.b) + left_bigrade(cut, term.ell)


def normalize(cut: DoubleCut, ell: BoxDiagram, b: BoxDiagram, x: QuadrantGenerator) -> DDTerm | None:
    """Move the crossings among the entering strands of b into ell."""
    w, base = strands.canonical_bottom(b)
    if w.length == 0:
        return DDTerm(ell, b, x)
    columns = l_top(ell).positions
    shuffle = l_diagram(_width(cut), w.m, {y: top for y, top in enumerate(w.w, 1)}, {c: c for c in columns})
    glued = glue(ell, shuffle, Direction.VERTICAL)
    return None if glued is None else DDTerm(glued, base, x)


def _pair(cut: DoubleCut, ells: LinearCombination[BoxDiagram], bs: LinearCombination[BoxDiagram], x: QuadrantGenerator, weight: Polynomial) -> Module:
    terms = []
    for ell, c1 in ells.items():
        for b, c2 in bs.items():
            term = normalize(cut, ell, b, x)
            if term is not None:
                terms.append((term, c1 * c2 * weight))
    return LinearCombination.from_terms(terms)


# ------ Differential ------


def _rho_terms(cut: DoubleCut, term: DDTerm) -> Module:
    """A point (c, j) drops to a free row i < j through the strip right of l; b gains rho_{i,j}."""
    x, rows = term.x, free_local_rows(cut, term.x)
    result: Module = LinearCombination.zero()
    for c, r in x.points:
        j = cut.local_row(r)
        for i in rows:
            if i >= j:
                continue
            weight = region_weight(cut, None, cut.kp + i, c, r, x.points)
            if weight is None:
                continue
            phi = {s: s for s in rows if s != i}
            phi[i] = j
            glued = glue(term.b, strands.triple(_height(cut), phi), Direction.HORIZONTAL)
            if glued is None:
                continue
            y = x.moved((c, r), (c, cut.kp + i))
            result += _pair(cut, LinearCombination.basis(term.ell), LinearCombination.basis(glued), y, weight)
    return result


def _lambda_terms(cut: DoubleCut, term: DDTerm) -> Module:
    """A point (j, r) slides left to a free column i < j through the strip above l'; ell gains lambda_{i,j}."""
    x, face = term.x, l_top(term.ell)
    result: Module = LinearCombination.zero()
    for c, r in x.points:
        j = cut.local_column(c)
        for i in face.positions:
            if i >= j:
                continue
            weight = region_weight(cut, cut.k + i, None, c, r, x.points)
            if weight is None:
                continue
            chord = l_local(_width(cut), Letter(LetterKind.CHORD, i=i, j=j), face)
            glued = vmul(LinearCombination.basis(term.ell), chord)
            result += _pair(cut, glued, LinearCombination.basis(term.b), x.moved((c, r), (cut.k + i, r)), weight)
    return result


def _corner_terms(cut: DoubleCut, term: DDTerm) -> Module:
    """A point leaves through the corner: b gains nu_row, ell gains zeta_column, joined at a new point."""
    x, rows = term.x, free_local_rows(cut, term.x)
    face = l_top(term.ell)
    result: Module = LinearCombination.zero()
    for c, r in x.points:
        weight = region_weight(cut, None, None, c, r, x.points)
        if weight is None:
            continue
        nu = strands.bottom_gen(_height(cut), {s: s for s in rows}, (cut.local_row(r),))
        b = glue(term.b, nu, Direction.HORIZONTAL)
        cup = l_local(_width(cut), Letter(LetterKind.CUP, i=cut.local_column(c)), face)
        if b is None or cup.is_zero:
            continue
        (piece,) = cup.keys()
        ell = glue(term.ell, piece, Direction.VERTICAL)
        if ell is None:
            continue
        result += _pair(cut, LinearCombination.basis(ell), LinearCombination.basis(b), x.removed((c, r)), weight)
    return result


def dd_delta(cut: DoubleCut, term: DDTerm) -> Module:
    """The structure map: every term of d that moves a point of x, with its L (x) B coefficient."""
    result: Module = LinearCombination.zero()
    for y, weight in quadrant_rectangles(cut, term.x):
        result += LinearCombination.basis(DDTerm(term.ell, term.b, y), weight)
    return result + _rho_terms(cut, term) + _lambda_terms(cut, term) + _corner_terms(cut, term)


def dd_structure_map(cut: DoubleCut, x: QuadrantGenerator) -> Module:
    """delta^1 of the idempotent generator of x; every other generator inherits it through both actions."""
    return dd_delta(cut, dd_generator(cut, x))


def dd_diff(cut: DoubleCut, term: DDTerm) -> Module:
    ell, b = LinearCombination.basis(term.ell), LinearCombination.basis(term.b)
    result = _pair(cut, vdiff(ell), b, term.x, ONE) + _pair(cut, ell, diagram_diff(term.b), term.x, ONE)
    return result + dd_delta(cut, term)


def dd_diff_lc(cut: DoubleCut, a: Module) -> Module:
    return a.map_linear(lambda term: dd_diff(cut, term))


# ------ Coefficient actions ------


def _widen(ell: BoxDiagram, m: int) -> BoxDiagram:
    """ell with m nilCoxeter strands added on the left, for m new entering strands of b."""
    return ell if m == 0 else juxtapose(NilCoxGen.identity(m).diagram, ell)


def dd_mul_l(cut: DoubleCut, ells: LinearCombination[BoxDiagram], a: Module) -> Module:
    """ell0 . a: L(N-k) multiplies the coefficient ell from below."""

    def act(ell0: BoxDiagram, term: DDTerm) -> Module | None:
        glued = glue(ell0, term.ell, Direction.VERTICAL)
        return None if glued is None else LinearCombination.basis(DDTerm(glued, term.b, term.x))

    return bilinear(ells, a, act)


def dd_mul_b(cut: DoubleCut, bs: LinearCombination[BoxDiagram], a: Module) -> Module:
    """b0 * a: B(N-k') multiplies the coefficient b from the left; its entering strands widen ell."""

    def act(b0: BoxDiagram, term: DDTerm) -> Module | None:
        glued = glue(b0, term.b, Direction.HORIZONTAL)
        if glued is None:
            return None
        widened = LinearCombination.basis(_widen(term.ell, strands.module_index(b0)))
        return _pair(cut, widened, LinearCombination.basis(glued), term.x, ONE)

    return bilinear(bs, a, act)


def _left_edge(b: BoxDiagram) -> set[int]:
    return set(strands.through_map(b))


def b_generators(height: int) -> list[BoxDiagram]:
    """Idempotents, chords rho_{i,j} and half chords nu_j of B(height)."""
    pure = set(strands.unit(height).keys())
    found: set[BoxDiagram] = set()
    for j in range(1, height + 1):
        found.update(strands.half_chord_bottom(height, j).keys())
        for i in range(1, j):
            pure.update(strands.chord(height, i, j).keys())
    found.update(strands.bottom_gen(height, strands.through_map(t), ()) for t in pure)
    return sorted(found)


def l_generators(width: int, max_m: int) -> list[BoxDiagram]:
    """Local pieces of J, lambda_{i,j}, sigma_i and zeta_i of L(width) up to nilCoxeter size max_m."""
    letters = [Letter(LetterKind.IDEMPOTENT)]
    letters += [Letter(LetterKind.CHORD, i=i, j=j) for j in range(1, width + 1) for i in range(1, j)]
    letters += [Letter(LetterKind.SIMPLE, i=i) for i in range(1, max_m)]
    letters += [Letter(LetterKind.CUP, i=i) for i in range(1, width + 1)]
    pieces = {l_piece(width, letter, face) for letter in letters for face in interfaces(width, max_m)}
    return sorted(p for p in pieces if p is not None)


# ------ Verification suite ------


def dd_suite(cut: DoubleCut, max_m: int = 2) -> Report:
    """d^2 = 0, gradings, the structure map, and unit, associativity, commutation and Leibniz for both actions."""

    def body(report: Report) -> None:
        ells = l_generators(_width(cut), max_m)
        bs = b_generators(_height(cut))
        for term in dd_basis(cut, max_m):
            tx = LinearCombination.basis(term)
            grade = dd_bigrade(cut, term)
            dt = dd_diff(cut, term)
            ddt = dd_diff_lc(cut, dt)
            report.check(f"d^2 {term}", ddt.is_zero, str(ddt))
            for y, coefficient in dt.items():
                for monomial in coefficient.monomials:
                    report.expect_equal(f"d grading {term} -> {y}", u_shift(dd_bigrade(cut, y), monomial.degree), grade - Bigrade(0, 1))

            ell0, b0 = LinearCombination.basis(term.ell), LinearCombination.basis(term.b)
            generated = dd_mul_l(cut, ell0, dd_mul_b(cut, b0, dd_structure_map(cut, term.x)))
            report.expect_equal(f"structure map {term}", dd_delta(cut, term), generated)
            origin = dd_mul_l(cut, ell0, dd_mul_b(cut, b0, LinearCombination.basis(dd_generator(cut, term.x))))
            report.expect_equal(f"generated {term}", origin, tx)

            for face in interfaces(_width(cut), max_m):
                idempotent = LinearCombination.basis(l_piece(_width(cut), Letter(LetterKind.IDEMPOTENT), face))
                expected = tx if face == l_bottom(term.ell) else LinearCombination.zero()
                report.expect_equal(f"L unit {face} . {term}", dd_mul_l(cut, idempotent, tx), expected)
            for e in (b for b in bs if strands.module_index(b) == 0 and _left_edge(b) == _right_edge(b)):
                expected = tx if _left_edge(e) == _left_edge(term.b) else LinearCombination.zero()
                acted = dd_mul_b(cut, LinearCombination.basis(e), tx)
                report.expect_equal(f"B unit {strands.format_bottom(e)} * {term}", acted, expected)

            lefts = [ell for ell in ells if l_top(ell) == l_bottom(term.ell)]
            for ell in lefts:
                lx = LinearCombination.basis(ell)
                acted = dd_mul_l(cut, lx, tx)
                report.expect_equal(
                    f"L Leibniz {format_l(ell)} . {term}",
                    dd_diff_lc(cut, acted),
                    dd_mul_l(cut, vdiff(lx), tx) + dd_mul_l(cut, lx, dt),
                )
                for ell2 in ells:
                    if l_top(ell2) != l_bottom(ell):
                        continue
                    report.expect_equal(
                        f"L associative {format_l(ell2)} . {format_l(ell)} . {term}",
                        dd_mul_l(cut, LinearCombination.basis(ell2), acted),
                        dd_mul_l(cut, vmul(LinearCombination.basis(ell2), lx), tx),
                    )

            rights = [b for b in bs if _right_edge(b) == _left_edge(term.b)]
            for b in rights:
                bx = LinearCombination.basis(b)
                acted = dd_mul_b(cut, bx, tx)
                report.expect_equal(
                    f"B Leibniz {strands.format_bottom(b)} * {term}",
                    dd_diff_lc(cut, acted),
                    dd_mul_b(cut, diagram_diff(b), tx) + dd_mul_b(cut, bx, dt),
                )
                for b2 in bs:
                    if _right_edge(b2) != _left_edge(b):
                        continue
                    product = glue(b2, b, Direction.HORIZONTAL)
                    grouped = LinearCombination.zero() if product is None else LinearCombination.basis(product)
                    report.expect_equal(
                        f"B associative {strands.format_bottom(b2)} * {strands.format_bottom(b)} * {term}",
                        dd_mul_b(cut, LinearCombination.basis(b2), acted),
                        dd_mul_b(cut, grouped, tx),
                    )
                for ell in lefts:
                    widened = LinearCombination.basis(_widen(ell, strands.module_index(b)))
                    report.expect_equal(
                        f"commute {format_l(ell)} . {strands.format_bottom(b)} * {term}",
                        dd_mul_b(cut, bx, dd_mul_l(cut, LinearCombination.basis(ell), tx)),
                        dd_mul_l(cut, widened, acted),
                    )

    return run_suite("dd", body, n=cut.n, k=cut.k, kp=cut.kp, x=list(cut.grid.x_cells), o=list(cut.grid.o_cells))
