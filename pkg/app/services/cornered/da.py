"""
The DA quadrant: type D over T(k') along l, right module over L(N-k) along l'

A generator is t * x with x a partial matching in the lower-right quadrant and
t in T(k')_m whose right edge is the set of rows of [k'] that x leaves free. The
m strands leaving t through the top run into the corner and continue along l'
as the nilCoxeter points of L(N-k). Columns are renumbered from 1 on the L side.
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
    left_bigrade,
    on_vertical_cut,
    point_bigrade,
    quadrant_rectangles,
    region_weight,
    scaled_cells,
    scaled_points,
    top_bigrade,
)
from app.services.cornered.ralgebra import (
    Interface,
    Letter,
    LetterKind,
    format_l,
    interfaces,
    l_basis,
    l_bottom,
    l_piece,
    l_word,
    vdiff,
    vmul,
)
from app.services.diagrams import BoxDiagram, Direction, NilCoxGen, diagram_diff, glue, juxtapose
from app.services.gradings import Bigrade
from app.services.gridcomplex import u_shift
from app.services.report import Report, run_suite

logger = get_logger(__name__, logging.INFO)


@dataclass(frozen=True, order=True)
class DATerm:
    t: BoxDiagram
    x: QuadrantGenerator

    @property
    def m(self) -> int:
        return strands.module_index(self.t)

    def __str__(self) -> str:
        return f"{strands.format_top(self.t)} * {self.x}"


Module = LinearCombination[DATerm]


def free_rows(cut: DoubleCut, x: QuadrantGenerator) -> tuple[int, ...]:
    return tuple(r for r in range(1, cut.kp + 1) if r not in x.rows)


def da_interface(cut: DoubleCut, term: DATerm) -> Interface:
    """The idempotent of L(N-k) fixing a generator: local columns of x and the nilCoxeter size."""
    return Interface.of((cut.local_column(c) for c in term.x.columns), term.m)


def _right_edge(t: BoxDiagram) -> set[int]:
    return set(strands.through_map(t).values())


def da_generator(cut: DoubleCut, x: QuadrantGenerator) -> DATerm:
    free = free_rows(cut, x)
    return DATerm(strands.top_gen(cut.kp, {r: r for r in free}, ()), x)


def da_basis(cut: DoubleCut, max_m: int = 2) -> list[DATerm]:
    result = []
    for m in range(min(cut.kp, max_m) + 1):
        tops = strands.top_basis(cut.kp, m)
        for x in cut.generators(Quadrant.DA):
            free = set(free_rows(cut, x))
            result.extend(DATerm(t, x) for t in tops if _right_edge(t) == free)
    return sorted(result)


def da_bigrade(cut: DoubleCut, term: DATerm) -> Bigrade:
    points = scaled_points(term.x.points)
    reference = points + on_vertical_cut(cut, free_rows(cut, term.x))
    base = point_bigrade(
        scaled_cells(cut.grid.x_markings),
        scaled_cells(cut.grid.o_markings),
        points,
        reference,
    )
    return base + top_bigrade(cut, term.t)


def _attach(t: LinearCombination[BoxDiagram], x: QuadrantGenerator, weight: Polynomial) -> Module:
    return LinearCombination.from_terms((DATerm(d, x), c * weight) for d, c in t.items())


# ------ Differential ------


def _chord_terms(cut: DoubleCut, x: QuadrantGenerator) -> list[tuple[BoxDiagram, QuadrantGenerator, Polynomial]]:
    """A point (c, j) drops to a free row i < j through the strip right of l; T(k') records rho_{i,j}."""
    free = free_rows(cut, x)
    result = []
    for c, j in x.points:
        for i in free:
            if i >= j:
                continue
            weight = region_weight(cut, None, i, c, j, x.points)
            if weight is None:
                continue
            phi = {r: r for r in free if r != i}
            phi[i] = j
            result.append((strands.triple(cut.kp, phi), x.moved((c, j), (c, i)), weight))
    return result


def da_diff(cut: DoubleCut, term: DATerm) -> Module:
    t = LinearCombination.basis(term.t)
    result = _attach(diagram_diff(term.t), term.x, ONE)
    for y, weight in quadrant_rectangles(cut, term.x):
        result += _attach(t, y, weight)
    for chord, y, weight in _chord_terms(cut, term.x):
        glued = glue(term.t, chord, Direction.HORIZONTAL)
        if glued is not None:
            result += LinearCombination.basis(DATerm(glued, y), weight)
    return result


def da_diff_lc(cut: DoubleCut, a: Module) -> Module:
    return a.map_linear(lambda term: da_diff(cut, term))


# ------ Right action of L(N-k) ------


def _act_cup(cut: DoubleCut, term: DATerm, column: int) -> Module:
    """zeta_column: a quarter strip from l places a point in a free row; T(k') gains mu_row."""
    free = free_rows(cut, term.x)
    target = cut.k + column
    result: Module = LinearCombination.zero()
    for row in free:
        weight = region_weight(cut, None, row, target, None, term.x.points)
        if weight is None:
            continue
        mu = strands.top_gen(cut.kp, {r: r for r in free if r != row}, (row,))
        glued = glue(term.t, mu, Direction.HORIZONTAL)
        if glued is not None:
            result += LinearCombination.basis(DATerm(glued, term.x.added((target, row))), weight)
    return result


def _act_letter(cut: DoubleCut, term: DATerm, letter: Letter) -> Module:
    if letter.kind is LetterKind.IDEMPOTENT:
        return LinearCombination.basis(term)
    if letter.kind is LetterKind.PERM:
        glued = glue(term.t, NilCoxGen(letter.w).diagram, Direction.VERTICAL)
        return LinearCombination.zero() if glued is None else LinearCombination.basis(DATerm(glued, term.x))
    if letter.kind is LetterKind.CHORD:
        start, end = cut.k + letter.i, cut.k + letter.j
        if start not in term.x.columns or end in term.x.columns:
            return LinearCombination.zero()
        row = term.x.row_of(start)
        weight = region_weight(cut, start, row, end, None, term.x.points)
        if weight is None:
            return LinearCombination.zero()
        return LinearCombination.basis(DATerm(term.t, term.x.moved((start, row), (end, row))), weight)
    if letter.kind is LetterKind.CUP:
        return _act_cup(cut, term, letter.i)
    return LinearCombination.zero()


def da_act(cut: DoubleCut, term: DATerm, ell: BoxDiagram) -> Module:
    """(t * x) . ell, letter by letter along the factorisation of ell."""
    if l_bottom(ell) != da_interface(cut, term):
        return LinearCombination.zero()
    current: Module = LinearCombination.basis(term)
    for letter in l_word(ell):
        current = current.map_linear(lambda g, letter=letter: _act_letter(cut, g, letter))
    return current


def da_action(cut: DoubleCut, a: Module, ell: LinearCombination[BoxDiagram]) -> Module:
    return bilinear(a, ell, lambda term, d: da_act(cut, term, d))


# ------ Left action of T(k') on the type D side ------


def _left_edge(t: BoxDiagram) -> set[int]:
    return set(strands.through_map(t)) | set(strands.exits(t))


def da_left_mul(cut: DoubleCut, ss: LinearCombination[BoxDiagram], a: Module) -> Module:
    """s * (t * x): s is placed left of t, its free strands leaving first."""

    def act(s: BoxDiagram, term: DATerm) -> Module | None:
        glued = glue(s, term.t, Direction.HORIZONTAL)
        return None if glued is None else LinearCombination.basis(DATerm(glued, term.x))

    return bilinear(ss, a, act)


def _widen(ell: BoxDiagram, m: int) -> BoxDiagram:
    """1_m * ell: m nilCoxeter strands on the left for the free strands of s."""
    return ell if m == 0 else juxtapose(NilCoxGen.identity(m).diagram, ell)


# ------ Verification suite ------


def _check_sides(
    report: Report,
    cut: DoubleCut,
    term: DATerm,
    ts: list[BoxDiagram],
    ells: list[BoxDiagram],
    faces: list[Interface],
) -> None:
    """Units of T(k') and L(N-k), then the T(k') side against d, itself and the L(N-k) action."""
    tx = LinearCombination.basis(term)
    width = cut.n - cut.k
    for face in faces:
        unit = LinearCombination.basis(l_piece(width, Letter(LetterKind.IDEMPOTENT), face))
        expected = tx if face == da_interface(cut, term) else LinearCombination.zero()
        report.expect_equal(f"L unit {term} . {face}", da_action(cut, tx, unit), expected)
    for e in ts:
        if strands.module_index(e) or any(s != r for s, r in strands.through_map(e).items()):
            continue
        expected = tx if set(strands.through_map(e)) == _left_edge(term.t) else LinearCombination.zero()
        report.expect_equal(f"T unit {strands.format_top(e)} * {term}", da_left_mul(cut, LinearCombination.basis(e), tx), expected)

    dt = da_diff(cut, term)
    for s in (s for s in ts if _right_edge(s) == _left_edge(term.t)):
        sx = LinearCombination.basis(s)
        acted = da_left_mul(cut, sx, tx)
        report.expect_equal(
            f"T Leibniz {strands.format_top(s)} * {term}",
            da_diff_lc(cut, acted),
            da_left_mul(cut, diagram_diff(s), tx) + da_left_mul(cut, sx, dt),
        )
        for s2 in (s2 for s2 in ts if _right_edge(s2) == _left_edge(s)):
            product = glue(s2, s, Direction.HORIZONTAL)
            grouped = LinearCombination.zero() if product is None else LinearCombination.basis(product)
            report.expect_equal(
                f"T associative {strands.format_top(s2)} * {strands.format_top(s)} * {term}",
                da_left_mul(cut, LinearCombination.basis(s2), acted),
                da_left_mul(cut, grouped, tx),
            )
        for ell in (ell for ell in ells if l_bottom(ell) == da_interface(cut, term)):
            lx = LinearCombination.basis(ell)
            widened = LinearCombination.basis(_widen(ell, strands.module_index(s)))
            report.expect_equal(
                f"commute {strands.format_top(s)} * {term} . {format_l(ell)}",
                da_action(cut, acted, widened),
                da_left_mul(cut, sx, da_action(cut, tx, lx)),
            )


def da_suite(cut: DoubleCut, max_m: int = 2) -> Report:
    """d^2 = 0, gradings, the L(N-k) action and the T(k') side: units, associativity, Leibniz and commutation."""

    def body(report: Report) -> None:
        width = cut.n - cut.k
        basis = da_basis(cut, max_m)
        ells = [d for m in range(max_m + 1) for p in range(m, max_m + 1) for d in l_basis(width, m, p)]
        ts = [t for m in range(min(cut.kp, max_m) + 1) for t in strands.top_basis(cut.kp, m)]
        faces = interfaces(width, max_m)
        for term in basis:
            _check_sides(report, cut, term, ts, ells, faces)
            tx = LinearCombination.basis(term)
            grade = da_bigrade(cut, term)
            dt = da_diff(cut, term)
            report.check(f"d^2 {term}", da_diff_lc(cut, dt).is_zero, str(da_diff_lc(cut, dt)))
            for y, coefficient in dt.items():
                for monomial in coefficient.monomials:
                    report.expect_equal(f"d grading {term} -> {y}", u_shift(da_bigrade(cut, y), monomial.degree), grade - Bigrade(0, 1))
            for ell in ells:
                te = da_action(cut, tx, LinearCombination.basis(ell))
                if te.is_zero:
                    continue
                for y, coefficient in te.items():
                    for monomial in coefficient.monomials:
                        report.expect_equal(
                            f"grading {term} . {format_l(ell)}",
                            u_shift(da_bigrade(cut, y), monomial.degree),
                            grade + left_bigrade(cut, ell),
                        )
                report.expect_equal(
                    f"Leibniz {term} . {format_l(ell)}",
                    da_diff_lc(cut, te),
                    da_action(cut, dt, LinearCombination.basis(ell)) + da_action(cut, tx, vdiff(LinearCombination.basis(ell))),
                )
                for ell2 in ells:
                    report.expect_equal(
                        f"associative {term} . {format_l(ell)} . {format_l(ell2)}",
                        da_action(cut, te, LinearCombination.basis(ell2)),
                        da_action(cut, tx, vmul(LinearCombination.basis(ell), LinearCombination.basis(ell2))),
                    )

    return run_suite("da", body, n=cut.n, k=cut.k, kp=cut.kp, x=list(cut.grid.x_cells), o=list(cut.grid.o_cells))
