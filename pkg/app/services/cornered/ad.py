"""
The AD quadrant: type D over R(k) along l', right module over B(N-k') along l

A generator is phi . x with x a partial matching in the upper-left quadrant and
phi in R(k)_{p,0} whose top occupies exactly the columns of [k] that x leaves
free. Rows are renumbered from 1 on the B(N-k') side.
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
    on_horizontal_cut,
    point_bigrade,
    quadrant_rectangles,
    region_weight,
    right_bigrade,
    scaled_cells,
    scaled_points,
)
from app.services.cornered.ralgebra import (
    Interface,
    Letter,
    LetterKind,
    format_r,
    interfaces,
    r_basis,
    r_bottom,
    r_diagram,
    r_local,
    r_piece,
    r_top,
    vdiff,
    vmul,
)
from app.services.diagrams import BoxDiagram, Direction, Edge, NilCoxGen, diagram_diff, glue, juxtapose
from app.services.gradings import Bigrade
from app.services.gridcomplex import u_shift
from app.services.report import Report, run_suite

logger = get_logger(__name__, logging.INFO)


@dataclass(frozen=True, order=True)
class ADTerm:
    phi: BoxDiagram
    x: QuadrantGenerator

    def __str__(self) -> str:
        return f"{format_r(self.phi)} . {self.x}"


Module = LinearCombination[ADTerm]


def free_columns(cut: DoubleCut, x: QuadrantGenerator) -> tuple[int, ...]:
    return tuple(c for c in range(1, cut.k + 1) if c not in x.columns)


def ad_idempotent(cut: DoubleCut, x: QuadrantGenerator) -> BoxDiagram:
    """The idempotent J_{free(x),0} that pairs with x."""
    free = free_columns(cut, x)
    return r_diagram(cut.k, 0, {c: c for c in free})


def ad_generator(cut: DoubleCut, x: QuadrantGenerator) -> ADTerm:
    return ADTerm(ad_idempotent(cut, x), x)


def ad_basis(cut: DoubleCut, max_m: int = 2) -> list[ADTerm]:
    """All phi . x with phi in R(k)_{p,0}, p <= max_m."""
    result = []
    for x in cut.generators(Quadrant.AD):
        face = Interface.of(free_columns(cut, x), 0)
        for p in range(max_m + 1):
            result.extend(ADTerm(phi, x) for phi in r_basis(cut.k, p, 0) if r_top(phi) == face)
    return sorted(result)


def ad_bigrade(cut: DoubleCut, term: ADTerm) -> Bigrade:
    points = scaled_points(term.x.points)
    reference = points + on_horizontal_cut(cut, free_columns(cut, term.x))
    base = point_bigrade(
        scaled_cells(cut.x_markings(Quadrant.AA, Quadrant.AD)),
        scaled_cells(cut.o_markings(Quadrant.AA, Quadrant.AD)),
        points,
        reference,
    )
    return base + right_bigrade(cut, term.phi)


def _attach(phi: LinearCombination[BoxDiagram], x: QuadrantGenerator, weight: Polynomial) -> Module:
    return LinearCombination.from_terms((ADTerm(d, x), c * weight) for d, c in phi.items())


# ------ Differential ------


def _lambda_terms(cut: DoubleCut, x: QuadrantGenerator) -> list[tuple[LinearCombination[BoxDiagram], QuadrantGenerator, Polynomial]]:
    """A point (l, r) slides left to a free column j < l through the strip above l'."""
    result = []
    face = Interface.of(free_columns(cut, x), 0)
    for l, r in x.points:
        for j in face.positions:
            if j >= l:
                continue
            weight = region_weight(cut, j, None, l, r, x.points)
            if weight is None:
                continue
            chord = r_local(cut.k, Letter(LetterKind.CHORD, i=j, j=l), face)
            result.append((chord, x.moved((l, r), (j, r)), weight))
    return result


def ad_diff(cut: DoubleCut, term: ADTerm) -> Module:
    phi = LinearCombination.basis(term.phi)
    result = _attach(vdiff(phi), term.x, ONE)
    for y, weight in quadrant_rectangles(cut, term.x):
        result += _attach(phi, y, weight)
    for chord, y, weight in _lambda_terms(cut, term.x):
        result += _attach(vmul(phi, chord), y, weight)
    return result


def ad_diff_lc(cut: DoubleCut, a: Module) -> Module:
    return a.map_linear(lambda term: ad_diff(cut, term))


# ------ Right action of B(N-k') ------


def _act_chord(cut: DoubleCut, x: QuadrantGenerator, start: int, end: int) -> tuple[QuadrantGenerator, Polynomial] | None:
    """rho_{start,end} on local rows: the half strip from a point out to l."""
    low, high = cut.kp + start, cut.kp + end
    column = x.column_of(low)
    weight = region_weight(cut, column, low, None, high, x.points)
    if weight is None:
        return None
    return x.moved((column, low), (column, high)), weight


def _act_entry(cut: DoubleCut, phi: BoxDiagram, x: QuadrantGenerator, row: int) -> Module:
    """nu_row: a quarter strip from the corner places a new point; R(k) records the cap xi_j."""
    widened = juxtapose(phi, NilCoxGen.identity(1).diagram)
    face = Interface.of(free_columns(cut, x), 1)
    result: Module = LinearCombination.zero()
    for j in face.positions:
        weight = region_weight(cut, j, None, None, cut.kp + row, x.points)
        if weight is None:
            continue
        cap = r_local(cut.k, Letter(LetterKind.CAP, i=j), face)
        result += _attach(vmul(LinearCombination.basis(widened), cap), x.added((j, cut.kp + row)), weight)
    return result


def _reorder(cut: DoubleCut, term: ADTerm, before: int, w: NilCoxGen) -> ADTerm | None:
    """(J * w) . phi: the last m nilCoxeter points of phi permuted by w."""
    feet = term.phi.occupied(Edge.BOTTOM, 0)
    total = term.phi.spec.bottom[1]
    nilcox = {q: q for q in range(1, before + 1)}
    nilcox.update({before + y: before + top for y, top in enumerate(w.w, 1)})
    below = r_diagram(cut.k, total, {a: a for a in feet}, nilcox=nilcox)
    glued = glue(below, term.phi, Direction.VERTICAL)
    return None if glued is None else ADTerm(glued, term.x)


def ad_act(cut: DoubleCut, term: ADTerm, b: BoxDiagram) -> Module:
    """(phi . x) * b for b = w . (c * nu_e1 * ... * nu_er), e1 > ... > er."""
    local_rows = {cut.local_row(r) for r in term.x.rows}
    if set(strands.through_map(b)) != local_rows:
        return LinearCombination.zero()
    w, base = strands.canonical_bottom(b)
    before = term.phi.spec.bottom[1]
    x, weight = term.x, ONE
    for start, end in sorted(strands.through_map(base).items(), key=lambda mv: -mv[1]):
        if start == end:
            continue
        step = _act_chord(cut, x, start, end)
        if step is None:
            return LinearCombination.zero()
        x, weight = step[0], weight * step[1]
    current: Module = LinearCombination.basis(ADTerm(term.phi, x), weight)
    for row in strands.entries(base):
        current = current.map_linear(lambda t, row=row: _act_entry(cut, t.phi, t.x, row))
    if w.m == 0:
        return current
    return current.map_keys(lambda t: _reorder(cut, t, before, w))


def ad_action(cut: DoubleCut, a: Module, b: LinearCombination[BoxDiagram]) -> Module:
    return bilinear(a, b, lambda term, d: ad_act(cut, term, d))


# ------ Left action of R(k) on the type D side ------


def ad_left_mul(cut: DoubleCut, rs: LinearCombination[BoxDiagram], a: Module) -> Module:
    """r . (phi . x): r is stacked below phi."""

    def act(r: BoxDiagram, term: ADTerm) -> Module | None:
        glued = glue(r, term.phi, Direction.VERTICAL)
        return None if glued is None else LinearCombination.basis(ADTerm(glued, term.x))

    return bilinear(rs, a, act)


def _widen(r: BoxDiagram, m: int) -> BoxDiagram:
    """r * 1_m: m nilCoxeter strands to the right, one per strand entering through b."""
    return r if m == 0 else juxtapose(r, NilCoxGen.identity(m).diagram)


# ------ Verification suite ------


def _check_sides(
    report: Report,
    cut: DoubleCut,
    term: ADTerm,
    rs: list[BoxDiagram],
    bottoms: list[BoxDiagram],
    idempotents: list[BoxDiagram],
    faces: list[Interface],
) -> None:
    """Units of R(k) and B(N-k'), then the R(k) side against d, itself and the B(N-k') action."""
    tx = LinearCombination.basis(term)
    for face in faces:
        unit = LinearCombination.basis(r_piece(cut.k, Letter(LetterKind.IDEMPOTENT), face))
        expected = tx if face == r_bottom(term.phi) else LinearCombination.zero()
        report.expect_equal(f"R unit {face} . {term}", ad_left_mul(cut, unit, tx), expected)
    local_rows = {cut.local_row(r) for r in term.x.rows}
    for e in idempotents:
        expected = tx if set(strands.through_map(e)) == local_rows else LinearCombination.zero()
        report.expect_equal(f"B unit {term} * {strands.format_bottom(e)}", ad_action(cut, tx, LinearCombination.basis(e)), expected)

    dt = ad_diff(cut, term)
    for r in (r for r in rs if r_top(r) == r_bottom(term.phi)):
        rx = LinearCombination.basis(r)
        acted = ad_left_mul(cut, rx, tx)
        report.expect_equal(
            f"R Leibniz {format_r(r)} . {term}",
            ad_diff_lc(cut, acted),
            ad_left_mul(cut, vdiff(rx), tx) + ad_left_mul(cut, rx, dt),
        )
        for r2 in (r2 for r2 in rs if r_top(r2) == r_bottom(r)):
            report.expect_equal(
                f"R associative {format_r(r2)} . {format_r(r)} . {term}",
                ad_left_mul(cut, LinearCombination.basis(r2), acted),
                ad_left_mul(cut, vmul(LinearCombination.basis(r2), rx), tx),
            )
        for b in bottoms:
            bx = LinearCombination.basis(b)
            widened = LinearCombination.basis(_widen(r, strands.module_index(b)))
            report.expect_equal(
                f"commute {format_r(r)} . {term} * {strands.format_bottom(b)}",
                ad_action(cut, acted, bx),
                ad_left_mul(cut, widened, ad_action(cut, tx, bx)),
            )


def ad_suite(cut: DoubleCut, max_m: int = 2) -> Report:
    """d^2 = 0, gradings, the B(N-k') action and the R(k) side: units, associativity, Leibniz and commutation."""

    def body(report: Report) -> None:
        n = cut.n - cut.kp
        basis = ad_basis(cut, max_m)
        bottoms = [b for m in range(min(n, max_m) + 1) for b in strands.bottom_basis(n, m)]
        idempotents = [b for b in strands.bottom_basis(n, 0) if all(s == e for s, e in strands.through_map(b).items())]
        faces = interfaces(cut.k, max_m)
        rs = [r for m in range(max_m + 1) for p in range(max_m + 1) for r in r_basis(cut.k, m, p)]
        for term in basis:
            _check_sides(report, cut, term, rs, bottoms, idempotents, faces)
            tx = LinearCombination.basis(term)
            grade = ad_bigrade(cut, term)
            dt = ad_diff(cut, term)
            report.check(f"d^2 {term}", ad_diff_lc(cut, dt).is_zero, str(ad_diff_lc(cut, dt)))
            for y, coefficient in dt.items():
                for monomial in coefficient.monomials:
                    report.expect_equal(f"d grading {term} -> {y}", u_shift(ad_bigrade(cut, y), monomial.degree), grade - Bigrade(0, 1))
            for b in bottoms:
                tb = ad_action(cut, tx, LinearCombination.basis(b))
                if tb.is_zero:
                    continue
                for y, coefficient in tb.items():
                    for monomial in coefficient.monomials:
                        report.expect_equal(
                            f"grading {term} * {strands.format_bottom(b)}",
                            u_shift(ad_bigrade(cut, y), monomial.degree),
                            grade + bottom_bigrade(cut, b),
                        )
                report.expect_equal(
                    f"Leibniz {term} * {strands.format_bottom(b)}",
                    ad_diff_lc(cut, tb),
                    ad_action(cut, dt, LinearCombination.basis(b)) + ad_action(cut, tx, diagram_diff(b)),
                )
                for b2 in bottoms:
                    product = glue(b, b2, Direction.HORIZONTAL)
                    report.expect_equal(
                        f"associative {term} * {strands.format_bottom(b)} * {strands.format_bottom(b2)}",
                        ad_action(cut, tb, LinearCombination.basis(b2)),
                        LinearCombination.zero() if product is None else ad_action(cut, tx, LinearCombination.basis(product)),
                    )

    return run_suite("ad", body, n=cut.n, k=cut.k, kp=cut.kp, x=list(cut.grid.x_cells), o=list(cut.grid.o_cells))
