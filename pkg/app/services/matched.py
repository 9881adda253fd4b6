"""
Matched intervals, pointed matched circles and the algebras they carry

A matching on points 1..4k is stored as a tuple `pairs_of` with `pairs_of[p-1]`
the index (1..2k) of the pair containing p; pairs are numbered by their lower
point. On top of the strands algebra this module builds

- the matching algebra A(Z) of a pointed matched circle, both from its explicit
  basis and as the closure of its multiplicative generators;
- the sub-algebra-modules T(Z1) and B(Z2) of a matched interval;
- the subgroup G(Z), grading refinement data and the refined grading gr_psi;
- the check that A(Z1 u Z2) is the tensor of T(Z1) and B(Z2) over N.
"""

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from app.core.exceptions import InvalidInputError
from app.core.logger import get_logger
from app.services import strands
from app.services.coeffs import LinearCombination, bilinear, lc_rank
from app.services.diagrams import BoxDiagram, Edge, nc_basis
from app.services.gradings import (
    GradingElement,
    GradingVariant,
    MultiplicityClass,
    amalgamate_to_total,
    canonical_lift,
    gr_prime,
    in_index_two_subgroup,
)
from app.services.report import Report, run_suite

logger = get_logger(__name__, logging.INFO)


class Side(str, Enum):
    TOP = "top"
    BOTTOM = "bottom"


# ------ 1. Matchings and surgery ------


def _matching_from_pairs(points: int, pairs: Iterable[Sequence[int]]) -> tuple[int, ...]:
    pairs = [tuple(sorted(p)) for p in pairs]
    seen: list[int] = [p for pair in pairs for p in pair]
    if any(len(pair) != 2 for pair in pairs):
        raise InvalidInputError(f"Every pair must have exactly two points: {pairs}")
    if sorted(seen) != list(range(1, points + 1)):
        raise InvalidInputError(f"The pairs must use each of the points 1..{points} exactly once: {pairs}")
    pairs_of = [0] * points
    for index, (p, q) in enumerate(sorted(pairs), start=1):
        pairs_of[p - 1] = pairs_of[q - 1] = index
    return tuple(pairs_of)


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        self.parent[self.find(x)] = self.find(y)

    def classes(self) -> int:
        return len({self.find(x) for x in range(len(self.parent))})


@dataclass(frozen=True)
class Matching:
    """Points 1..n grouped in pairs; shared by matched intervals and matched circles."""

    pairs_of: tuple[int, ...]

    @property
    def points(self) -> int:
        return len(self.pairs_of)

    @property
    def pair_count(self) -> int:
        return self.points // 2

    @property
    def genus(self) -> int:
        return self.points // 4

    @cached_property
    def fibers(self) -> dict[int, tuple[int, int]]:
        fibers: dict[int, list[int]] = {}
        for p, r in enumerate(self.pairs_of, start=1):
            fibers.setdefault(r, []).append(p)
        return {r: (ps[0], ps[1]) for r, ps in fibers.items()}

    def pairs(self) -> list[tuple[int, int]]:
        return [self.fibers[r] for r in sorted(self.fibers)]

    def pair(self, p: int) -> int:
        return self.pairs_of[p - 1]

    def image(self, points: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self.pair(p) for p in points))

    def is_section(self, points: Iterable[int]) -> bool:
        image = [self.pair(p) for p in points]
        return len(set(image)) == len(image)

    def sections(self, s: Iterable[int]) -> list[tuple[int, ...]]:
        """All sets mapping bijectively onto the pair set `s`; there are 2^|s| of them."""
        fibers = [self.fibers[r] for r in sorted(set(s))]
        return [tuple(sorted(choice)) for choice in itertools.product(*fibers)]

    def to_pairs(self) -> list[list[int]]:
        return [list(pair) for pair in self.pairs()]


@dataclass(frozen=True)
class MatchedInterval(Matching):
    @classmethod
    def from_pairs(cls, points: int, pairs: Iterable[Sequence[int]]) -> "MatchedInterval":
        return cls(_matching_from_pairs(points, pairs))

    def validate(self) -> None:
        if self.points % 4:
            raise InvalidInputError(f"A matched interval has 4k points, got {self.points}")
        components = surgery_components(self)
        if components != 1:
            raise InvalidInputError(f"Surgery on the matched interval yields {components} components")


@dataclass(frozen=True)
class PointedMatchedCircle(Matching):
    """A matched circle with points ordered from the basepoint; `split` marks a second cut point."""

    split: int | None = None

    @classmethod
    def from_pairs(cls, points: int, pairs: Iterable[Sequence[int]], split: int | None = None) -> "PointedMatchedCircle":
        if split is not None and not 0 <= split <= points:
            raise InvalidInputError(f"Splitting point {split} is outside 0..{points}")
        return cls(_matching_from_pairs(points, pairs), split)

    def validate(self) -> None:
        if self.points % 4:
            raise InvalidInputError(f"A matched circle has 4k points, got {self.points}")
        components = surgery_components(self)
        if components != 1:
            raise InvalidInputError(f"Surgery on the matched circle yields {components} components")

    def halves(self) -> tuple[MatchedInterval, MatchedInterval]:
        """The two matched intervals on either side of the splitting point."""
        if self.split is None:
            raise InvalidInputError("The circle has no splitting point")
        first = [pair for pair in self.pairs() if pair[1] <= self.split]
        second = [(p - self.split, q - self.split) for p, q in self.pairs() if p > self.split]
        if len(first) + len(second) != self.pair_count:
            raise InvalidInputError(f"A pair straddles the splitting point {self.split}")
        return (
            MatchedInterval.from_pairs(self.split, first),
            MatchedInterval.from_pairs(self.points - self.split, second),
        )


def surgery_components(m: Matching) -> int:
    """
    Number of components after banding every matched pair.

    The arcs between consecutive points are joined at each band: the arc arriving
    at p continues into the arc leaving q and vice versa.
    """
    n = m.points
    circle = isinstance(m, PointedMatchedCircle)
    if n == 0:
        return 1
    arcs = n if circle else n + 1

    def arriving(p: int) -> int:
        return (p - 1) % n if circle else p - 1

    def leaving(p: int) -> int:
        return p % n if circle else p

    uf = _UnionFind(arcs)
    for p, q in m.pairs():
        uf.union(arriving(p), leaving(q))
        uf.union(arriving(q), leaving(p))
    return uf.classes()


def glue_intervals(z1: MatchedInterval, z2: MatchedInterval) -> PointedMatchedCircle:
    """Join two matched intervals end to end; the junction after z1 becomes the splitting point."""
    pairs = z1.pairs() + [(p + z1.points, q + z1.points) for p, q in z2.pairs()]
    return PointedMatchedCircle.from_pairs(z1.points + z2.points, pairs, split=z1.points)


def torus_interval() -> MatchedInterval:
    return MatchedInterval.from_pairs(4, [(1, 3), (2, 4)])


# ------ 2. Matched generators ------


@dataclass(frozen=True)
class MatchedGenerator:
    """
    A basis element of A(Z), T(Z1) or B(Z2): one summand for each section over the
    horizontal pairs, the moving chords and free strands shared by every summand.
    """

    moving: tuple[tuple[int, int], ...]
    horizontal: tuple[int, ...]
    free: tuple[int, ...]
    element: LinearCombination[BoxDiagram]
    left: tuple[int, ...] = ()
    right: tuple[int, ...] = ()

    @property
    def m(self) -> int:
        return len(self.free)

    def __str__(self) -> str:
        chords = ",".join(f"[{i},{j}]" for i, j in self.moving)
        return f"chords {{{chords}}} horizontal {strands.format_set(self.horizontal)} free {list(self.free)}"


def _moving_configs(z: Matching, side: Side | None) -> Iterable[tuple[dict[int, int], tuple[int, ...]]]:
    """Upward chords and free points whose left and right ends are sections."""
    points = range(1, z.points + 1)
    for size in range(z.pair_count + 1):
        for starts in itertools.combinations(points, size):
            if not z.is_section(starts):
                continue
            for ends in itertools.permutations(points, size):
                if any(e <= s for s, e in zip(starts, ends)) or not z.is_section(ends):
                    continue
                phi = dict(zip(starts, ends))
                if side is None:
                    yield phi, ()
                    continue
                taken = starts if side is Side.TOP else ends
                rest = [p for p in points if p not in taken]
                for count in range(len(rest) + 1):
                    for free in itertools.combinations(rest, count):
                        if z.is_section(taken + free):
                            yield phi, free


def _summand(n: int, side: Side | None, through: dict[int, int], free: tuple[int, ...]) -> BoxDiagram:
    order = sorted(free, reverse=True)
    if side is Side.TOP:
        return strands.top_gen(n, through, order)
    if side is Side.BOTTOM:
        return strands.bottom_gen(n, through, order)
    return strands.triple(n, through)


def _generators(z: Matching, side: Side | None) -> list[MatchedGenerator]:
    result = []
    for phi, free in _moving_configs(z, side):
        left = list(phi) + (list(free) if side is Side.TOP else [])
        right = list(phi.values()) + (list(free) if side is Side.BOTTOM else [])
        used = set(z.image(left)) | set(z.image(right))
        available = [r for r in range(1, z.pair_count + 1) if r not in used]
        for count in range(len(available) + 1):
            for horizontal in itertools.combinations(available, count):
                summands = []
                for section in z.sections(horizontal):
                    through = dict(phi)
                    through.update({p: p for p in section})
                    summands.append(_summand(z.points, side, through, free))
                result.append(
                    MatchedGenerator(
                        tuple(sorted(phi.items())),
                        horizontal,
                        tuple(free),
                        LinearCombination.from_keys(summands),
                        tuple(sorted(set(z.image(left)) | set(horizontal))),
                        tuple(sorted(set(z.image(right)) | set(horizontal))),
                    )
                )
    return result


def matching_algebra_basis(z: PointedMatchedCircle) -> list[MatchedGenerator]:
    """The explicit basis of A(Z) inside A(4k)."""
    return _generators(z, None)


def interval_algebra_module_basis(z: MatchedInterval, side: Side, decorated: bool = True) -> list[MatchedGenerator]:
    """
    Basis of T(Z1) (side TOP) or B(Z2) (side BOTTOM) over F2.

    Without `decorated`, only one generator per free N_m-orbit is returned (free
    strands uncrossed); with it, every nilCoxeter decoration of a top generator is
    listed as well.
    """
    base = _generators(z, side)
    if not decorated:
        return base
    result = []
    for g in base:
        for sigma in nc_basis(g.m):
            sigma_lc = LinearCombination.basis(sigma)
            if side is Side.TOP:
                element = strands.act_top(g.element, sigma_lc)
            else:
                element = strands.act_bottom(sigma_lc, g.element)
            result.append(MatchedGenerator(g.moving, g.horizontal, g.free, element, g.left, g.right))
    return result


def matching_algebra_generators(z: PointedMatchedCircle) -> list[LinearCombination[BoxDiagram]]:
    """I(s) for every pair set s, and I * rho(chords) * I for every consistent chord set."""
    n = z.points
    idempotents = []
    for count in range(z.pair_count + 1):
        for s in itertools.combinations(range(1, z.pair_count + 1), count):
            idempotents.append(
                LinearCombination.from_keys(strands.triple(n, {p: p for p in section}) for section in z.sections(s))
            )
    unit = LinearCombination.zero()
    for e in idempotents:
        unit = unit + e
    result = list(idempotents)
    for chords in strands.consistent_chord_sets(n):
        if not chords:
            continue
        element = strands.mul_chain(unit, strands.consistent_chord_element(n, chords), unit)
        if element:
            result.append(element)
    return result


def multiplicative_closure(generators: Sequence[LinearCombination[BoxDiagram]], max_rounds: int = 6) -> list[LinearCombination[BoxDiagram]]:
    """Spanning set of the algebra generated by `generators` (products until the rank stops growing)."""
    span = [g for g in generators if g]
    rank = lc_rank(span)
    for _ in range(max_rounds):
        known = set(span)
        products = {strands.strands_mul(x, g) for x in span for g in generators}
        products = {p for p in products if p and p not in known}
        candidate = span + sorted(products, key=str)
        new_rank = lc_rank(candidate)
        span = candidate
        if new_rank == rank:
            break
        rank = new_rank
    return span


# ------ 3. G(Z) and grading refinement data ------


def pushforward(z: Matching, alpha: MultiplicityClass) -> dict[int, int]:
    """M_* delta alpha as pair coefficients (zero entries dropped)."""
    result: dict[int, int] = {}
    for p, c in enumerate(alpha.delta(), start=1):
        if c:
            r = z.pair(p)
            result[r] = result.get(r, 0) + c
    return {r: c for r, c in result.items() if c}


def g_of_z_membership(z: Matching, g: GradingElement) -> bool:
    """Whether g lies in G(Z): a class of G''(4k) killed by M_* delta."""
    if g.alpha.variant is not GradingVariant.BASE or g.alpha.n != z.points:
        return False
    return in_index_two_subgroup(g) and not pushforward(z, g.alpha)


def default_base_subsets(z: Matching) -> dict[int, tuple[int, ...]]:
    return {i: tuple(range(1, i + 1)) for i in range(z.pair_count + 1)}


def _class_between(z: Matching, s: Sequence[int], t: Sequence[int]) -> MultiplicityClass:
    """A class alpha with M_* delta alpha = s - t, joining the lower points of unmatched pairs."""
    segments = [0] * (z.points + 1)
    gained = sorted(set(s) - set(t))
    lost = sorted(set(t) - set(s))
    for plus, minus in zip(gained, lost):
        high, low = z.fibers[plus][0], z.fibers[minus][0]
        sign = 1 if low < high else -1
        for p in range(min(low, high), max(low, high)):
            segments[p] += sign
    return MultiplicityClass(GradingVariant.BASE, tuple(segments))


def refinement_data(z: Matching, base_subsets: dict[int, tuple[int, ...]] | None = None) -> dict[tuple[int, ...], GradingElement]:
    """psi(s) in G''(4k) with M_* delta psi(s) = s - t_|s| for every pair set s."""
    bases = base_subsets or default_base_subsets(z)
    for size, base in bases.items():
        if len(base) != size or not set(base) <= set(range(1, z.pair_count + 1)):
            raise InvalidInputError(f"Base subset {base} is not a {size}-element set of pairs")
    psi = {}
    for count in range(z.pair_count + 1):
        for s in itertools.combinations(range(1, z.pair_count + 1), count):
            psi[s] = canonical_lift(_class_between(z, s, bases[count]))
    return psi


def with_variant(g: GradingElement, variant: GradingVariant) -> GradingElement:
    return GradingElement(g.twice_k, MultiplicityClass(variant, g.alpha.segments))


def gr_psi(z: Matching, psi: dict[tuple[int, ...], GradingElement], d: BoxDiagram) -> GradingElement:
    """psi(s) . gr'(d) . psi(t)^-1 with s, t the pair sets of the left and right ends."""
    g = gr_prime(d)
    s = z.image(d.occupied(Edge.LEFT))
    t = z.image(d.occupied(Edge.RIGHT))
    return with_variant(psi[s], g.alpha.variant) * g * with_variant(psi[t], g.alpha.variant).inverse()


# ------ 4. Verification ------


def _within_span(span_rank: int, span: list, vectors: list) -> bool:
    """Whether every vector lies in the span (whose rank is known)."""
    return lc_rank(span + vectors) == span_rank


def _composable_products(gens: Sequence[MatchedGenerator]) -> list[LinearCombination[BoxDiagram]]:
    products = []
    for x, y in itertools.product(gens, repeat=2):
        if x.right == y.left:
            product = strands.strands_mul(x.element, y.element)
            if product:
                products.append(product)
    return products


def matched_suite(z: PointedMatchedCircle, closure: bool | None = None) -> Report:
    """
    Surgery validity, sections, the two constructions of A(Z), closure and gradings.

    The generator-closure comparison runs by default only up to four points.
    """
    if closure is None:
        closure = z.points <= 4

    def body(report: Report) -> None:
        report.expect_equal("surgery components", surgery_components(z), 1)
        for count in range(z.pair_count + 1):
            for s in itertools.combinations(range(1, z.pair_count + 1), count):
                report.expect_equal(f"sections over {s}", len(z.sections(s)), 2**count)

        basis = matching_algebra_basis(z)
        elements = [g.element for g in basis]
        rank = lc_rank(elements)
        report.expect_equal("basis is independent", rank, len(elements))
        for g in basis:
            report.expect_equal(f"summands of {g}", len(g.element), 2 ** len(g.horizontal))

        if closure:
            spanning = multiplicative_closure(matching_algebra_generators(z))
            closure_rank = lc_rank(spanning)
            report.expect_equal("closure rank", closure_rank, rank)
            report.check("closure inside basis span", _within_span(rank, elements, spanning))

        report.check("closed under products", _within_span(rank, elements, _composable_products(basis)))
        diffs = [strands.strands_diff(x) for x in elements]
        report.check("closed under d", _within_span(rank, elements, [d for d in diffs if d]))

        psi = refinement_data(z)
        for s, value in psi.items():
            base = default_base_subsets(z)[len(s)]
            expected = {r: c for r, c in ((r, (r in s) - (r in base)) for r in range(1, z.pair_count + 1)) if c}
            report.expect_equal(f"psi{s} boundary", pushforward(z, value.alpha), expected)
        for g in basis:
            grades = {gr_psi(z, psi, d) for d in g.element.keys()}
            report.expect_equal(f"gr_psi constant on {g}", len(grades), 1)
            grade = next(iter(grades))
            report.check(f"gr_psi in G(Z) for {g}", g_of_z_membership(z, grade), str(grade))
            for term in strands.strands_diff(g.element).keys():
                report.expect_equal(f"d lowers gr_psi {g}", gr_psi(z, psi, term), GradingElement.lam(z.points, power=-1) * grade)
        for x, y in itertools.product(basis, repeat=2):
            if x.right != y.left:
                continue
            product = strands.strands_mul(x.element, y.element)
            if not product:
                continue
            expected = gr_psi(z, psi, x.element.keys()[0]) * gr_psi(z, psi, y.element.keys()[0])
            for term in product.keys():
                report.expect_equal(f"gr_psi({x} * {y})", gr_psi(z, psi, term), expected)

    return run_suite("matched", body, points=z.points, pairs=z.to_pairs())


def _tensor_product(x: strands.TensorElement, y: strands.TensorElement) -> LinearCombination[strands.TensorElement] | None:
    product = strands.tensor_mul(x, y)
    return None if product is None else LinearCombination.basis(product)


def theorem_azed_check(z1: MatchedInterval, z2: MatchedInterval) -> Report:
    """A(Z1 u Z2) is T(Z1) (.) B(Z2) over the nilCoxeter algebra as a dg-algebra, with compatible refined gradings."""

    def body(report: Report) -> None:
        z1.validate()
        z2.validate()
        z = glue_intervals(z1, z2)
        report.expect_equal("glued circle components", surgery_components(z), 1)
        n1 = z1.points

        algebra = [g.element for g in matching_algebra_basis(z)]
        tops = interval_algebra_module_basis(z1, Side.TOP)
        bottoms = interval_algebra_module_basis(z2, Side.BOTTOM, decorated=False)

        def cut(a: BoxDiagram) -> strands.TensorElement:
            return strands.split(a, n1)

        images = [x.map_keys(cut) for x in algebra]
        span = [strands.tensor_lc(t.element, b.element) for t in tops for b in bottoms if t.m == b.m]
        span = [v for v in span if v]
        span_rank = lc_rank(span)
        report.expect_equal("split is injective on A(Z)", lc_rank(images), len(algebra))
        report.expect_equal("dimensions agree", span_rank, len(algebra))
        report.check("split lands in T(Z1) (.) B(Z2)", _within_span(span_rank, span, images))
        for x, image in zip(algebra, images):
            report.expect_equal(f"merge o split {x}", image.map_keys(strands.merge_tensor), x)
            report.expect_equal(f"d o split {x}", image.map_linear(strands.tensor_diff), strands.strands_diff(x).map_keys(cut))
        for (x, image_x), (y, image_y) in itertools.product(zip(algebra, images), repeat=2):
            report.expect_equal(
                f"split({x} * {y})",
                bilinear(image_x, image_y, _tensor_product),
                strands.strands_mul(x, y).map_keys(cut),
            )

        top_elements = [t.element for t in tops]
        top_rank = lc_rank(top_elements)
        report.check("T(Z1) closed under products", _within_span(top_rank, top_elements, _composable_products(tops)))
        top_diffs = [strands.strands_diff(x) for x in top_elements]
        report.check("T(Z1) closed under d", _within_span(top_rank, top_elements, [d for d in top_diffs if d]))
        bottom_gens = interval_algebra_module_basis(z2, Side.BOTTOM)
        bottom_full = [b.element for b in bottom_gens]
        bottom_rank = lc_rank(bottom_full)
        report.check("B(Z2) closed under products", _within_span(bottom_rank, bottom_full, _composable_products(bottom_gens)))
        bottom_diffs = [strands.strands_diff(x) for x in bottom_full]
        report.check("B(Z2) closed under d", _within_span(bottom_rank, bottom_full, [d for d in bottom_diffs if d]))

        psi1, psi2 = refinement_data(z1), refinement_data(z2)
        k1 = z1.pair_count

        def psi_total(pairs: tuple[int, ...]) -> GradingElement:
            first = tuple(r for r in pairs if r <= k1)
            second = tuple(r - k1 for r in pairs if r > k1)
            return amalgamate_to_total(
                with_variant(psi1[first], GradingVariant.TOP), with_variant(psi2[second], GradingVariant.BOTTOM)
            )

        combined = {
            s: psi_total(s)
            for count in range(z.pair_count + 1)
            for s in itertools.combinations(range(1, z.pair_count + 1), count)
        }
        for x in algebra:
            for a in x.keys():
                piece = strands.split(a, n1)
                report.expect_equal(
                    f"refined grading of {a}",
                    gr_psi(z, combined, a),
                    amalgamate_to_total(gr_psi(z1, psi1, piece.top), gr_psi(z2, psi2, piece.bottom)),
                )

    return run_suite("azed", body, n1=z1.points, n2=z2.points)
