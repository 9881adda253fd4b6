"""
Boxed strand diagrams: the common carrier of every algebra in the package

A diagram is a perfect matching of occupied boundary slots of a box. Slots sit on
four edges and, on the bottom and top edges, in numbered zones (the two halves of
the right/left algebra-module pictures). The counterclockwise boundary cycle is

    Bottom left->right, Right bottom->top, Top right->left, Left top->bottom

and the crossing count of a diagram is the number of strand pairs whose endpoints
interleave on that cycle. Products glue two boxes along an edge and are zero
whenever the crossing count is not additive (a double crossing was created).
Differentials sum the admissible smoothings that drop the crossing count by one.

The nilCoxeter algebra is the first instance and lives here as well.
"""

import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from app.core.exceptions import InvalidInputError
from app.core.logger import get_logger
from app.services.coeffs import LinearCombination, chain_complex_dims
from app.services.report import Report, run_suite

logger = get_logger(__name__, logging.INFO)


class Edge(str, Enum):
    BOTTOM = "B"
    RIGHT = "R"
    TOP = "T"
    LEFT = "L"


class Flavor(str, Enum):
    """Which admissibility rules apply to the strands of a diagram."""

    NILCOX = "nilcox"
    STRANDS = "strands"
    TOP_MODULE = "top"
    BOTTOM_MODULE = "bottom"
    RIGHT_MODULE = "right"
    LEFT_MODULE = "left"


class Direction(str, Enum):
    VERTICAL = "vertical"  # first factor below, second above
    HORIZONTAL = "horizontal"  # first factor left, second right


@dataclass(frozen=True, order=True)
class Slot:
    """A boundary bullet; positions are 1-based, left to right or bottom to top."""

    edge: Edge
    position: int
    zone: int = 0

    @property
    def cycle_key(self) -> tuple[int, int, int]:
        if self.edge is Edge.BOTTOM:
            return (0, self.zone, self.position)
        if self.edge is Edge.RIGHT:
            return (1, 0, self.position)
        if self.edge is Edge.TOP:
            return (2, -self.zone, -self.position)
        return (3, 0, -self.position)

    def __str__(self) -> str:
        zone = f".{self.zone}" if self.zone else ""
        return f"{self.edge.value}{self.position}{zone}"


@dataclass(frozen=True, order=True)
class SlotSpec:
    """Number of bullets per zone on the bottom and top edges, and on each side."""

    bottom: tuple[int, ...] = ()
    right: int = 0
    top: tuple[int, ...] = ()
    left: int = 0

    def contains(self, slot: Slot) -> bool:
        if slot.edge in (Edge.LEFT, Edge.RIGHT):
            size = self.left if slot.edge is Edge.LEFT else self.right
            return slot.zone == 0 and 1 <= slot.position <= size
        zones = self.bottom if slot.edge is Edge.BOTTOM else self.top
        return 0 <= slot.zone < len(zones) and 1 <= slot.position <= zones[slot.zone]


Strand = tuple[Slot, Slot]


def _oriented(a: Slot, b: Slot, first: Edge, second: Edge) -> tuple[Slot, Slot] | None:
    if a.edge is first and b.edge is second:
        return a, b
    if b.edge is first and a.edge is second:
        return b, a
    return None


def admissible(flavor: Flavor, a: Slot, b: Slot) -> bool:
    """Whether a strand joining `a` and `b` is allowed in diagrams of `flavor`."""
    if flavor is Flavor.NILCOX:
        return _oriented(a, b, Edge.BOTTOM, Edge.TOP) is not None

    if flavor in (Flavor.STRANDS, Flavor.TOP_MODULE, Flavor.BOTTOM_MODULE):
        through = _oriented(a, b, Edge.LEFT, Edge.RIGHT)
        if through is not None:
            return through[0].position <= through[1].position
        if flavor is Flavor.TOP_MODULE:
            return _oriented(a, b, Edge.LEFT, Edge.TOP) is not None
        if flavor is Flavor.BOTTOM_MODULE:
            return _oriented(a, b, Edge.BOTTOM, Edge.RIGHT) is not None
        return False

    vertical = _oriented(a, b, Edge.BOTTOM, Edge.TOP)
    if flavor is Flavor.RIGHT_MODULE:
        if vertical is not None:
            low, high = vertical
            if low.zone != high.zone:
                return False
            return low.zone == 1 or low.position <= high.position
        cap = _oriented(a, b, Edge.BOTTOM, Edge.BOTTOM)
        return cap is not None and {a.zone, b.zone} == {0, 1}

    # LEFT_MODULE: zone 0 is the nilCoxeter half, zone 1 carries rightward veering strands
    if vertical is not None:
        low, high = vertical
        if low.zone != high.zone:
            return False
        return low.zone == 0 or low.position <= high.position
    cup = _oriented(a, b, Edge.TOP, Edge.TOP)
    return cup is not None and {a.zone, b.zone} == {0, 1}


def _interleave(p: Strand, q: Strand) -> bool:
    a, b = p[0].cycle_key, p[1].cycle_key
    c, d = q[0].cycle_key, q[1].cycle_key
    return (a < c < b) != (a < d < b)


@dataclass(frozen=True, order=True)
class BoxDiagram:
    """
    A reduced strand picture: the boundary matching of a box.

    Build instances with `BoxDiagram.build`, which normalizes the strand order
    and validates slots and admissibility.
    """

    flavor: Flavor
    spec: SlotSpec
    strands: tuple[Strand, ...]

    @classmethod
    def build(cls, flavor: Flavor, spec: SlotSpec, strands: Iterable[tuple[Slot, Slot]]) -> "BoxDiagram":
        normalized = []
        used: set[Slot] = set()
        for a, b in strands:
            for slot in (a, b):
                if not spec.contains(slot):
                    raise InvalidInputError(f"Slot {slot} is outside the box {spec}")
                if slot in used:
                    raise InvalidInputError(f"Slot {slot} is used twice")
                used.add(slot)
            if not admissible(flavor, a, b):
                raise InvalidInputError(f"Strand {a}-{b} is not admissible for {flavor.value} diagrams")
            normalized.append((a, b) if a.cycle_key < b.cycle_key else (b, a))
        normalized.sort(key=lambda s: s[0].cycle_key)
        return cls(flavor, spec, tuple(normalized))

    @classmethod
    def try_build(cls, flavor: Flavor, spec: SlotSpec, strands: Iterable[tuple[Slot, Slot]]) -> "BoxDiagram | None":
        try:
            return cls.build(flavor, spec, strands)
        except InvalidInputError:
            return None

    @cached_property
    def partner(self) -> dict[Slot, Slot]:
        result = {}
        for a, b in self.strands:
            result[a] = b
            result[b] = a
        return result

    @cached_property
    def crossing_count(self) -> int:
        strands = self.strands
        return sum(1 for p, q in itertools.combinations(strands, 2) if _interleave(p, q))

    def occupied(self, edge: Edge, zone: int | None = None) -> frozenset[int]:
        """Positions of occupied slots on an edge (optionally restricted to a zone)."""
        return frozenset(s.position for s in self.partner if s.edge is edge and (zone is None or s.zone == zone))

    def slots_on(self, edge: Edge) -> list[Slot]:
        return sorted((s for s in self.partner if s.edge is edge), key=lambda s: (s.zone, s.position))

    def __str__(self) -> str:
        if not self.strands:
            return "[]"
        return "[" + ", ".join(f"{a}-{b}" for a, b in self.strands) + "]"


def crossing_count(d: BoxDiagram) -> int:
    return d.crossing_count


# ------ 1. Gluing ------

_FLAVOR_RANK = {
    Flavor.NILCOX: 0,
    Flavor.STRANDS: 1,
    Flavor.TOP_MODULE: 2,
    Flavor.BOTTOM_MODULE: 2,
    Flavor.RIGHT_MODULE: 3,
    Flavor.LEFT_MODULE: 3,
}


def _glued_flavor(a: Flavor, b: Flavor) -> Flavor:
    if a is b:
        return a
    if _FLAVOR_RANK[a] == _FLAVOR_RANK[b]:
        raise InvalidInputError(f"Cannot glue {a.value} and {b.value} diagrams")
    return a if _FLAVOR_RANK[a] > _FLAVOR_RANK[b] else b


def _merge_zones(first: tuple[int, ...], second: tuple[int, ...]) -> tuple[int, ...]:
    if not first:
        return second
    if not second:
        return first
    return first[:-1] + (first[-1] + second[0],) + second[1:]


def _shift_juxtaposed(slot: Slot, first: SlotSpec) -> Slot:
    """Relabel a bottom/top slot of the right-hand factor after horizontal juxtaposition."""
    zones = first.bottom if slot.edge is Edge.BOTTOM else first.top
    if not zones:
        return slot
    if slot.zone == 0:
        return Slot(slot.edge, slot.position + zones[-1], len(zones) - 1)
    return Slot(slot.edge, slot.position, slot.zone + len(zones) - 1)


def glue(a: BoxDiagram, b: BoxDiagram, direction: Direction, flavor: Flavor | None = None) -> BoxDiagram | None:
    """
    Concatenate two diagrams through a shared edge.

    VERTICAL puts `a` below `b` (a.Top meets b.Bottom); HORIZONTAL puts `a` left of
    `b` (a.Right meets b.Left). Returns None when the interfaces differ, when a
    closed loop or an inadmissible strand appears, or when a double crossing is
    created. `flavor` overrides the flavor of the result (stacking a top module
    on a bottom module yields a strands-algebra diagram).
    """
    if direction is Direction.VERTICAL:
        a_edge, b_edge = Edge.TOP, Edge.BOTTOM
        if a.spec.top != b.spec.bottom:
            logger.debug(f"Interface mismatch: {a.spec.top} vs {b.spec.bottom}")
            return None
        spec = SlotSpec(
            bottom=a.spec.bottom,
            right=a.spec.right + b.spec.right,
            top=b.spec.top,
            left=a.spec.left + b.spec.left,
        )
    else:
        a_edge, b_edge = Edge.RIGHT, Edge.LEFT
        if a.spec.right != b.spec.left:
            logger.debug(f"Interface mismatch: {a.spec.right} vs {b.spec.left}")
            return None
        spec = SlotSpec(
            bottom=_merge_zones(a.spec.bottom, b.spec.bottom),
            right=b.spec.right,
            top=_merge_zones(a.spec.top, b.spec.top),
            left=a.spec.left,
        )

    a_ports = {(s.position, s.zone) for s in a.partner if s.edge is a_edge}
    b_ports = {(s.position, s.zone) for s in b.partner if s.edge is b_edge}
    if a_ports != b_ports:
        return None

    def relabel(side: int, slot: Slot) -> Slot:
        if side == 0:
            return slot
        if direction is Direction.VERTICAL:
            if slot.edge is Edge.LEFT:
                return Slot(Edge.LEFT, slot.position + a.spec.left, 0)
            if slot.edge is Edge.RIGHT:
                return Slot(Edge.RIGHT, slot.position + a.spec.right, 0)
            return slot
        if slot.edge in (Edge.BOTTOM, Edge.TOP):
            return _shift_juxtaposed(slot, a.spec)
        return slot

    diagrams = (a, b)
    interface = (a_edge, b_edge)
    done: set[tuple[int, Slot]] = set()
    crossed: set[tuple[int, int]] = set()
    result: list[Strand] = []
    for side in (0, 1):
        for start in diagrams[side].partner:
            if start.edge is interface[side] or (side, start) in done:
                continue
            cur_side, cur = side, diagrams[side].partner[start]
            while cur.edge is interface[cur_side]:
                crossed.add((cur.position, cur.zone))
                cur_side = 1 - cur_side
                cur = diagrams[cur_side].partner[Slot(interface[cur_side], cur.position, cur.zone)]
            done.add((side, start))
            done.add((cur_side, cur))
            result.append((relabel(side, start), relabel(cur_side, cur)))

    if len(crossed) != len(a_ports):
        logger.debug("Gluing closed a loop")
        return None

    glued = BoxDiagram.try_build(flavor or _glued_flavor(a.flavor, b.flavor), spec, result)
    if glued is None or glued.crossing_count != a.crossing_count + b.crossing_count:
        return None
    return glued


def juxtapose(a: BoxDiagram, b: BoxDiagram) -> BoxDiagram:
    """
    Place `b` to the right of `a` without an interface (the horizontal 2-algebra product).

    The last bottom/top zone of `a` merges with zone 0 of `b`. Crossing counts add.
    """
    if a.spec.right or b.spec.left:
        raise InvalidInputError("Juxtaposition needs diagrams without facing side slots")
    spec = SlotSpec(
        bottom=_merge_zones(a.spec.bottom, b.spec.bottom),
        right=b.spec.right,
        top=_merge_zones(a.spec.top, b.spec.top),
        left=a.spec.left,
    )
    strands = list(a.strands)
    for p, q in b.strands:
        strands.append(
            (
                _shift_juxtaposed(p, a.spec) if p.edge in (Edge.BOTTOM, Edge.TOP) else p,
                _shift_juxtaposed(q, a.spec) if q.edge in (Edge.BOTTOM, Edge.TOP) else q,
            )
        )
    return BoxDiagram.build(_glued_flavor(a.flavor, b.flavor), spec, strands)


def glue_lc(
    a: LinearCombination[BoxDiagram], b: LinearCombination[BoxDiagram], direction: Direction
) -> LinearCombination[BoxDiagram]:
    """Bilinear extension of `glue`."""
    terms = []
    for da, ca in a.items():
        for db, cb in b.items():
            glued = glue(da, db, direction)
            if glued is not None:
                terms.append((glued, ca * cb))
    return LinearCombination.from_terms(terms)


# ------ 2. Differential ------


def resolutions(d: BoxDiagram) -> list[BoxDiagram]:
    """All admissible smoothings of single crossings that drop the crossing count by one."""
    target = d.crossing_count - 1
    strands = list(d.strands)
    found = []
    for i, j in itertools.combinations(range(len(strands)), 2):
        p, q = strands[i], strands[j]
        if not _interleave(p, q):
            continue
        rest = strands[:i] + strands[i + 1 : j] + strands[j + 1 :]
        for alt in (((p[0], q[0]), (p[1], q[1])), ((p[0], q[1]), (p[1], q[0]))):
            if not all(admissible(d.flavor, s, t) for s, t in alt):
                continue
            smoothed = BoxDiagram.build(d.flavor, d.spec, rest + list(alt))
            if smoothed.crossing_count == target:
                found.append(smoothed)
    return sorted(found)


def diagram_diff(d: BoxDiagram) -> LinearCombination[BoxDiagram]:
    return LinearCombination.from_keys(resolutions(d))


def diff_lc(a: LinearCombination[BoxDiagram]) -> LinearCombination[BoxDiagram]:
    return a.map_linear(diagram_diff)


# ------ 3. The nilCoxeter sequential 2-algebra ------


def inversions(w: Sequence[int]) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


def _check_permutation(w: Sequence[int]) -> tuple[int, ...]:
    w = tuple(w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise InvalidInputError(f"Not a permutation in one-line notation: {w}")
    return w


@dataclass(frozen=True, order=True)
class NilCoxGen:
    """
    The basis element sigma_w of the nilCoxeter algebra N_m.

    `w[i-1]` is the top position reached by the strand starting at bottom position i.
    """

    w: tuple[int, ...]

    @classmethod
    def of(cls, w: Sequence[int]) -> "NilCoxGen":
        return cls(_check_permutation(w))

    @classmethod
    def identity(cls, m: int) -> "NilCoxGen":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def simple(cls, i: int, m: int) -> "NilCoxGen":
        if not 1 <= i < m:
            raise InvalidInputError(f"sigma_{i} does not exist in N_{m}")
        w = list(range(1, m + 1))
        w[i - 1], w[i] = w[i], w[i - 1]
        return cls(tuple(w))

    @classmethod
    def from_word(cls, word: Sequence[int], m: int) -> "NilCoxGen | None":
        """The product sigma_{word[0]} . sigma_{word[1]} ..., with the first letter at the bottom."""
        result: NilCoxGen | None = cls.identity(m)
        for letter in word:
            if result is None:
                return None
            result = result * cls.simple(letter, m)
        return result

    @property
    def m(self) -> int:
        return len(self.w)

    @property
    def length(self) -> int:
        return inversions(self.w)

    def __mul__(self, other: "NilCoxGen") -> "NilCoxGen | None":
        """Vertical product with `self` below `other`; zero (None) on a double crossing."""
        if self.m != other.m:
            return None
        composed = tuple(other.w[x - 1] for x in self.w)
        if inversions(composed) != self.length + other.length:
            return None
        return NilCoxGen(composed)

    def star(self, other: "NilCoxGen") -> "NilCoxGen":
        """Horizontal concatenation N_m x N_n -> N_{m+n}."""
        return NilCoxGen(self.w + tuple(x + self.m for x in other.w))

    def covers(self) -> list["NilCoxGen"]:
        """Bruhat covers: transpositions of values lowering the length by exactly one."""
        result = []
        length = self.length
        for i, j in itertools.combinations(range(self.m), 2):
            if self.w[i] < self.w[j]:
                continue
            v = list(self.w)
            v[i], v[j] = v[j], v[i]
            if inversions(v) == length - 1:
                result.append(NilCoxGen(tuple(v)))
        return sorted(result)

    def differential(self) -> LinearCombination["NilCoxGen"]:
        return LinearCombination.from_keys(self.covers())

    @property
    def diagram(self) -> BoxDiagram:
        return BoxDiagram.build(
            Flavor.NILCOX,
            SlotSpec(bottom=(self.m,), top=(self.m,)),
            [(Slot(Edge.BOTTOM, i + 1), Slot(Edge.TOP, x)) for i, x in enumerate(self.w)],
        )

    @classmethod
    def from_diagram(cls, d: BoxDiagram) -> "NilCoxGen":
        if d.flavor is not Flavor.NILCOX:
            raise InvalidInputError(f"Not a nilCoxeter diagram: {d.flavor.value}")
        (m,) = d.spec.bottom or (0,)
        w = [0] * m
        for a, b in d.strands:
            w[a.position - 1] = b.position
        return cls(tuple(w))

    def reduced_word(self) -> list[int]:
        """A reduced word, bottom letter first, found by bubble sorting the bottom order."""
        # sort positions by target; every adjacent swap of an inverted pair is one crossing
        current = list(self.w)
        swaps = []
        changed = True
        while changed:
            changed = False
            for i in range(len(current) - 1):
                if current[i] > current[i + 1]:
                    current[i], current[i + 1] = current[i + 1], current[i]
                    swaps.append(i + 1)
                    changed = True
        return swaps

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.w) + ")"


def concat_2algebra(a: NilCoxGen, b: NilCoxGen) -> NilCoxGen:
    return a.star(b)


def nc_mul_lc(a: LinearCombination[NilCoxGen], b: LinearCombination[NilCoxGen]) -> LinearCombination[NilCoxGen]:
    terms = []
    for x, cx in a.items():
        for y, cy in b.items():
            z = x * y
            if z is not None:
                terms.append((z, cx * cy))
    return LinearCombination.from_terms(terms)


def nc_star_lc(a: LinearCombination[NilCoxGen], b: LinearCombination[NilCoxGen]) -> LinearCombination[NilCoxGen]:
    return LinearCombination.from_terms((x.star(y), cx * cy) for x, cx in a.items() for y, cy in b.items())


def nc_diff_lc(a: LinearCombination[NilCoxGen]) -> LinearCombination[NilCoxGen]:
    return a.map_linear(lambda g: g.differential())


def nc_basis(m: int) -> list[NilCoxGen]:
    if m < 0:
        raise InvalidInputError(f"m must be non-negative, got {m}")
    return [NilCoxGen(w) for w in itertools.permutations(range(1, m + 1))]


def nc_homology(m: int) -> list[int]:
    """Homology dimensions of (N_m, d) in crossing degrees 0..m(m-1)/2."""
    graded: dict[int, list[NilCoxGen]] = {d: [] for d in range(m * (m - 1) // 2 + 1)}
    for g in nc_basis(m):
        graded[g.length].append(g)
    dims = chain_complex_dims(graded, lambda g: g.differential())
    return [dims[d] for d in sorted(dims)]


# ------ 4. Verification suites ------


def _lc(g: NilCoxGen) -> LinearCombination[NilCoxGen]:
    return LinearCombination.basis(g)


def nilcoxeter_suite(max_m: int) -> Report:
    """Dimensions, d^2 = 0, the two differentials, Leibniz and homology of N_m for m <= max_m."""

    def body(report: Report) -> None:
        for m in range(max_m + 1):
            basis = nc_basis(m)
            report.expect_equal(f"dim N_{m}", len(basis), math.factorial(m))
            for g in basis:
                dg = g.differential()
                report.check(f"d^2 {g}", nc_diff_lc(dg).is_zero)
                via_boxes = diagram_diff(g.diagram).map_keys(NilCoxGen.from_diagram)
                report.expect_equal(f"covers vs resolutions {g}", via_boxes, dg)
                report.expect_equal(f"word {g}", NilCoxGen.from_word(g.reduced_word(), m), g)
            if m <= 4:
                for a, b in itertools.product(basis, repeat=2):
                    lhs = nc_diff_lc(nc_mul_lc(_lc(a), _lc(b)))
                    rhs = nc_mul_lc(a.differential(), _lc(b)) + nc_mul_lc(_lc(a), b.differential())
                    report.expect_equal(f"Leibniz {a} . {b}", lhs, rhs)
            homology = nc_homology(m)
            expected = [1] if m <= 1 else [0] * (m * (m - 1) // 2 + 1)
            report.expect_equal(f"homology N_{m}", homology, expected)
        if max_m >= 3:
            s1, s2 = NilCoxGen.simple(1, 3), NilCoxGen.simple(2, 3)
            report.check("sigma_1 sigma_2 != sigma_2 sigma_1", s1 * s2 != s2 * s1)
            report.check("sigma_1^2 = 0", s1 * s1 is None)
            report.expect_equal("braid relation", NilCoxGen.from_word([1, 2, 1], 3), NilCoxGen.from_word([2, 1, 2], 3))

    return run_suite("nilcoxeter", body, max_m=max_m)


def two_algebra_suite(max_total: int = 4) -> Report:
    """Unit, associativity, Leibniz and local commutation of the horizontal product * on N."""

    def body(report: Report) -> None:
        unit = NilCoxGen.identity(0)
        for m in range(max_total + 1):
            for a in nc_basis(m):
                report.expect_equal(f"e0 * {a}", unit.star(a), a)
                report.expect_equal(f"{a} * e0", a.star(unit), a)
        for m, n in itertools.product(range(max_total + 1), repeat=2):
            if m + n > max_total:
                continue
            for a, c in itertools.product(nc_basis(m), nc_basis(n)):
                lhs = nc_diff_lc(nc_star_lc(_lc(a), _lc(c)))
                rhs = nc_star_lc(a.differential(), _lc(c)) + nc_star_lc(_lc(a), c.differential())
                report.expect_equal(f"Leibniz {a} * {c}", lhs, rhs)
                for b, d in itertools.product(nc_basis(m), nc_basis(n)):
                    lhs = nc_star_lc(nc_mul_lc(_lc(a), _lc(b)), nc_mul_lc(_lc(c), _lc(d)))
                    rhs = nc_mul_lc(nc_star_lc(_lc(a), _lc(c)), nc_star_lc(_lc(b), _lc(d)))
                    report.expect_equal(f"interchange {a} {b} {c} {d}", lhs, rhs)
            for p in range(max_total + 1 - m - n):
                for a, b, c in itertools.product(nc_basis(m), nc_basis(n), nc_basis(p)):
                    report.expect_equal(f"associative {a} * {b} * {c}", a.star(b).star(c), a.star(b.star(c)))
        if max_total >= 3:
            s1, e1 = NilCoxGen.simple(1, 2), NilCoxGen.identity(1)
            report.check("sigma_1 * e_1 != e_1 * sigma_1", s1.star(e1) != e1.star(s1))

    return run_suite("two-algebra", body, max_total=max_total)
