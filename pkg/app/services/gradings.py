"""
Gradings: the noncommutative groups G'(N), G''(N) and their top/bottom variants,
the grading gr' of strand diagrams, the tau maps, amalgamated products, and the
Alexander/Maslov bigrading of sliced planar complexes

Multiplicities live on segments of the interval (1/2, N+1/2):

Segment  Interval       BASE   TOP   BOTTOM
-------  -------------  -----  ----  ------
0        (1/2, 1)       0      0     free
p        (p, p+1)       free   free  free
N        (N, N+1/2)     0      free  0

Half-integers are stored doubled (`twice_k`) so all arithmetic stays exact.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from app.core.exceptions import InvalidInputError
from app.core.logger import get_logger
from app.services.coeffs import LinearCombination
from app.services.diagrams import BoxDiagram, Direction, Edge, Flavor, NilCoxGen, glue
from app.services.report import Report, run_suite

logger = get_logger(__name__, logging.INFO)


class GradingVariant(str, Enum):
    BASE = "base"
    TOP = "top"
    BOTTOM = "bottom"


def _free_segments(n: int, variant: GradingVariant) -> range:
    if variant is GradingVariant.TOP:
        return range(1, n + 1)
    if variant is GradingVariant.BOTTOM:
        return range(0, n)
    return range(1, n)


@dataclass(frozen=True, order=True)
class MultiplicityClass:
    """A class in H_1(Z', a) (or its top/bottom variants) given by segment multiplicities."""

    variant: GradingVariant
    segments: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.segments:
            raise InvalidInputError("A multiplicity class needs N+1 segments")
        allowed = set(_free_segments(self.n, self.variant))
        for p, value in enumerate(self.segments):
            if value and p not in allowed:
                raise InvalidInputError(f"Segment {p} must vanish in the {self.variant.value} variant")

    @classmethod
    def zero(cls, n: int, variant: GradingVariant = GradingVariant.BASE) -> "MultiplicityClass":
        return cls(variant, (0,) * (n + 1))

    @classmethod
    def interval(cls, n: int, i: int, j: int, variant: GradingVariant = GradingVariant.BASE) -> "MultiplicityClass":
        """The class [i, j] for 1 <= i < j <= N."""
        segments = [0] * (n + 1)
        for p in range(i, j):
            segments[p] = 1
        return cls(variant, tuple(segments))

    @property
    def n(self) -> int:
        return len(self.segments) - 1

    def _check(self, other: "MultiplicityClass") -> None:
        if self.variant is not other.variant or self.n != other.n:
            raise InvalidInputError(
                f"Grading variant mismatch: {self.variant.value}({self.n}) vs {other.variant.value}({other.n})"
            )

    def __add__(self, other: "MultiplicityClass") -> "MultiplicityClass":
        self._check(other)
        return MultiplicityClass(self.variant, tuple(a + b for a, b in zip(self.segments, other.segments)))

    def __neg__(self) -> "MultiplicityClass":
        return MultiplicityClass(self.variant, tuple(-a for a in self.segments))

    def twice_mult_at(self, p: int) -> int:
        """2 m(alpha, p): the sum of the multiplicities just below and just above p."""
        if not 1 <= p <= self.n:
            raise InvalidInputError(f"Point {p} is outside [1, {self.n}]")
        return self.segments[p - 1] + self.segments[p]

    def delta(self) -> tuple[int, ...]:
        """Boundary in H_0(a) as coefficients of the points 1..N; delta[i, j] = j - i."""
        return tuple(self.segments[p - 1] - self.segments[p] for p in range(1, self.n + 1))

    def twice_pairing(self, points: tuple[int, ...]) -> int:
        """2 m(alpha, x) for x in H_0(a) given by point coefficients."""
        return sum(c * self.twice_mult_at(p) for p, c in enumerate(points, start=1) if c)

    def __str__(self) -> str:
        return ",".join(str(self.segments[p]) for p in _free_segments(self.n, self.variant))


def mult_at(alpha: MultiplicityClass, p: int) -> Fraction:
    return Fraction(alpha.twice_mult_at(p), 2)


def _format_half(twice: int) -> str:
    return str(twice // 2) if twice % 2 == 0 else f"{twice}/2"


@dataclass(frozen=True, order=True)
class GradingElement:
    """(k, alpha) with the product (k1 + k2 + m(alpha2, delta alpha1), alpha1 + alpha2)."""

    twice_k: int
    alpha: MultiplicityClass

    @classmethod
    def identity(cls, n: int, variant: GradingVariant = GradingVariant.BASE) -> "GradingElement":
        return cls(0, MultiplicityClass.zero(n, variant))

    @classmethod
    def lam(cls, n: int, variant: GradingVariant = GradingVariant.BASE, power: int = 1) -> "GradingElement":
        return cls(2 * power, MultiplicityClass.zero(n, variant))

    @property
    def k(self) -> Fraction:
        return Fraction(self.twice_k, 2)

    def __mul__(self, other: "GradingElement") -> "GradingElement":
        return g_mul(self, other)

    def inverse(self) -> "GradingElement":
        return GradingElement(-self.twice_k + self.alpha.twice_pairing(self.alpha.delta()), -self.alpha)

    def __pow__(self, power: int) -> "GradingElement":
        base = self if power >= 0 else self.inverse()
        result = GradingElement.identity(self.alpha.n, self.alpha.variant)
        for _ in range(abs(power)):
            result = result * base
        return result

    def __str__(self) -> str:
        return f"({_format_half(self.twice_k)}; {self.alpha})"


def g_mul(g1: GradingElement, g2: GradingElement) -> GradingElement:
    alpha = g1.alpha + g2.alpha
    return GradingElement(g1.twice_k + g2.twice_k + g2.alpha.twice_pairing(g1.alpha.delta()), alpha)


def generator(n: int, segment: int, variant: GradingVariant = GradingVariant.BASE) -> GradingElement:
    """The generator (-1/2, e_segment) of the index-two subgroup."""
    segments = [0] * (n + 1)
    segments[segment] = 1
    return GradingElement(-1, MultiplicityClass(variant, tuple(segments)))


def canonical_lift(alpha: MultiplicityClass) -> GradingElement:
    """The ordered product of generator powers with homology class alpha."""
    result = GradingElement.identity(alpha.n, alpha.variant)
    for p in _free_segments(alpha.n, alpha.variant):
        if alpha.segments[p]:
            result = result * generator(alpha.n, p, alpha.variant) ** alpha.segments[p]
    return result


def in_index_two_subgroup(g: GradingElement) -> bool:
    """Whether g lies in G'' (lifts of the same class differ by integral powers of lambda)."""
    return (g.twice_k - canonical_lift(g.alpha).twice_k) % 2 == 0


def tau(g: GradingElement) -> int:
    """Multiplicity near N+1/2 (top variant) or near 1/2 (bottom variant); zero on G''(N)."""
    if g.alpha.variant is GradingVariant.TOP:
        return g.alpha.segments[-1]
    if g.alpha.variant is GradingVariant.BOTTOM:
        return g.alpha.segments[0]
    return 0


# ------ gr' of strand diagrams ------


def variant_of(d: BoxDiagram) -> GradingVariant:
    if d.flavor is Flavor.TOP_MODULE:
        return GradingVariant.TOP
    if d.flavor is Flavor.BOTTOM_MODULE:
        return GradingVariant.BOTTOM
    if d.flavor is Flavor.STRANDS:
        return GradingVariant.BASE
    raise InvalidInputError(f"No G'' grading for {d.flavor.value} diagrams")


def homology_class(d: BoxDiagram) -> MultiplicityClass:
    """[a]: the sum of the intervals covered by the strands, half-infinite for free strands."""
    n = d.spec.left
    segments = [0] * (n + 1)
    for a, b in d.strands:
        ends = {a.edge: a, b.edge: b}
        if Edge.LEFT in ends and Edge.RIGHT in ends:
            covered = range(ends[Edge.LEFT].position, ends[Edge.RIGHT].position)
        elif Edge.LEFT in ends and Edge.TOP in ends:
            covered = range(ends[Edge.LEFT].position, n + 1)
        elif Edge.BOTTOM in ends and Edge.RIGHT in ends:
            covered = range(0, ends[Edge.RIGHT].position)
        else:
            raise InvalidInputError(f"Strand {a}-{b} has no homology class")
        for p in covered:
            segments[p] += 1
    return MultiplicityClass(variant_of(d), tuple(segments))


def gr_prime(d: BoxDiagram) -> GradingElement:
    """gr'(a) = (cr(a) - m([a], S), [a]) with S the occupied left points."""
    alpha = homology_class(d)
    twice_m = sum(alpha.twice_mult_at(p) for p in d.occupied(Edge.LEFT))
    return GradingElement(2 * d.crossing_count - twice_m, alpha)


# ------ Amalgamated products ------


class AmalgamationMode(str, Enum):
    PAIR = "pair"
    TRIPLE = "triple"


@dataclass(frozen=True, order=True)
class AmalgamatedElement:
    """A class in G1 x_lambda G2, with all of lambda collected in `twice_k`."""

    twice_k: int
    alpha1: MultiplicityClass
    alpha2: MultiplicityClass

    def __str__(self) -> str:
        return f"({_format_half(self.twice_k)}; {self.alpha1} | {self.alpha2})"


def amalgamate(g1: GradingElement, g2: GradingElement, mode: AmalgamationMode = AmalgamationMode.PAIR) -> AmalgamatedElement:
    if mode is AmalgamationMode.TRIPLE and tau(g1) != tau(g2):
        raise InvalidInputError(f"tau mismatch in the fibered product: {tau(g1)} vs {tau(g2)}")
    return AmalgamatedElement(g1.twice_k + g2.twice_k, g1.alpha, g2.alpha)


def amalgamated_mul(x: AmalgamatedElement, y: AmalgamatedElement) -> AmalgamatedElement:
    first = g_mul(GradingElement(0, x.alpha1), GradingElement(0, y.alpha1))
    second = g_mul(GradingElement(0, x.alpha2), GradingElement(0, y.alpha2))
    return AmalgamatedElement(x.twice_k + y.twice_k + first.twice_k + second.twice_k, first.alpha, second.alpha)


def amalgamate_to_total(g1: GradingElement, g2: GradingElement) -> GradingElement:
    """Identify G''_T(N) x_{lambda,tau} G''_B(N') with G''(N+N') by concatenating intervals at N+1/2."""
    if g1.alpha.variant is not GradingVariant.TOP or g2.alpha.variant is not GradingVariant.BOTTOM:
        raise InvalidInputError("Expected a top-variant element followed by a bottom-variant element")
    joined = amalgamate(g1, g2, AmalgamationMode.TRIPLE)
    first, second = joined.alpha1.segments, joined.alpha2.segments
    segments = first + second[1:]
    return GradingElement(joined.twice_k, MultiplicityClass(GradingVariant.BASE, segments))


# ------ Alexander/Maslov bigrading ------


@dataclass(frozen=True, order=True)
class Bigrade:
    alexander: int = 0
    maslov: int = 0

    def __add__(self, other: "Bigrade") -> "Bigrade":
        return Bigrade(self.alexander + other.alexander, self.maslov + other.maslov)

    def __sub__(self, other: "Bigrade") -> "Bigrade":
        return Bigrade(self.alexander - other.alexander, self.maslov - other.maslov)

    def __str__(self) -> str:
        return f"(A={self.alexander}, mu={self.maslov})"


U_BIGRADE = Bigrade(-1, -2)


def rows_met(d: BoxDiagram) -> list[int]:
    """
    For every strand, the rows r whose line at height r+1/2 it crosses.

    A through strand i -> j meets rows i..j-1, a free top strand from s meets
    rows s..N, an entering bottom strand ending at e meets rows 0..e-1.
    """
    n = d.spec.left
    met = []
    for a, b in d.strands:
        ends = {a.edge: a, b.edge: b}
        if Edge.LEFT in ends and Edge.RIGHT in ends:
            met.extend(range(ends[Edge.LEFT].position, ends[Edge.RIGHT].position))
        elif Edge.LEFT in ends and Edge.TOP in ends:
            met.extend(range(ends[Edge.LEFT].position, n + 1))
        elif Edge.BOTTOM in ends and Edge.RIGHT in ends:
            met.extend(range(0, ends[Edge.RIGHT].position))
    return met


def bigrade_algebra(d: BoxDiagram, x_rows: frozenset[int] | set[int], o_rows: frozenset[int] | set[int]) -> Bigrade:
    """A = L_X - L_O and mu = cr - 2 L_O for the marking lines at rows+1/2."""
    met = rows_met(d)
    lx = sum(1 for r in met if r in x_rows)
    lo = sum(1 for r in met if r in o_rows)
    return Bigrade(lx - lo, d.crossing_count - 2 * lo)


# ------ Verification suite ------


def _random_element(rng: random.Random, n: int, variant: GradingVariant) -> GradingElement:
    free = set(_free_segments(n, variant))
    segments = tuple(rng.randint(-2, 2) if p in free else 0 for p in range(n + 1))
    return GradingElement(rng.randint(-4, 4), MultiplicityClass(variant, segments))


def grading_suite(n: int, seed: int = 0, samples: int = 50) -> Report:
    """Group axioms, gr' multiplicativity and the differential/module laws on A(N), T(N), B(N)."""
    # imported here: strands imports this module for the bnt grading check
    from app.services import strands

    def body(report: Report) -> None:
        rng = random.Random(seed)
        for variant in GradingVariant:
            lam = GradingElement.lam(n, variant)
            for case in range(samples):
                a, b, c = (_random_element(rng, n, variant) for _ in range(3))
                tag = f"{variant.value} #{case}"
                report.expect_equal(f"associative {tag}", (a * b) * c, a * (b * c))
                report.expect_equal(f"lambda central {tag}", lam * a, a * lam)
                report.expect_equal(f"inverse {tag}", a * a.inverse(), GradingElement.identity(n, variant))
                report.expect_equal(f"identity {tag}", GradingElement.identity(n, variant) * a, a)
                if variant is GradingVariant.BASE:
                    twice = b.alpha.twice_pairing(a.alpha.delta())
                    report.expect_equal(f"commutator {tag}", a * b, b * a * GradingElement.lam(n, variant, twice))
                report.expect_equal(f"tau homomorphism {tag}", tau(a * b), tau(a) + tau(b))
            report.expect_equal(f"tau(lambda) {variant.value}", tau(lam), 0)

        collections = [
            ("A", strands.strands_basis(n)),
            ("T", [t for m in range(n + 1) for t in strands.top_basis(n, m)]),
            ("B", [b for m in range(n + 1) for b in strands.bottom_basis(n, m)]),
        ]
        for label, basis in collections:
            grades = {d: gr_prime(d) for d in basis}
            for d, g in grades.items():
                report.check(f"{label} in G'' {d}", in_index_two_subgroup(g), str(g))
                report.expect_equal(f"{label} tau {d}", tau(g), strands.module_index(d))
                for term in strands.strands_diff(LinearCombination.basis(d)).keys():
                    report.expect_equal(f"{label} d lowers {d}", gr_prime(term), GradingElement.lam(n, g.alpha.variant, -1) * g)
            for x, y in itertools.product(basis, repeat=2):
                product = glue(x, y, Direction.HORIZONTAL)
                if product is not None:
                    report.expect_equal(f"{label} gr'({x}*{y})", gr_prime(product), grades[x] * grades[y])

        for m in range(min(n, 2) + 1):
            for t in strands.top_basis(n, m):
                for w in itertools.permutations(range(1, m + 1)):
                    sigma = NilCoxGen(w)
                    acted = strands.act_top(LinearCombination.basis(t), LinearCombination.basis(sigma))
                    for key in acted.keys():
                        expected = GradingElement.lam(n, GradingVariant.TOP, sigma.length) * gr_prime(t)
                        report.expect_equal(f"module law {t} . {sigma}", gr_prime(key), expected)

        rng = random.Random(seed + 1)
        for case in range(samples):
            x_rows = frozenset(r for r in range(n + 1) if rng.random() < 0.4)
            o_rows = frozenset(r for r in range(n + 1) if r not in x_rows and rng.random() < 0.5)
            basis = collections[0][1]
            x, y = rng.choice(basis), rng.choice(basis)
            product = glue(x, y, Direction.HORIZONTAL)
            if product is not None:
                report.expect_equal(
                    f"bigrade product #{case}",
                    bigrade_algebra(product, x_rows, o_rows),
                    bigrade_algebra(x, x_rows, o_rows) + bigrade_algebra(y, x_rows, o_rows),
                )
            for term in strands.strands_diff(LinearCombination.basis(x)).keys():
                report.expect_equal(
                    f"bigrade d #{case}",
                    bigrade_algebra(term, x_rows, o_rows),
                    bigrade_algebra(x, x_rows, o_rows) - Bigrade(0, 1),
                )

    return run_suite("gradings", body, n=n, seed=seed, samples=samples)
