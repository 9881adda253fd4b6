"""
The algebra-modules R(k) and L(k) attached to a horizontal cut

Family  Flavor         Box                         Zone 0                  Zone 1
------  -------------  --------------------------  ----------------------  ----------------------
R(k)    RIGHT_MODULE   bottom=(k, m), top=(k, p)   rightward strands and   nilCoxeter strands and
                                                   cap feet                cap feet
L(k)    LEFT_MODULE    bottom=(m, k), top=(p, k)   nilCoxeter strands and  rightward strands and
                                                   cup feet                cup feet

The vertical product a . b puts a below b. The nilCoxeter algebra acts by
juxtaposition: on the right of R(k), on the left of L(k).

Both algebras are direct products over the bottom interface, so a generator such
as lambda_{i,j} is the family of its local pieces. Families are truncated at a
nilCoxeter size `max_m`; every relation checked below closes under truncation.
"""

import itertools
import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum

from app.core.exceptions import InvalidInputError
from app.core.logger import get_logger
from app.services.coeffs import LinearCombination, bilinear, lc_sum
from app.services.diagrams import (
    BoxDiagram,
    Direction,
    Edge,
    Flavor,
    NilCoxGen,
    Slot,
    SlotSpec,
    diff_lc,
    glue,
    glue_lc,
    juxtapose,
    nc_basis,
    nc_mul_lc,
)
from app.services.report import Report, run_suite
from app.services.strands import _lift, _partial_injections, _subsets, format_set

logger = get_logger(__name__, logging.INFO)

Element = LinearCombination[BoxDiagram]


class Side(str, Enum):
    RIGHT = "R"
    LEFT = "L"


class LetterKind(str, Enum):
    IDEMPOTENT = "J"
    CHORD = "lambda"
    SIMPLE = "sigma"
    PERM = "perm"
    CAP = "xi"
    CUP = "zeta"


@dataclass(frozen=True, order=True)
class Letter:
    """A generator family; `w` is only used by PERM, a fixed nilCoxeter permutation."""

    kind: LetterKind
    i: int = 0
    j: int = 0
    w: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind is LetterKind.CHORD:
            return f"lambda{self.i}{self.j}"
        if self.kind is LetterKind.PERM:
            return f"sigma{NilCoxGen(self.w)}"
        if self.kind is LetterKind.IDEMPOTENT:
            return "J"
        return f"{self.kind.value}{self.i}"


@dataclass(frozen=True, order=True)
class Interface:
    """One edge of a local piece: occupied rightward positions and the nilCoxeter size."""

    positions: tuple[int, ...]
    m: int

    @classmethod
    def of(cls, positions: Iterable[int], m: int) -> "Interface":
        return cls(tuple(sorted(positions)), m)

    def __str__(self) -> str:
        return f"({format_set(self.positions)},{self.m})"


def interfaces(k: int, max_m: int) -> list[Interface]:
    return [Interface(s, m) for s in _subsets(k) for m in range(max_m + 1)]


# ------ 1. Generators of R(k) ------


def r_diagram(
    k: int,
    m: int,
    through: Mapping[int, int],
    caps: Mapping[int, int] | None = None,
    nilcox: Mapping[int, int] | None = None,
) -> BoxDiagram:
    """
    A basis diagram of R(k) with m nilCoxeter points at the bottom.

    `through` maps zone-0 bottom positions to zone-0 top positions, `caps` maps a
    zone-0 bottom foot to the zone-1 bottom point it is joined with, and `nilcox`
    maps the surviving zone-1 bottom points to their tops.
    """
    caps = caps or {}
    nilcox = nilcox or {}
    if set(caps.values()) | set(nilcox) != set(range(1, m + 1)) or len(caps) + len(nilcox) != m:
        raise InvalidInputError(f"Every one of the {m} nilCoxeter points needs exactly one strand")
    strands = [(Slot(Edge.BOTTOM, a), Slot(Edge.TOP, b)) for a, b in through.items()]
    strands += [(Slot(Edge.BOTTOM, a), Slot(Edge.BOTTOM, q, 1)) for a, q in caps.items()]
    strands += [(Slot(Edge.BOTTOM, q, 1), Slot(Edge.TOP, t, 1)) for q, t in nilcox.items()]
    return BoxDiagram.build(Flavor.RIGHT_MODULE, SlotSpec(bottom=(k, m), top=(k, len(nilcox))), strands)


def r_parts(d: BoxDiagram) -> tuple[dict[int, int], dict[int, int], dict[int, int]]:
    """(through, caps, nilcox) of an R(k) diagram, as accepted by `r_diagram`."""
    through, caps, nilcox = {}, {}, {}
    for a, b in d.strands:
        if b.edge is Edge.BOTTOM:
            caps[a.position] = b.position
        elif a.zone == 0:
            through[a.position] = b.position
        else:
            nilcox[a.position] = b.position
    return through, caps, nilcox


def r_bottom(d: BoxDiagram) -> Interface:
    return Interface.of(d.occupied(Edge.BOTTOM, 0), d.spec.bottom[1])


def r_top(d: BoxDiagram) -> Interface:
    return Interface.of(d.occupied(Edge.TOP, 0), d.spec.top[1])


def r_piece(k: int, letter: Letter, bottom: Interface) -> BoxDiagram | None:
    """The local piece of a generator family on a bottom interface (None when it is zero there)."""
    s, m = set(bottom.positions), bottom.m
    identity = {a: a for a in s}
    kept = {q: q for q in range(1, m + 1)}
    if letter.kind is LetterKind.IDEMPOTENT:
        return r_diagram(k, m, identity, nilcox=kept)
    if letter.kind is LetterKind.CHORD:
        i, j = letter.i, letter.j
        if not (i < j and i in s and j not in s and j <= k):
            return None
        return r_diagram(k, m, {**identity, i: j}, nilcox=kept)
    if letter.kind is LetterKind.SIMPLE:
        if not 1 <= letter.i < m:
            return None
        w = NilCoxGen.simple(letter.i, m).w
        return r_diagram(k, m, identity, nilcox={q: w[q - 1] for q in kept})
    if letter.kind is LetterKind.PERM:
        if len(letter.w) != m:
            return None
        return r_diagram(k, m, identity, nilcox={q: letter.w[q - 1] for q in kept})
    if letter.kind is LetterKind.CAP:
        if letter.i not in s or m == 0:
            return None
        rest = {a: a for a in s if a != letter.i}
        return r_diagram(k, m, rest, caps={letter.i: 1}, nilcox={q: q - 1 for q in range(2, m + 1)})
    raise InvalidInputError(f"{letter.kind.value} is not a generator of R(k)")


def r_family(k: int, letter: Letter, max_m: int) -> Element:
    """The generator as the sum of its local pieces over all bottom interfaces with m <= max_m."""
    return LinearCombination.from_keys(
        d for d in (r_piece(k, letter, face) for face in interfaces(k, max_m)) if d is not None
    )


def r_local(k: int, letter: Letter, bottom: Interface) -> Element:
    return _lift(r_piece(k, letter, bottom)) or LinearCombination.zero()


def r_basis(k: int, m: int, p: int) -> list[BoxDiagram]:
    """All basis diagrams of R(k) with m nilCoxeter points at the bottom and p at the top."""
    if p > m or m - p > k:
        return []
    result = []
    for feet in itertools.combinations(range(1, k + 1), m - p):
        rest = [a for a in range(1, k + 1) if a not in feet]
        for starts in itertools.chain.from_iterable(itertools.combinations(rest, size) for size in range(len(rest) + 1)):
            for through in _partial_injections(k, starts):
                for kept in itertools.combinations(range(1, m + 1), p):
                    capped = [q for q in range(1, m + 1) if q not in kept]
                    for order in itertools.permutations(feet):
                        caps = {a: q for a, q in zip(order, capped)}
                        for tops in itertools.permutations(range(1, p + 1)):
                            result.append(r_diagram(k, m, through, caps, dict(zip(kept, tops))))
    return sorted(result)


def count_r(k: int, m: int, p: int) -> int:
    """Independent count of R(k)_{m,p} by brute force over the combinatorial data."""
    if p > m:
        return 0
    count = 0
    for feet in itertools.combinations(range(1, k + 1), m - p):
        rest = [a for a in range(1, k + 1) if a not in feet]
        for size in range(len(rest) + 1):
            for starts in itertools.combinations(rest, size):
                for target in itertools.combinations(range(1, k + 1), size):
                    for image in itertools.permutations(target):
                        if all(s <= e for s, e in zip(starts, image)):
                            count += 1
    # choosing the kept points, their tops and the cap pairing is m! in total
    return count * math.factorial(m)


def r_word(d: BoxDiagram) -> list[Letter]:
    """
    Factor an R(k) basis diagram into local letters, bottom letter first.

    The order is shuffle, caps by increasing zone-1 foot, chords by decreasing end,
    then the surviving nilCoxeter permutation; crossing counts add along it.
    """
    through, caps, nilcox = r_parts(d)
    m = d.spec.bottom[1]
    capped = sorted(caps.items(), key=lambda item: item[1])
    kept = sorted(nilcox)
    order = [q for _, q in capped] + kept
    shuffle = [0] * m
    for t, q in enumerate(order, 1):
        shuffle[q - 1] = t
    word = [Letter(LetterKind.PERM, w=tuple(shuffle))]
    word += [Letter(LetterKind.CAP, i=a) for a, _ in capped]
    moves = sorted(((a, b) for a, b in through.items() if a != b), key=lambda mv: -mv[1])
    word += [Letter(LetterKind.CHORD, i=a, j=b) for a, b in moves]
    word.append(Letter(LetterKind.PERM, w=tuple(nilcox[q] for q in kept)))
    return word


def format_r(d: BoxDiagram) -> str:
    through, caps, nilcox = r_parts(d)
    pairs = ", ".join(f"{a}->{through[a]}" for a in sorted(through))
    feet = ", ".join(f"{a}~{q}" for a, q in sorted(caps.items()))
    kept = ", ".join(f"{q}->{nilcox[q]}" for q in sorted(nilcox))
    return f"R {r_bottom(d)}->{r_top(d)}: [{pairs}] caps[{feet}] nc[{kept}]"


# ------ 2. Generators of L(k) ------


def l_diagram(
    k: int,
    m: int,
    nilcox: Mapping[int, int],
    through: Mapping[int, int],
    cups: Mapping[int, int] | None = None,
) -> BoxDiagram:
    """
    A basis diagram of L(k) with m nilCoxeter points at the bottom.

    `nilcox` maps zone-0 bottom points to zone-0 top points, `through` maps zone-1
    bottom positions to zone-1 top positions, and `cups` maps a zone-0 top point to
    the zone-1 top foot it is joined with.
    """
    cups = cups or {}
    if sorted(nilcox) != list(range(1, m + 1)):
        raise InvalidInputError(f"Every one of the {m} nilCoxeter points needs a strand")
    p = len(nilcox) + len(cups)
    strands = [(Slot(Edge.BOTTOM, q), Slot(Edge.TOP, t)) for q, t in nilcox.items()]
    strands += [(Slot(Edge.BOTTOM, a, 1), Slot(Edge.TOP, b, 1)) for a, b in through.items()]
    strands += [(Slot(Edge.TOP, q), Slot(Edge.TOP, a, 1)) for q, a in cups.items()]
    return BoxDiagram.build(Flavor.LEFT_MODULE, SlotSpec(bottom=(m, k), top=(p, k)), strands)


def l_parts(d: BoxDiagram) -> tuple[dict[int, int], dict[int, int], dict[int, int]]:
    """(nilcox, through, cups) of an L(k) diagram, as accepted by `l_diagram`."""
    nilcox, through, cups = {}, {}, {}
    for a, b in d.strands:
        if a.edge is Edge.TOP:
            # the zone-1 end of a cup comes first on the boundary cycle
            cups[b.position] = a.position
        elif a.zone == 0:
            nilcox[a.position] = b.position
        else:
            through[a.position] = b.position
    return nilcox, through, cups


def l_bottom(d: BoxDiagram) -> Interface:
    return Interface.of(d.occupied(Edge.BOTTOM, 1), d.spec.bottom[0])


def l_top(d: BoxDiagram) -> Interface:
    return Interface.of(d.occupied(Edge.TOP, 1), d.spec.top[0])


def l_piece(k: int, letter: Letter, bottom: Interface) -> BoxDiagram | None:
    s, m = set(bottom.positions), bottom.m
    identity = {a: a for a in s}
    kept = {q: q for q in range(1, m + 1)}
    if letter.kind is LetterKind.IDEMPOTENT:
        return l_diagram(k, m, kept, identity)
    if letter.kind is LetterKind.CHORD:
        i, j = letter.i, letter.j
        if not (i < j and i in s and j not in s and j <= k):
            return None
        return l_diagram(k, m, kept, {**identity, i: j})
    if letter.kind is LetterKind.SIMPLE:
        if not 1 <= letter.i < m:
            return None
        w = NilCoxGen.simple(letter.i, m).w
        return l_diagram(k, m, {q: w[q - 1] for q in kept}, identity)
    if letter.kind is LetterKind.PERM:
        if len(letter.w) != m:
            return None
        return l_diagram(k, m, {q: letter.w[q - 1] for q in kept}, identity)
    if letter.kind is LetterKind.CUP:
        if letter.i in s or not 1 <= letter.i <= k:
            return None
        return l_diagram(k, m, kept, identity, {m + 1: letter.i})
    raise InvalidInputError(f"{letter.kind.value} is not a generator of L(k)")


def l_family(k: int, letter: Letter, max_m: int) -> Element:
    return LinearCombination.from_keys(
        d for d in (l_piece(k, letter, face) for face in interfaces(k, max_m)) if d is not None
    )


def l_local(k: int, letter: Letter, bottom: Interface) -> Element:
    return _lift(l_piece(k, letter, bottom)) or LinearCombination.zero()


def l_basis(k: int, m: int, p: int) -> list[BoxDiagram]:
    """All basis diagrams of L(k) with m nilCoxeter points at the bottom and p at the top."""
    if p < m or p - m > k:
        return []
    result = []
    for starts in _subsets(k):
        for through in _partial_injections(k, starts):
            free = [a for a in range(1, k + 1) if a not in through.values()]
            for feet in itertools.permutations(free, p - m):
                for kept in itertools.combinations(range(1, p + 1), m):
                    capped = [q for q in range(1, p + 1) if q not in kept]
                    # cup points in increasing order take the feet in the chosen order
                    cups = dict(zip(capped, feet))
                    for tops in itertools.permutations(kept):
                        result.append(l_diagram(k, m, dict(zip(range(1, m + 1), tops)), through, cups))
    return sorted(set(result))


def l_word(d: BoxDiagram) -> list[Letter]:
    """
    Factor an L(k) basis diagram into local letters, bottom letter first.

    The order is nilCoxeter permutation, chords by decreasing start, cups by
    increasing zone-0 point, then the shuffle placing the cup points.
    """
    nilcox, through, cups = l_parts(d)
    m = d.spec.bottom[0]
    kept_tops = sorted(nilcox.values())
    rank = {t: r for r, t in enumerate(kept_tops, 1)}
    word = [Letter(LetterKind.PERM, w=tuple(rank[nilcox[q]] for q in range(1, m + 1)))]
    moves = sorted(((a, b) for a, b in through.items() if a != b), key=lambda mv: -mv[0])
    word += [Letter(LetterKind.CHORD, i=a, j=b) for a, b in moves]
    cup_list = sorted(cups.items())
    word += [Letter(LetterKind.CUP, i=a) for _, a in cup_list]
    word.append(Letter(LetterKind.PERM, w=tuple(kept_tops + [q for q, _ in cup_list])))
    return word


def format_l(d: BoxDiagram) -> str:
    nilcox, through, cups = l_parts(d)
    kept = ", ".join(f"{q}->{nilcox[q]}" for q in sorted(nilcox))
    pairs = ", ".join(f"{a}->{through[a]}" for a in sorted(through))
    feet = ", ".join(f"{q}~{a}" for q, a in sorted(cups.items()))
    return f"L {l_bottom(d)}->{l_top(d)}: nc[{kept}] [{pairs}] cups[{feet}]"


# ------ 3. Products, words and the nilCoxeter action ------


def vmul(a: Element, b: Element) -> Element:
    """The vertical product a . b (a below b)."""
    return glue_lc(a, b, Direction.VERTICAL)


def vchain(*factors: Element) -> Element:
    result = factors[0]
    for factor in factors[1:]:
        result = vmul(result, factor)
    return result


def vdiff(a: Element) -> Element:
    return diff_lc(a)


def word_product(side: Side, k: int, word: Sequence[Letter], bottom: Interface) -> BoxDiagram | None:
    """Glue the local pieces of a word starting from `bottom`; None once the product vanishes."""
    piece = r_piece if side is Side.RIGHT else l_piece
    top_of = r_top if side is Side.RIGHT else l_top
    result: BoxDiagram | None = None
    face = bottom
    for letter in word:
        d = piece(k, letter, face)
        if d is None:
            return None
        result = d if result is None else glue(result, d, Direction.VERTICAL)
        if result is None:
            return None
        face = top_of(d)
    return result


def r_star(a: Element, sigma: LinearCombination[NilCoxGen]) -> Element:
    """Right action a * sigma: sigma juxtaposed to the right of the nilCoxeter zone."""
    return bilinear(a, sigma, lambda x, w: LinearCombination.basis(juxtapose(x, w.diagram)))


def l_star(sigma: LinearCombination[NilCoxGen], a: Element) -> Element:
    """Left action sigma * a: sigma juxtaposed to the left of the nilCoxeter zone."""
    return bilinear(sigma, a, lambda w, x: LinearCombination.basis(juxtapose(w.diagram, x)))


def unit(side: Side, k: int, max_m: int) -> Element:
    family = r_family if side is Side.RIGHT else l_family
    return family(k, Letter(LetterKind.IDEMPOTENT), max_m)


# ------ 4. Relation suites ------


def _sigma_lc(m: int) -> list[LinearCombination[NilCoxGen]]:
    return [LinearCombination.basis(g) for g in nc_basis(m)]


def _common_laws(report: Report, side: Side, k: int, max_m: int) -> None:
    """Laws shared by R(k) and L(k): counts, words, d^2, Leibniz and the nilCoxeter action."""
    basis_of = r_basis if side is Side.RIGHT else l_basis
    bottom_of = r_bottom if side is Side.RIGHT else l_bottom
    word_of = r_word if side is Side.RIGHT else l_word
    local = r_local if side is Side.RIGHT else l_local
    shapes = [(m, p) for m in range(max_m + 1) for p in range(max_m + 1)]
    basis = [d for m, p in shapes for d in basis_of(k, m, p)]

    for m, p in shapes:
        if side is Side.RIGHT:
            report.expect_equal(f"dim R({k})_{m},{p}", len(r_basis(k, m, p)), count_r(k, m, p))
        else:
            # rotating a picture by a half turn exchanges the two families
            report.expect_equal(f"dim L({k})_{m},{p}", len(l_basis(k, m, p)), count_r(k, p, m))
    for d in basis:
        x = LinearCombination.basis(d)
        report.check(f"d^2 {d}", vdiff(vdiff(x)).is_zero)
        report.expect_equal(f"word {d}", word_product(side, k, word_of(d), bottom_of(d)), d)
        face = bottom_of(d)
        report.expect_equal(f"J . {d}", vmul(local(k, Letter(LetterKind.IDEMPOTENT), face), x), x)

    by_bottom: dict[Interface, list[BoxDiagram]] = {}
    for d in basis:
        by_bottom.setdefault(bottom_of(d), []).append(d)
    top_of = r_top if side is Side.RIGHT else l_top
    for a in basis:
        for b in by_bottom.get(top_of(a), []):
            x, y = LinearCombination.basis(a), LinearCombination.basis(b)
            report.expect_equal(f"Leibniz {a} {b}", vdiff(vmul(x, y)), vmul(vdiff(x), y) + vmul(x, vdiff(y)))

    # local commutation (a * s) . (b * t) = (a . b) * (s . t) on small pieces
    small = [d for d in basis if d.crossing_count <= 1]
    for a in small:
        for b in by_bottom.get(top_of(a), []):
            if b.crossing_count > 1:
                continue
            for s, t in itertools.product(_sigma_lc(2), repeat=2):
                x, y = LinearCombination.basis(a), LinearCombination.basis(b)
                if side is Side.RIGHT:
                    lhs = vmul(r_star(x, s), r_star(y, t))
                    rhs = r_star(vmul(x, y), nc_mul_lc(s, t))
                else:
                    lhs = vmul(l_star(s, x), l_star(t, y))
                    rhs = l_star(nc_mul_lc(s, t), vmul(x, y))
                report.expect_equal(f"interchange {a} {b}", lhs, rhs)


def _chord_laws(report: Report, family, k: int, max_m: int) -> dict[tuple[int, int], Element]:
    """Relations among the rightward chords; identical for both families."""
    pairs = list(itertools.combinations(range(1, k + 1), 2))
    lam = {(i, j): family(k, Letter(LetterKind.CHORD, i, j), max_m) for i, j in pairs}
    for (i, j), chord in lam.items():
        expected = lc_sum(vmul(lam[(l, j)], lam[(i, l)]) for l in range(i + 1, j))
        report.expect_equal(f"d lambda{i}{j}", vdiff(chord), expected)
    for i, j, l in itertools.combinations(range(1, k + 1), 3):
        report.expect_equal(
            f"lambda{i}{j} . lambda{j}{l} = lambda{i}{l}",
            vmul(lam[(i, j)], lam[(j, l)]),
            _restrict_missing(lam[(i, l)], j),
        )
    for (i, j), (l, n) in itertools.product(pairs, repeat=2):
        if j < l or i < l < n < j:
            report.expect_equal(
                f"lambda{i}{j} . lambda{l}{n} commute",
                vmul(lam[(i, j)], lam[(l, n)]),
                vmul(lam[(l, n)], lam[(i, j)]),
            )
        if i < l < j < n:
            report.check(f"lambda{i}{j} . lambda{l}{n} = 0", not vmul(lam[(i, j)], lam[(l, n)]))
    return lam


def _restrict_missing(a: Element, position: int) -> Element:
    """The local pieces of `a` whose bottom interface does not contain `position`."""
    return LinearCombination.from_terms(
        (d, c) for d, c in a.items() if position not in (r_bottom(d) if d.flavor is Flavor.RIGHT_MODULE else l_bottom(d)).positions
    )


def _restrict_bottom(a: Element, face: Interface) -> Element:
    return LinearCombination.from_terms(
        (d, c) for d, c in a.items() if (r_bottom(d) if d.flavor is Flavor.RIGHT_MODULE else l_bottom(d)) == face
    )


def relation_suite_r(k: int, max_m: int = 2) -> Report:
    """Defining relations of R(k) and its dg and nilCoxeter-module laws."""

    def body(report: Report) -> None:
        faces = interfaces(k, max_m)
        ids = {face: r_local(k, Letter(LetterKind.IDEMPOTENT), face) for face in faces}
        xi = {i: r_family(k, Letter(LetterKind.CAP, i), max_m) for i in range(1, k + 1)}
        sigma = {v: r_family(k, Letter(LetterKind.SIMPLE, v), max_m) for v in range(1, max_m)}
        lam = _chord_laws(report, r_family, k, max_m)

        for f, g in itertools.product(faces, repeat=2):
            expected = ids[f] if f == g else LinearCombination.zero()
            report.expect_equal(f"J{f} . J{g}", vmul(ids[f], ids[g]), expected)
        for v, s in sigma.items():
            report.check(f"sigma{v}^2 = 0", not vmul(s, s))
            for w, t in sigma.items():
                if abs(v - w) > 1:
                    report.expect_equal(f"sigma{v} sigma{w} commute", vmul(s, t), vmul(t, s))
                if w == v + 1:
                    report.expect_equal(f"braid {v}{w}", vchain(s, t, s), vchain(t, s, t))
            report.expect_equal(
                f"d sigma{v}", vdiff(s), LinearCombination.from_keys(r_piece(k, Letter(LetterKind.IDEMPOTENT), face) for face in faces if face.m > v)
            )
            for face in faces:
                report.expect_equal(f"J{face} . sigma{v}", vmul(ids[face], s), vmul(s, ids[face]))
                if face.m <= v:
                    report.check(f"J{face} . sigma{v} = 0", not vmul(ids[face], s))
            for chord in lam.values():
                report.expect_equal(f"sigma{v} commutes with chords", vmul(chord, s), vmul(s, chord))

        for i, x in xi.items():
            expected = lc_sum(vmul(xi[j], lam[(i, j)]) for j in range(i + 1, k + 1))
            report.expect_equal(f"d xi{i}", vdiff(x), expected)
            for face in faces:
                s = set(face.positions)
                if i not in s or face.m == 0:
                    report.check(f"J{face} . xi{i} = 0", not vmul(ids[face], x))
                if i in s:
                    report.check(f"xi{i} . J{face} = 0", not vmul(x, ids[face]))
                elif face.m < max_m:
                    bigger = Interface.of(s | {i}, face.m + 1)
                    report.expect_equal(f"xi{i} . J{face}", vmul(x, ids[face]), vmul(ids[bigger], x))
            for v in range(1, max_m - 1):
                report.expect_equal(f"xi{i} . sigma{v} = sigma{v + 1} . xi{i}", vmul(x, sigma[v]), vmul(sigma[v + 1], x))
            for j in range(i + 1, k + 1):
                if max_m >= 2:
                    report.expect_equal(
                        f"xi{i} . xi{j} = sigma1 . xi{j} . xi{i}",
                        vmul(x, xi[j]),
                        vchain(sigma[1], xi[j], x),
                    )
                for face in faces:
                    if j not in face.positions:
                        report.expect_equal(
                            f"J{face} . lambda{i}{j} . xi{j}",
                            vchain(ids[face], lam[(i, j)], xi[j]),
                            vmul(ids[face], x),
                        )
        for (i, j), chord in lam.items():
            for l, x in xi.items():
                if j < l or l < i:
                    report.expect_equal(f"lambda{i}{j} . xi{l} commute", vmul(chord, x), vmul(x, chord))
                if i < l < j:
                    report.check(f"lambda{i}{j} . xi{l} = 0", not vmul(chord, x))

        _common_laws(report, Side.RIGHT, k, max_m)

    return run_suite("r-relations", body, k=k, max_m=max_m)


def relation_suite_l(k: int, max_m: int = 2) -> Report:
    """Defining relations of L(k) and its dg and nilCoxeter-module laws."""

    def body(report: Report) -> None:
        faces = interfaces(k, max_m)
        ids = {face: l_local(k, Letter(LetterKind.IDEMPOTENT), face) for face in faces}
        zeta = {i: l_family(k, Letter(LetterKind.CUP, i), max_m) for i in range(1, k + 1)}
        sigma = {v: l_family(k, Letter(LetterKind.SIMPLE, v), max_m) for v in range(1, max_m + 1)}
        lam = _chord_laws(report, l_family, k, max_m)

        for f, g in itertools.product(faces, repeat=2):
            expected = ids[f] if f == g else LinearCombination.zero()
            report.expect_equal(f"J{f} . J{g}", vmul(ids[f], ids[g]), expected)
        for v in range(1, max_m):
            s = sigma[v]
            report.check(f"sigma{v}^2 = 0", not vmul(s, s))
            if v + 1 < max_m:
                report.expect_equal(f"braid {v}", vchain(s, sigma[v + 1], s), vchain(sigma[v + 1], s, sigma[v + 1]))
            for chord in lam.values():
                report.expect_equal(f"sigma{v} commutes with chords", vmul(chord, s), vmul(s, chord))
            for face in faces:
                report.expect_equal(f"J{face} . sigma{v}", vmul(ids[face], s), vmul(s, ids[face]))

        for i, z in zeta.items():
            expected = lc_sum(vmul(lam[(j, i)], zeta[j]) for j in range(1, i))
            report.expect_equal(f"d zeta{i}", vdiff(z), expected)
            for v in range(1, max_m):
                for face in faces:
                    if v < face.m < max_m:
                        report.expect_equal(
                            f"J{face} . sigma{v} . zeta{i} = J{face} . zeta{i} . sigma{v}",
                            vchain(ids[face], sigma[v], z),
                            vchain(ids[face], z, sigma[v]),
                        )
            for face in faces:
                s = set(face.positions)
                if i in s:
                    report.check(f"J{face} . zeta{i} = 0", not vmul(ids[face], z))
                if i not in s or face.m == 0:
                    report.check(f"zeta{i} . J{face} = 0", not vmul(z, ids[face]))
                if i not in s and face.m < max_m:
                    bigger = Interface.of(s | {i}, face.m + 1)
                    report.expect_equal(f"J{face} . zeta{i}", vmul(ids[face], z), vmul(z, ids[bigger]))
            for j in range(i + 1, k + 1):
                for face in faces:
                    s = set(face.positions)
                    if i in s or j in s:
                        continue
                    report.expect_equal(
                        f"J{face} . zeta{i} . lambda{i}{j}",
                        vchain(ids[face], z, lam[(i, j)]),
                        vmul(ids[face], zeta[j]),
                    )
                    if face.m + 2 <= max_m:
                        report.expect_equal(
                            f"J{face} . zeta{i} . zeta{j}",
                            vchain(ids[face], z, zeta[j]),
                            vchain(ids[face], zeta[j], z, sigma[face.m + 1]),
                        )
        for (i, j), chord in lam.items():
            for l, z in zeta.items():
                if j < l or l < i:
                    report.expect_equal(f"zeta{l} . lambda{i}{j} commute", vmul(z, chord), vmul(chord, z))
                if i < l < j:
                    report.check(f"zeta{l} . lambda{i}{j} = 0", not vmul(z, chord))

        _common_laws(report, Side.LEFT, k, max_m)

    return run_suite("l-relations", body, k=k, max_m=max_m)
