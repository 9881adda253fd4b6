"""
Strands algebra A(N), the top/bottom algebra-modules T(N) and B(N), and the
tensor over the nilCoxeter algebra that glues them

Every element is a LinearCombination of BoxDiagram keys:

Object        Flavor          Box
------------  --------------  -------------------------------------------
A(N)          STRANDS         left=N, right=N
T(N)_m        TOP_MODULE      left=N, right=N, top=(m,)   free strands exit the top
B(N)_m        BOTTOM_MODULE   left=N, right=N, bottom=(m,) strands enter from the bottom

Horizontal products are horizontal gluing, the nilCoxeter action is vertical
gluing. A tensor t (.) b over N_m is stored in canonical form: b carries no
crossings among its entering strands (entries listed by bottom slot with
descending ends) and all of the decoration sits on t.
"""

import itertools
import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from app.core.exceptions import InvalidInputError
from app.core.logger import get_logger
from app.services import gradings
from app.services.coeffs import LinearCombination, bilinear
from app.services.diagrams import (
    BoxDiagram,
    Direction,
    Edge,
    Flavor,
    NilCoxGen,
    Slot,
    SlotSpec,
    diagram_diff,
    diff_lc,
    glue,
    glue_lc,
    nc_basis,
    nc_mul_lc,
)
from app.services.report import Report, run_suite

logger = get_logger(__name__, logging.INFO)

Element = LinearCombination[BoxDiagram]


def _check_positions(n: int, positions: Iterable[int]) -> None:
    for p in positions:
        if not 1 <= p <= n:
            raise InvalidInputError(f"Position {p} is outside [1, {n}]")


def _subsets(n: int, k: int | None = None) -> list[tuple[int, ...]]:
    sizes = range(n + 1) if k is None else [k]
    return [s for size in sizes for s in itertools.combinations(range(1, n + 1), size)]


def format_set(values: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"


def _lift(key: Any) -> LinearCombination[Any] | None:
    return None if key is None else LinearCombination.basis(key)


# ------ 1. The strands algebra ------


def triple(n: int, phi: Mapping[int, int]) -> BoxDiagram:
    """The generator (S, T, phi) of A(N); raises when phi is not injective or moves a strand down."""
    _check_positions(n, list(phi) + list(phi.values()))
    if len(set(phi.values())) != len(phi):
        raise InvalidInputError(f"Not injective: {dict(phi)}")
    return BoxDiagram.build(
        Flavor.STRANDS,
        SlotSpec(left=n, right=n),
        [(Slot(Edge.LEFT, s), Slot(Edge.RIGHT, e)) for s, e in phi.items()],
    )


def through_map(d: BoxDiagram) -> dict[int, int]:
    """Left-to-right strands of a diagram as a map start -> end."""
    result = {}
    for a, b in d.strands:
        ends = {a.edge: a, b.edge: b}
        if Edge.LEFT in ends and Edge.RIGHT in ends:
            result[ends[Edge.LEFT].position] = ends[Edge.RIGHT].position
    return result


def format_triple(d: BoxDiagram) -> str:
    phi = through_map(d)
    pairs = ", ".join(f"{s}->{phi[s]}" for s in sorted(phi))
    return f"{format_set(phi)}->{format_set(phi.values())}: {pairs}"


def idempotent(n: int, subset: Iterable[int]) -> Element:
    subset = set(subset)
    return LinearCombination.basis(triple(n, {s: s for s in subset}))


def unit(n: int, k: int | None = None) -> Element:
    """Sum of all idempotents I_S (with |S| = k when k is given)."""
    return LinearCombination.from_keys(triple(n, {s: s for s in subset}) for subset in _subsets(n, k))


def chord(n: int, i: int, j: int, k: int | None = None) -> Element:
    """rho_{i,j}: sum of the triples moving i to j and fixing S - {i}, over S containing i and not j."""
    if not 1 <= i < j <= n:
        raise InvalidInputError(f"Chord [{i},{j}] needs 1 <= i < j <= {n}")
    return consistent_chord_element(n, [(i, j)], k)


def consistent_chord_element(n: int, chords: Sequence[tuple[int, int]], k: int | None = None) -> Element:
    """
    The element attached to a set of Reeb chords with distinct starts and distinct ends.

    It is the sum over all S containing the starts, whose other points avoid the ends,
    of the triple sending each start to its end and fixing everything else.
    """
    starts = [i for i, _ in chords]
    ends = [j for _, j in chords]
    _check_positions(n, starts + ends)
    if len(set(starts)) != len(starts) or len(set(ends)) != len(ends):
        raise InvalidInputError(f"Inconsistent chord set {list(chords)}: starts and ends must be distinct")
    if any(i >= j for i, j in chords):
        raise InvalidInputError(f"Chords must go upwards: {list(chords)}")
    free = [p for p in range(1, n + 1) if p not in starts and p not in ends]
    terms = []
    for size in range(len(free) + 1):
        if k is not None and size + len(starts) != k:
            continue
        for extra in itertools.combinations(free, size):
            phi = dict(chords)
            phi.update({p: p for p in extra})
            terms.append(triple(n, phi))
    return LinearCombination.from_keys(terms)


def strands_basis(n: int, k: int | None = None) -> list[BoxDiagram]:
    """All triples (S, T, phi) with i <= phi(i), optionally with |S| = k."""
    result = []

    def extend(starts: tuple[int, ...], phi: dict[int, int]) -> None:
        if not starts:
            result.append(triple(n, phi))
            return
        s, rest = starts[0], starts[1:]
        for e in range(s, n + 1):
            if e not in phi.values():
                extend(rest, {**phi, s: e})

    for subset in _subsets(n, k):
        extend(subset, {})
    return sorted(result)


def count_triples(n: int, k: int) -> int:
    """Independent count of the triples with |S| = k, by brute force over (S, T, bijection)."""
    count = 0
    for subset in itertools.combinations(range(1, n + 1), k):
        for target in itertools.combinations(range(1, n + 1), k):
            for image in itertools.permutations(target):
                if all(s <= e for s, e in zip(subset, image)):
                    count += 1
    return count


def strands_mul(a: Element, b: Element) -> Element:
    return glue_lc(a, b, Direction.HORIZONTAL)


def strands_diff(a: Element) -> Element:
    return diff_lc(a)


def mul_chain(*factors: Element) -> Element:
    """Left-to-right horizontal product of several elements."""
    result = factors[0]
    for factor in factors[1:]:
        result = glue_lc(result, factor, Direction.HORIZONTAL)
    return result


# ------ 2. Top and bottom algebra-modules ------


def top_gen(n: int, through: Mapping[int, int], exits: Sequence[int]) -> BoxDiagram:
    """
    A generator of T(N)_m.

    `through` maps left starts to right ends; `exits[x-1]` is the left start of the
    free strand leaving through top slot x.
    """
    _check_positions(n, list(through) + list(through.values()) + list(exits))
    strands = [(Slot(Edge.LEFT, s), Slot(Edge.RIGHT, e)) for s, e in through.items()]
    strands += [(Slot(Edge.LEFT, s), Slot(Edge.TOP, x + 1)) for x, s in enumerate(exits)]
    return BoxDiagram.build(Flavor.TOP_MODULE, SlotSpec(left=n, right=n, top=(len(exits),)), strands)


def bottom_gen(n: int, through: Mapping[int, int], entries: Sequence[int]) -> BoxDiagram:
    """A generator of B(N)_m; `entries[y-1]` is the right end of the strand entering at bottom slot y."""
    _check_positions(n, list(through) + list(through.values()) + list(entries))
    strands = [(Slot(Edge.LEFT, s), Slot(Edge.RIGHT, e)) for s, e in through.items()]
    strands += [(Slot(Edge.BOTTOM, y + 1), Slot(Edge.RIGHT, e)) for y, e in enumerate(entries)]
    return BoxDiagram.build(Flavor.BOTTOM_MODULE, SlotSpec(left=n, right=n, bottom=(len(entries),)), strands)


def module_index(d: BoxDiagram) -> int:
    """The nilCoxeter index m of a T(N)_m or B(N)_m generator (0 for pure strands)."""
    if d.flavor is Flavor.TOP_MODULE:
        return d.spec.top[0] if d.spec.top else 0
    if d.flavor is Flavor.BOTTOM_MODULE:
        return d.spec.bottom[0] if d.spec.bottom else 0
    return 0


def exits(t: BoxDiagram) -> tuple[int, ...]:
    order = [0] * module_index(t)
    for a, b in t.strands:
        ends = {a.edge: a, b.edge: b}
        if Edge.TOP in ends:
            order[ends[Edge.TOP].position - 1] = ends[Edge.LEFT].position
    return tuple(order)


def entries(b: BoxDiagram) -> tuple[int, ...]:
    order = [0] * module_index(b)
    for p, q in b.strands:
        ends = {p.edge: p, q.edge: q}
        if Edge.BOTTOM in ends:
            order[ends[Edge.BOTTOM].position - 1] = ends[Edge.RIGHT].position
    return tuple(order)


def half_chord_top(n: int, i: int, k: int | None = None) -> Element:
    """mu_i: the free strand from i leaves through the top, the rest of S stays horizontal."""
    _check_positions(n, [i])
    return LinearCombination.from_keys(
        top_gen(n, {s: s for s in subset if s != i}, [i]) for subset in _subsets(n, k) if i in subset
    )


def half_chord_bottom(n: int, j: int, k: int | None = None) -> Element:
    """nu_j: a strand enters from the bottom and ends at j; `k` counts the right-hand points."""
    _check_positions(n, [j])
    return LinearCombination.from_keys(
        bottom_gen(n, {s: s for s in subset if s != j}, [j]) for subset in _subsets(n, k) if j in subset
    )


def _partial_injections(n: int, starts: Sequence[int], avoid: frozenset[int] = frozenset()) -> list[dict[int, int]]:
    """Injective upward maps from `starts` into [n] missing `avoid`."""
    found: list[dict[int, int]] = []

    def extend(rest: Sequence[int], phi: dict[int, int]) -> None:
        if not rest:
            found.append(phi)
            return
        for e in range(rest[0], n + 1):
            if e not in avoid and e not in phi.values():
                extend(rest[1:], {**phi, rest[0]: e})

    extend(starts, {})
    return found


def top_basis(n: int, m: int, base_only: bool = False) -> list[BoxDiagram]:
    """Basis of T(N)_m over F2; with `base_only`, one generator per free N_m-orbit (no decoration)."""
    result = []
    for subset in _subsets(n):
        for free in itertools.combinations(subset, m):
            through_starts = [s for s in subset if s not in free]
            orders = [tuple(sorted(free, reverse=True))] if base_only else itertools.permutations(free)
            for phi in _partial_injections(n, through_starts):
                for order in orders:
                    result.append(top_gen(n, phi, order))
    return sorted(result)


def bottom_basis(n: int, m: int, base_only: bool = False) -> list[BoxDiagram]:
    """Basis of B(N)_m over F2; with `base_only`, entering strands never cross each other."""
    result = []
    for subset in _subsets(n):
        for phi in _partial_injections(n, subset):
            rest = [p for p in range(1, n + 1) if p not in phi.values()]
            for ends in itertools.combinations(rest, m):
                orders = [tuple(sorted(ends, reverse=True))] if base_only else itertools.permutations(ends)
                for order in orders:
                    result.append(bottom_gen(n, phi, order))
    return sorted(result)


def act_top(t: Element, sigma: LinearCombination[NilCoxGen]) -> Element:
    """Right action t . sigma of N_m on T(N)_m (sigma glued on top)."""
    return bilinear(t, sigma, lambda x, w: _lift(glue(x, w.diagram, Direction.VERTICAL)))


def act_bottom(sigma: LinearCombination[NilCoxGen], b: Element) -> Element:
    """Left action sigma . b of N_m on B(N)_m (sigma glued underneath)."""
    return bilinear(sigma, b, lambda w, y: _lift(glue(w.diagram, y, Direction.VERTICAL)))


def top_decompose(t: BoxDiagram) -> tuple[BoxDiagram, NilCoxGen]:
    """Write a T(N)_m generator as t_base . sigma with t_base free of crossings among exits."""
    order = exits(t)
    base = tuple(sorted(order, reverse=True))
    w = NilCoxGen(tuple(order.index(s) + 1 for s in base))
    return top_gen(t.spec.left, through_map(t), base), w


def canonical_bottom(b: BoxDiagram) -> tuple[NilCoxGen, BoxDiagram]:
    """Write a B(N)_m generator as sigma . b_base with entering strands of b_base uncrossed."""
    order = entries(b)
    base = tuple(sorted(order, reverse=True))
    w = NilCoxGen(tuple(base.index(e) + 1 for e in order))
    return w, bottom_gen(b.spec.left, through_map(b), base)


def format_top(t: BoxDiagram) -> str:
    base, sigma = top_decompose(t)
    through = through_map(base)
    pairs = ", ".join(f"{s}->{through[s]}" for s in sorted(through))
    left = set(through) | set(exits(base))
    return f"{format_set(left)}->{format_set(through.values())}: {pairs} | sigma={sigma}"


def format_bottom(b: BoxDiagram) -> str:
    sigma, base = canonical_bottom(b)
    through = through_map(base)
    pairs = ", ".join(f"{s}->{through[s]}" for s in sorted(through))
    right = set(through.values()) | set(entries(base))
    return f"sigma={sigma} | {format_set(through)}->{format_set(right)}: {pairs}"


# ------ 3. Tensor over the nilCoxeter algebra ------


@dataclass(frozen=True, order=True)
class TensorElement:
    """A generator t (.) b of T(N)_m (.) B(N')_m in canonical form."""

    top: BoxDiagram
    bottom: BoxDiagram

    @property
    def m(self) -> int:
        return module_index(self.bottom)

    def __str__(self) -> str:
        return f"{format_top(self.top)} (.) {format_bottom(self.bottom)}"


def tensor(t: BoxDiagram, b: BoxDiagram) -> TensorElement | None:
    """t (.) b, rewritten so the decoration of b moves onto t; None when the indices differ or t . sigma vanishes."""
    if module_index(t) != module_index(b):
        return None
    sigma, base = canonical_bottom(b)
    moved = glue(t, sigma.diagram, Direction.VERTICAL)
    return None if moved is None else TensorElement(moved, base)


def tensor_lc(t: Element, b: Element) -> LinearCombination[TensorElement]:
    return bilinear(t, b, lambda x, y: _lift(tensor(x, y)))


def tensor_mul(x: TensorElement, y: TensorElement) -> TensorElement | None:
    """(t1 (.) b1) * (t2 (.) b2) = (t1 * t2) (.) (b1 * b2)."""
    top = glue(x.top, y.top, Direction.HORIZONTAL)
    bottom = glue(x.bottom, y.bottom, Direction.HORIZONTAL)
    if top is None or bottom is None:
        return None
    return tensor(top, bottom)


def tensor_diff(x: TensorElement) -> LinearCombination[TensorElement]:
    return tensor_lc(diagram_diff(x.top), LinearCombination.basis(x.bottom)) + tensor_lc(
        LinearCombination.basis(x.top), diagram_diff(x.bottom)
    )


def merge(t: BoxDiagram, b: BoxDiagram) -> BoxDiagram:
    """Stack t in T(N)_m under b in B(N')_m: the free strands of t become the entering strands of b."""
    if module_index(t) != module_index(b):
        raise InvalidInputError(f"Cannot merge index {module_index(t)} with index {module_index(b)}")
    merged = glue(t, b, Direction.VERTICAL, flavor=Flavor.STRANDS)
    if merged is None:
        raise InvalidInputError(f"Merging {t} with {b} produced a double crossing")
    return merged


def merge_tensor(x: TensorElement) -> BoxDiagram:
    return merge(x.top, x.bottom)


def split(a: BoxDiagram, n: int) -> TensorElement:
    """Cut a generator of A(N+N') along the line at height N+1/2."""
    total = a.spec.left
    if not 0 <= n <= total:
        raise InvalidInputError(f"Cannot split A({total}) at {n}")
    lower, upper, crossing = {}, {}, []
    for s, e in through_map(a).items():
        if e <= n:
            lower[s] = e
        elif s > n:
            upper[s - n] = e - n
        else:
            crossing.append((e, s))
    crossing.sort(reverse=True)
    t = top_gen(n, lower, [s for _, s in crossing])
    b = bottom_gen(total - n, upper, [e - n for e, _ in crossing])
    return TensorElement(t, b)


# ------ 4. Relation suites ------


def relation_suite_strands(n: int) -> Report:
    """Defining relations, basis counts and the dg-algebra laws of A(N)."""

    def body(report: Report) -> None:
        one = unit(n)
        basis = strands_basis(n)
        subsets = _subsets(n)
        pairs = [(i, j) for i, j in itertools.combinations(range(1, n + 1), 2)]
        rho = {(i, j): chord(n, i, j) for i, j in pairs}
        ids = {s: idempotent(n, s) for s in subsets}

        for k in range(n + 1):
            report.expect_equal(f"dim A({n},{k})", len(strands_basis(n, k)), count_triples(n, k))
        for d in basis:
            x = LinearCombination.basis(d)
            report.expect_equal(f"1 * {d}", strands_mul(one, x), x)
            report.expect_equal(f"{d} * 1", strands_mul(x, one), x)
            report.check(f"d^2 {d}", strands_diff(strands_diff(x)).is_zero)
        for s, t in itertools.product(subsets, repeat=2):
            expected = ids[s] if s == t else LinearCombination.zero()
            report.expect_equal(f"I{format_set(s)} * I{format_set(t)}", strands_mul(ids[s], ids[t]), expected)
        for (i, j), r in rho.items():
            for s in subsets:
                if i not in s or j in s:
                    report.check(f"I{format_set(s)} * rho{i}{j} = 0", not strands_mul(ids[s], r))
                if i in s or j not in s:
                    report.check(f"rho{i}{j} * I{format_set(s)} = 0", not strands_mul(r, ids[s]))
                if i not in s and j not in s:
                    report.expect_equal(
                        f"rho{i}{j} * I{format_set(set(s) | {j})}",
                        strands_mul(r, ids[tuple(sorted(set(s) | {j}))]),
                        strands_mul(ids[tuple(sorted(set(s) | {i}))], r),
                    )
            report.check(f"d I = 0 ({i},{j})", all(not strands_diff(ids[s]) for s in subsets))
            expected = LinearCombination.zero()
            for l in range(i + 1, j):
                expected = expected + strands_mul(rho[(l, j)], rho[(i, l)])
            report.expect_equal(f"d rho{i}{j}", strands_diff(r), expected)
        for i, j, l in itertools.combinations(range(1, n + 1), 3):
            for s in subsets:
                if j not in s:
                    report.expect_equal(
                        f"I{format_set(s)} * rho{i}{j} * rho{j}{l}",
                        mul_chain(ids[s], rho[(i, j)], rho[(j, l)]),
                        strands_mul(ids[s], rho[(i, l)]),
                    )
        for (i, j), (l, m) in itertools.product(pairs, repeat=2):
            if j < l or i < l < m < j:
                report.expect_equal(
                    f"rho{i}{j} * rho{l}{m} commute",
                    strands_mul(rho[(i, j)], rho[(l, m)]),
                    strands_mul(rho[(l, m)], rho[(i, j)]),
                )
            if i < l < j < m:
                report.check(f"rho{i}{j} * rho{l}{m} = 0", not strands_mul(rho[(i, j)], rho[(l, m)]))
        for chords in consistent_chord_sets(n):
            ordered = sorted(chords)
            product = mul_chain(*[chord(n, i, j) for i, j in reversed(ordered)]) if ordered else one
            report.expect_equal(f"rho of {ordered}", consistent_chord_element(n, ordered), product)
        for x, y in itertools.product(basis, repeat=2):
            if set(through_map(x).values()) != set(through_map(y)):
                continue
            a, b = LinearCombination.basis(x), LinearCombination.basis(y)
            report.expect_equal(
                f"Leibniz {x} {y}",
                strands_diff(strands_mul(a, b)),
                strands_mul(strands_diff(a), b) + strands_mul(a, strands_diff(b)),
            )

    return run_suite("strands-relations", body, n=n)


def consistent_chord_sets(n: int) -> list[list[tuple[int, int]]]:
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    found = []
    for size in range(max(n, 1)):
        for chords in itertools.combinations(pairs, size):
            starts = [i for i, _ in chords]
            ends = [j for _, j in chords]
            if len(set(starts)) == size and len(set(ends)) == size:
                found.append(list(chords))
    return found


def relation_suite_topbottom(n: int) -> Report:
    """Relations of the half-chords mu_i in T(N) and nu_j in B(N), and the N_m-module laws."""

    def body(report: Report) -> None:
        subsets = _subsets(n)
        ids = {s: idempotent(n, s) for s in subsets}
        rho = {(i, j): chord(n, i, j) for i, j in itertools.combinations(range(1, n + 1), 2)}
        mu = {i: half_chord_top(n, i) for i in range(1, n + 1)}
        nu = {j: half_chord_bottom(n, j) for j in range(1, n + 1)}
        swap = LinearCombination.basis(NilCoxGen.simple(1, 2))

        for i in range(1, n + 1):
            for s in subsets:
                name = format_set(s)
                if i not in s:
                    report.check(f"I{name} * mu{i} = 0", not strands_mul(ids[s], mu[i]))
                    report.check(f"nu{i} * I{name} = 0", not strands_mul(nu[i], ids[s]))
                else:
                    report.check(f"mu{i} * I{name} = 0", not strands_mul(mu[i], ids[s]))
                    report.check(f"I{name} * nu{i} = 0", not strands_mul(ids[s], nu[i]))
                    rest = tuple(p for p in s if p != i)
                    report.expect_equal(
                        f"I{name} * mu{i} = mu{i} * I{format_set(rest)}",
                        strands_mul(ids[s], mu[i]),
                        strands_mul(mu[i], ids[rest]),
                    )
                    report.expect_equal(
                        f"nu{i} * I{name} = I{format_set(rest)} * nu{i}",
                        strands_mul(nu[i], ids[s]),
                        strands_mul(ids[rest], nu[i]),
                    )
            expected_top = LinearCombination.zero()
            for j in range(i + 1, n + 1):
                expected_top = expected_top + strands_mul(mu[j], rho[(i, j)])
            report.expect_equal(f"d mu{i}", strands_diff(mu[i]), expected_top)
            expected_bottom = LinearCombination.zero()
            for j in range(1, i):
                expected_bottom = expected_bottom + strands_mul(rho[(j, i)], nu[j])
            report.expect_equal(f"d nu{i}", strands_diff(nu[i]), expected_bottom)

        for (i, j), r in rho.items():
            for s in subsets:
                if j not in s:
                    report.expect_equal(
                        f"I{format_set(s)} * rho{i}{j} * mu{j}",
                        mul_chain(ids[s], r, mu[j]),
                        strands_mul(ids[s], mu[i]),
                    )
                if i not in s:
                    report.expect_equal(
                        f"I{format_set(s)} * nu{i} * rho{i}{j}",
                        mul_chain(ids[s], nu[i], r),
                        strands_mul(ids[s], nu[j]),
                    )
            for l in range(1, n + 1):
                if j < l or l < i:
                    report.expect_equal(f"mu{l} * rho{i}{j} commute", strands_mul(mu[l], r), strands_mul(r, mu[l]))
                    report.expect_equal(f"nu{l} * rho{i}{j} commute", strands_mul(nu[l], r), strands_mul(r, nu[l]))
                if i < l < j:
                    report.check(f"rho{i}{j} * mu{l} = 0", not strands_mul(r, mu[l]))
                    report.check(f"nu{l} * rho{i}{j} = 0", not strands_mul(nu[l], r))

        for i, j in itertools.combinations(range(1, n + 1), 2):
            report.expect_equal(
                f"mu{i} * mu{j} = (mu{j} * mu{i}) . s1",
                strands_mul(mu[i], mu[j]),
                act_top(strands_mul(mu[j], mu[i]), swap),
            )
            report.expect_equal(
                f"nu{i} * nu{j} = s1 . (nu{j} * nu{i})",
                strands_mul(nu[i], nu[j]),
                act_bottom(swap, strands_mul(nu[j], nu[i])),
            )

        for m in range(min(n, 2) + 1):
            sigmas = [LinearCombination.basis(g) for g in nc_basis(m)]
            for t in top_basis(n, m):
                x = LinearCombination.basis(t)
                report.expect_equal(f"{t} . 1", act_top(x, LinearCombination.basis(NilCoxGen.identity(m))), x)
                base, w = top_decompose(t)
                report.expect_equal(f"unique factor {t}", act_top(LinearCombination.basis(base), LinearCombination.basis(w)), x)
                for s1, s2 in itertools.product(sigmas, repeat=2):
                    product = nc_mul_lc(s1, s2)
                    report.expect_equal(f"({t} . s) . s'", act_top(act_top(x, s1), s2), act_top(x, product))
                for s in sigmas:
                    lhs = strands_diff(act_top(x, s))
                    rhs = act_top(strands_diff(x), s) + act_top(x, s.map_linear(lambda g: g.differential()))
                    report.expect_equal(f"Leibniz {t} . s", lhs, rhs)
            for b in bottom_basis(n, m):
                y = LinearCombination.basis(b)
                w, base = canonical_bottom(b)
                report.expect_equal(f"unique factor {b}", act_bottom(LinearCombination.basis(w), LinearCombination.basis(base)), y)
                for s in sigmas:
                    lhs = strands_diff(act_bottom(s, y))
                    rhs = act_bottom(s, strands_diff(y)) + act_bottom(s.map_linear(lambda g: g.differential()), y)
                    report.expect_equal(f"Leibniz s . {b}", lhs, rhs)

    return run_suite("topbottom-relations", body, n=n)


def theorem_bnt_check(n: int, n2: int) -> Report:
    """Cutting A(N+N') at height N+1/2 is an isomorphism onto T(N) (.) B(N') of graded dg-algebras."""

    def body(report: Report) -> None:
        total = n + n2
        basis = strands_basis(total)
        pieces = {a: split(a, n) for a in basis}

        matched = sum(len(top_basis(n, m, base_only=False)) * len(bottom_basis(n2, m, base_only=True)) for m in range(min(n, n2) + 1))
        report.expect_equal(f"dim A({total}) vs tensor", len(basis), matched)
        report.expect_equal("split is injective", len(set(pieces.values())), len(basis))

        for a, piece in pieces.items():
            report.expect_equal(f"merge(split({a}))", merge_tensor(piece), a)
            report.expect_equal(f"canonical {a}", tensor(piece.top, piece.bottom), piece)
            report.expect_equal(
                f"d split {a}",
                tensor_diff(piece).map_keys(merge_tensor),
                diagram_diff(a),
            )
            report.expect_equal(
                f"grading {a}",
                gradings.amalgamate_to_total(gradings.gr_prime(piece.top), gradings.gr_prime(piece.bottom)),
                gradings.gr_prime(a),
            )

        # non-composable pairs vanish on both sides
        for x, y in itertools.product(basis, repeat=2):
            glued = glue(x, y, Direction.HORIZONTAL)
            via_tensor = tensor_mul(pieces[x], pieces[y])
            report.expect_equal(
                f"split({x} * {y})",
                None if via_tensor is None else merge_tensor(via_tensor),
                glued,
            )

    return run_suite("bnt", body, n=n, n2=n2)
