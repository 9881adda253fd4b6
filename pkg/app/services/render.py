"""
ASCII pictures of nilCoxeter elements, strands generators, grids and AA generators

Pictures are printed top row first, so they read bottom-to-top like the
diagrams they draw. Every function is deterministic.
"""

import logging
from collections.abc import Collection, Iterable, Mapping, Sequence
from typing import TypeVar

from app.core.exceptions import InvalidInputError
from app.core.logger import get_logger
from app.models.homology import RenderKind, RenderRequest
from app.services import strands
from app.services.cornered.aa import AAGenerator, aa_generator
from app.services.cornered.quadrants import DoubleCut, Quadrant, QuadrantGenerator
from app.services.diagrams import NilCoxGen
from app.services.gridcomplex import GridDiagram

logger = get_logger(__name__, logging.INFO)

Point = tuple[int, int]
T = TypeVar("T")


# ------ nilCoxeter ------


def _level(m: int, letter: int | None) -> str:
    cells = [" "] * (2 * m - 1) if m else []
    for p in range(1, m + 1):
        cells[2 * (p - 1)] = "|"
    if letter is not None:
        cells[2 * (letter - 1)] = " "
        cells[2 * letter] = " "
        cells[2 * letter - 1] = "X"
    return "".join(cells).rstrip()


def render_word(word: Sequence[int], m: int) -> str:
    """One crossing per letter, the first letter at the bottom."""
    for letter in word:
        if not 1 <= letter < m:
            raise InvalidInputError(f"sigma_{letter} does not exist in N_{m}")
    product = NilCoxGen.from_word(word, m)
    labels = " ".join(str(p) for p in range(1, m + 1))
    header = f"sigma word {list(word)} in N_{m}: " + ("0 (double crossing)" if product is None else f"w={product}")
    lines = [header, labels, _level(m, None)]
    lines += [_level(m, letter) for letter in reversed(word)]
    lines += [_level(m, None), labels]
    return "\n".join(lines)


def render_nilcoxeter(g: NilCoxGen) -> str:
    return render_word(g.reduced_word(), g.m)


# ------ Strands ------


def render_strands(n: int, phi: Mapping[int, int]) -> str:
    """A generator of A(N) drawn left to right; rows are positions, crossings are marked X."""
    d = strands.triple(n, phi)
    width = 2 * n + 3
    canvas = [[" "] * width for _ in range(n + 1)]
    for s, e in sorted(phi.items()):
        climb_at = (width - (e - s)) // 2
        row = s
        for col in range(width):
            if col > climb_at and row < e:
                row += 1
                char = "/"
            else:
                char = "-"
            canvas[row][col] = "X" if canvas[row][col] not in (" ", char) else char
    lines = [f"A({n}) {strands.format_triple(d)}  crossings={d.crossing_count}"]
    for r in range(n, 0, -1):
        lines.append(f"{r:>2} " + "".join(canvas[r]) + f" {r}")
    return "\n".join(lines)


def render_idempotent(n: int, subset: Iterable[int], moves: Iterable[Sequence[int]] = ()) -> str:
    phi = {s: s for s in subset}
    for move in moves:
        if len(move) != 2:
            raise InvalidInputError(f"A move is a [start, end] pair, got {list(move)}")
        phi[move[0]] = move[1]
    return render_strands(n, phi)


# ------ Grids ------


def render_grid(
    grid: GridDiagram,
    points: Collection[Point] = (),
    cut_k: int | None = None,
    cut_kp: int | None = None,
    arrows: Collection[int] = (),
) -> str:
    """
    Lattice lines with '+', generator points with '*', markings X and O in the cells.

    A horizontal cut at k'+1/2 is flagged with '<' after its cell row, a vertical
    cut at k+1/2 with '^' under its cell column; arrows sit on the horizontal cut
    as '^' over their lattice column.
    """
    marks = {cell: "X" for cell in grid.x_markings} | {cell: "O" for cell in grid.o_markings}
    marks |= {cell: "#" for cell in set(grid.x_markings) & set(grid.o_markings)}
    return _draw(grid.n, marks, points, cut_k, cut_kp, arrows)


def render_lattice(n: int, points: Collection[Point]) -> str:
    """Points on an unmarked n x n lattice."""
    return _draw(n, {}, points, None, None, ())


def _draw(
    n: int,
    marks: Mapping[Point, str],
    points: Collection[Point],
    cut_k: int | None,
    cut_kp: int | None,
    arrows: Collection[int],
) -> str:
    lines = []
    for r in range(n, 0, -1):
        lines.append("---".join("*" if (c, r) in points else "+" for c in range(1, n + 1)))
        if r > 1:
            row = r - 1
            parts = []
            for c in range(1, n + 1):
                parts.append("^" if row == cut_kp and c in arrows else "|")
                if c < n:
                    parts.append(f" {marks.get((c, row), ' ')} ")
            lines.append("".join(parts) + (" <" if row == cut_kp else ""))
    if cut_k is not None and 1 <= cut_k < n:
        lines.append(" " * (4 * (cut_k - 1) + 2) + "^")
    return "\n".join(lines)


def render_generator(grid: GridDiagram, w: Sequence[int]) -> str:
    if sorted(w) != list(range(1, grid.n + 1)):
        raise InvalidInputError(f"A generator lists one column per row, got {list(w)}")
    points = {(c, r) for r, c in enumerate(w, start=1)}
    return f"x({','.join(str(c) for c in w)})\n" + render_grid(grid, points)


# ------ AA generators ------


def render_aa(cut: DoubleCut, g: AAGenerator) -> str:
    for point in g.x.points:
        if not cut.contains(Quadrant.AA, point):
            raise InvalidInputError(f"Point {point} is outside the lower-left quadrant of {cut}")
    for a in g.arrows:
        if not 1 <= a <= cut.k or a in g.x.columns:
            raise InvalidInputError(f"Arrow column {a} is not a free column left of the cut")
    picture = render_grid(cut.grid, set(g.x.points), cut.k, cut.kp, set(g.arrows))
    return f"{cut}  {g}\n{picture}\nsigma:\n{render_nilcoxeter(g.sigma)}"


# ------ Requests ------


def _require(value: T | None, name: str, kind: RenderKind) -> T:
    if value is None:
        raise InvalidInputError(f"Rendering {kind.value} needs `{name}`")
    return value


def render_request(request: RenderRequest) -> str:
    kind = request.kind
    if kind is RenderKind.NILCOXETER:
        permutation = _require(request.permutation, "permutation", kind)
        if request.word:
            return render_word(permutation, _require(request.n, "n", kind))
        return render_nilcoxeter(NilCoxGen.of(permutation))
    if kind is RenderKind.STRANDS:
        return render_idempotent(_require(request.n, "n", kind), request.subset or [], request.moves or [])
    grid = _require(request.grid, "grid", kind).to_grid()
    if kind is RenderKind.GRID:
        if request.generator is not None:
            return render_generator(grid, request.generator)
        return render_grid(grid, cut_k=request.cut_k, cut_kp=request.cut_kp)
    cut = DoubleCut(grid, request.cut_k or 0, request.cut_kp or 0)
    x = QuadrantGenerator.of((p[0], p[1]) for p in request.points or [])
    arrows = tuple(request.arrows or ())
    sigma = NilCoxGen.of(request.permutation) if request.permutation is not None else None
    if sigma is not None and sigma.m != len(arrows):
        raise InvalidInputError(f"sigma has {sigma.m} strands for {len(arrows)} arrows")
    return render_aa(cut, aa_generator(x, arrows, sigma))
