"""
Test the ASCII renderings
"""

import pytest

from app.core.exceptions import InvalidInputError
from app.models.grid import GridSpec
from app.models.homology import RenderKind, RenderRequest
from app.services import render
from app.services.cornered.aa import aa_generator
from app.services.cornered.quadrants import DoubleCut, QuadrantGenerator
from app.services.gridcomplex import GridDiagram


def test_word_has_one_crossing_per_letter():
    text = render.render_word((1, 3, 2, 1), 4)
    assert text.count("X") == 4
    assert text.splitlines()[1] == "1 2 3 4"


def test_double_crossing_is_zero():
    assert "0 (double crossing)" in render.render_word((1, 1), 2)


def test_word_letter_out_of_range():
    with pytest.raises(InvalidInputError):
        render.render_word((3,), 3)


def test_strands_picture():
    text = render.render_idempotent(3, [1], [[2, 3]])
    assert text.startswith("A(3) ")
    assert "crossings=0" in text
    with pytest.raises(InvalidInputError):
        render.render_idempotent(3, [1], [[2]])


def test_grid_marks_shared_cells(grid2: GridDiagram):
    assert "#" in render.render_grid(grid2)
    assert render.render_grid(grid2).count("+") == 4


def test_generator_needs_a_permutation(grid3: GridDiagram):
    assert render.render_generator(grid3, [2, 3, 1]).count("*") == 3
    with pytest.raises(InvalidInputError):
        render.render_generator(grid3, [1, 1, 2])


def test_aa_arrows_on_the_cut(grid4: GridDiagram):
    request = RenderRequest(
        kind=RenderKind.AA,
        grid=GridSpec.from_grid(grid4),
        cut_k=3,
        cut_kp=1,
        arrows=[1, 2, 3],
    )
    # three arrows on l' and the marker under l
    assert render.render_request(request).count("^") == 4


def test_aa_rejects_points_outside_quadrant(grid4: GridDiagram):
    cut = DoubleCut(grid4, 1, 1)
    with pytest.raises(InvalidInputError):
        render.render_aa(cut, aa_generator(QuadrantGenerator.of([(2, 1)])))
    with pytest.raises(InvalidInputError):
        render.render_aa(cut, aa_generator(QuadrantGenerator.of([]), (3,)))


def test_request_needs_its_fields():
    with pytest.raises(InvalidInputError):
        render.render_request(RenderRequest(kind=RenderKind.NILCOXETER))
    with pytest.raises(InvalidInputError):
        render.render_request(RenderRequest(kind=RenderKind.GRID))
    with pytest.raises(InvalidInputError):
        render.render_request(RenderRequest(kind=RenderKind.NILCOXETER, permutation=[1, 2], word=True))


def test_sigma_must_match_arrows(grid4: GridDiagram):
    request = RenderRequest(kind=RenderKind.AA, grid=GridSpec.from_grid(grid4), cut_k=3, permutation=[2, 1], arrows=[1])
    with pytest.raises(InvalidInputError):
        render.render_request(request)


def test_rendering_is_deterministic():
    request = RenderRequest(kind=RenderKind.NILCOXETER, permutation=[3, 1, 2])
    assert render.render_request(request) == render.render_request(request)
