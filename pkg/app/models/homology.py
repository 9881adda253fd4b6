"""
Homology and rendering models
"""

from enum import Enum

from pydantic import BaseModel, Field

from app.models.grid import GridSpec


class BigradeSpec(BaseModel):
    alexander: int
    maslov: int


class HomologyRequest(BaseModel):
    grid: GridSpec
    window: list[BigradeSpec] | None = Field(default=None, description="Bigrades to scan; defaults to the generator window")


class HomologyRow(BaseModel):
    alexander: int
    maslov: int
    dimension: int


class HomologyRead(BaseModel):
    rows: list[HomologyRow]


class RenderKind(str, Enum):
    NILCOXETER = "nilcoxeter"
    STRANDS = "strands"
    GRID = "grid"
    AA = "aa"


class RenderRequest(BaseModel):
    """What to draw; only the fields of the chosen kind are read."""

    kind: RenderKind
    n: int | None = Field(default=None, ge=0)
    permutation: list[int] | None = Field(default=None, description="nilcoxeter: w, or a word with `word=true`")
    word: bool = False
    subset: list[int] | None = Field(default=None, description="strands: idempotent rows")
    moves: list[list[int]] | None = Field(default=None, description="strands: extra [start, end] moves")
    grid: GridSpec | None = None
    generator: list[int] | None = Field(default=None, description="grid: columns per row")
    cut_k: int | None = None
    cut_kp: int | None = None
    points: list[list[int]] | None = Field(default=None, description="aa: (column, row) points")
    arrows: list[int] | None = None


class RenderRead(BaseModel):
    text: str
