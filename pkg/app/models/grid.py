"""
Grid and matched-circle input models

Model                   Service object
----------------------  ---------------------------------
GridSpec                gridcomplex.GridDiagram
MatchedIntervalSpec     matched.MatchedInterval
PointedCircleSpec       matched.PointedMatchedCircle
"""

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, Field, model_validator

from app.services.gridcomplex import GridDiagram
from app.services.matched import MatchedInterval, PointedMatchedCircle


class GridSpec(BaseModel):
    """A planar grid: `x[r-1]` and `o[r-1]` are the marking columns in row r, 1-based."""

    n: int = Field(ge=1, description="Number of lattice lines in each direction")
    x: list[int] = Field(default_factory=list)
    o: list[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_permutations(self) -> Self:
        expected = list(range(1, self.n))
        for name, cells in (("x", self.x), ("o", self.o)):
            if sorted(cells) != expected:
                raise ValueError(f"{name} must be a permutation of 1..{self.n - 1}, got {cells}")
        return self

    def to_grid(self) -> GridDiagram:
        return GridDiagram(self.n, tuple(self.x), tuple(self.o))

    @classmethod
    def from_grid(cls, grid: GridDiagram) -> "GridSpec":
        return cls(n=grid.n, x=list(grid.x_cells), o=list(grid.o_cells))


class MatchedIntervalSpec(BaseModel):
    points: int = Field(ge=0)
    matching: list[list[int]] = Field(default_factory=list, description="Pairs of matched points")

    def to_interval(self) -> MatchedInterval:
        interval = MatchedInterval.from_pairs(self.points, self.matching)
        interval.validate()
        return interval


class PointedCircleSpec(BaseModel):
    points: int = Field(ge=0)
    matching: list[list[int]] = Field(default_factory=list)
    split: int | None = None

    def to_circle(self) -> PointedMatchedCircle:
        circle = PointedMatchedCircle.from_pairs(self.points, self.matching, self.split)
        circle.validate()
        return circle
