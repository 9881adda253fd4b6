"""
Per-bigrade homology tables of CP^- and their text encodings
"""

import json
import logging
from collections.abc import Iterable

from app.core.config import settings
from app.core.exceptions import check_bound
from app.core.logger import get_logger
from app.models.homology import HomologyRead, HomologyRow
from app.services.gradings import Bigrade
from app.services.gridcomplex import GridDiagram, cp_homology, default_window

logger = get_logger(__name__, logging.INFO)


def window_for(grid: GridDiagram, window: Iterable[Bigrade] | None = None) -> list[Bigrade]:
    """The requested bigrades, or every generator bigrade with U-shifts up to HOMOLOGY_WINDOW Maslov steps down."""
    if window is not None:
        return sorted(set(window))
    return default_window(grid, max_u=settings.HOMOLOGY_WINDOW // 2)


def homology_table(grid: GridDiagram, window: Iterable[Bigrade] | None = None) -> HomologyRead:
    check_bound("n", grid.n, settings.MAX_N)
    dims = cp_homology(grid, window_for(grid, window))
    rows = [HomologyRow(alexander=g.alexander, maslov=g.maslov, dimension=dim) for g, dim in sorted(dims.items())]
    logger.info(f"homology of {grid.to_mapping()}: {len(rows)} bigrades, total rank {sum(r.dimension for r in rows)}")
    return HomologyRead(rows=rows)


def to_tsv(table: HomologyRead) -> str:
    lines = ["alexander\tmaslov\tdimension"]
    lines += [f"{r.alexander}\t{r.maslov}\t{r.dimension}" for r in table.rows]
    return "\n".join(lines)


def to_json(table: HomologyRead) -> str:
    return json.dumps(table.model_dump(), indent=2, sort_keys=True)


def to_text(table: HomologyRead, nonzero_only: bool = True) -> str:
    rows = [r for r in table.rows if r.dimension or not nonzero_only]
    if not rows:
        return "H(CP^-) vanishes on the window"
    return "\n".join(f"(A={r.alexander}, mu={r.maslov}): {r.dimension}" for r in rows)


def from_rows(rows: Iterable[tuple[int, int, int]]) -> HomologyRead:
    return HomologyRead(rows=[HomologyRow(alexander=a, maslov=m, dimension=d) for a, m, d in rows])


def parse_tsv(text: str) -> HomologyRead:
    body = [line.split("\t") for line in text.strip().splitlines()[1:]]
    return from_rows((int(a), int(m), int(d)) for a, m, d in body)
