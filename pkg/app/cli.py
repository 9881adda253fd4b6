"""
Command line front end

Command         What it prints
--------------  ------------------------------------------------------------
nilcoxeter      dimension and homology of N_m for m <= --max-m
strands         dimensions of A(N, k) and, for small N, its basis
matched         the matched circle read from --input (default: two tori glued)
grid            a grid, its generators and their bigrades
slice           quadrant sizes of a grid cut at (--cut-k, --cut-kp)
verify          one verification suite; exit code 1 on any failing case
homology        per-bigrade dimensions of H(CP^-) of the grid in --input
render          ASCII picture of a nilCoxeter element, strands generator, grid or AA generator
demo            the drawn nilCoxeter word and the drawn rectangle of C(6)

Exit codes: 0 pass, 1 verification failure, 2 usage error.
"""

import json
import logging
import random
import sys
from pathlib import Path
from typing import TypeVar

import click
from pydantic import BaseModel, ValidationError

from app.core.config import settings
from app.core.exceptions import CorneredError, InvalidInputError, check_bound
from app.core.logger import get_logger, level_from_name, set_package_level
from app.models.grid import GridSpec, PointedCircleSpec
from app.models.homology import RenderKind, RenderRequest
from app.models.verify import OutputFormat, ReportRead, SuiteName, VerifyRequest
from app.services import homology, render, strands, verify
from app.services.cornered import aa, ad, da, dd
from app.services.cornered.quadrants import DoubleCut, Quadrant
from app.services.diagrams import nc_basis, nc_homology
from app.services.gridcomplex import (
    EXAMPLE_SOURCE,
    EXAMPLE_TARGET,
    GridDiagram,
    bigrade_generator,
    empty_rectangles,
    nilcox_generator,
)
from app.services.matched import glue_intervals, matching_algebra_basis, surgery_components, torus_interval

logger = get_logger(__name__, logging.INFO)

M = TypeVar("M", bound=BaseModel)

FORMATS = click.Choice([f.value for f in OutputFormat])

# the nilCoxeter word drawn in the introduction of the strand pictures
DEMO_WORD = (1, 3, 2, 1)


def _load(path: str, model: type[M]) -> M:
    try:
        return model.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValidationError) as e:
        raise click.UsageError(f"Cannot read {path}: {e}")


def _grid_from_options(path: str | None, n: int | None, seed: int | None) -> GridDiagram:
    if path is not None:
        return _load(path, GridSpec).to_grid()
    if n is None:
        raise click.UsageError("Give a grid with --input or a size with --n")
    check_bound("n", n, settings.MAX_N)
    return verify.random_grid(random.Random(settings.DEFAULT_SEED if seed is None else seed), n)


def _emit_json(payload: object) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


class CorneredGroup(click.Group):
    """Maps service errors onto click errors: bad input exits 2, other failures exit 1."""

    def invoke(self, ctx: click.Context) -> object:
        try:
            return super().invoke(ctx)
        except InvalidInputError as e:
            logger.warning(f"{ctx.invoked_subcommand}: {e.message}")
            raise click.UsageError(e.message, ctx)
        except CorneredError as e:
            raise click.ClickException(e.message)


@click.group(cls=CorneredGroup)
@click.option("--verbose", is_flag=True, help="Log suite summaries (and per-case failures with LOG_LEVEL=DEBUG)")
def cli(verbose: bool) -> None:
    """Exact F2 algebra of planar grid diagrams, cut once or twice."""
    set_package_level(level_from_name(settings.LOG_LEVEL) if verbose else logging.WARNING)


@cli.command()
@click.option("--max-m", default=5, show_default=True, type=int)
@click.option("--format", "fmt", default=OutputFormat.TEXT.value, type=FORMATS)
def nilcoxeter(max_m: int, fmt: str) -> None:
    """Dimension and homology of the nilCoxeter algebras."""
    check_bound("max_m", max_m, settings.MAX_M)
    rows = [(m, len(nc_basis(m)), nc_homology(m)) for m in range(max_m + 1)]
    if fmt == OutputFormat.JSON.value:
        _emit_json([{"m": m, "dimension": dim, "homology": h} for m, dim, h in rows])
    elif fmt == OutputFormat.TSV.value:
        click.echo("m\tdimension\thomology")
        for m, dim, h in rows:
            click.echo(f"{m}\t{dim}\t{','.join(map(str, h))}")
    else:
        for m, dim, h in rows:
            click.echo(f"N_{m}: dim {dim}, homology by crossing degree {h}")


@cli.command("strands")
@click.option("--n", "n", required=True, type=int)
@click.option("--cut-k", "k", default=None, type=int, help="Only the summand with k strands")
@click.option("--format", "fmt", default=OutputFormat.TEXT.value, type=FORMATS)
def strands_command(n: int, k: int | None, fmt: str) -> None:
    """Dimensions of the strands algebra A(N, k)."""
    check_bound("n", n, settings.MAX_N)
    ks = range(n + 1) if k is None else [k]
    dims = {kk: len(strands.strands_basis(n, kk)) for kk in ks}
    if fmt == OutputFormat.JSON.value:
        _emit_json({"n": n, "dimensions": {str(kk): d for kk, d in dims.items()}})
        return
    if fmt == OutputFormat.TSV.value:
        click.echo("k\tdimension")
        for kk, d in dims.items():
            click.echo(f"{kk}\t{d}")
        return
    for kk, d in dims.items():
        click.echo(f"A({n},{kk}): {d}")
    if n <= 3:
        for kk in ks:
            for a in strands.strands_basis(n, kk):
                click.echo(f"  {strands.format_triple(a)}")


@cli.command()
@click.option("--input", "path", default=None, type=click.Path(), help="JSON {points, matching, split}")
def matched(path: str | None) -> None:
    """Genus, surgery and the size of the matching algebra of a pointed matched circle."""
    if path is None:
        z = glue_intervals(torus_interval(), torus_interval())
    else:
        z = _load(path, PointedCircleSpec).to_circle()
    click.echo(f"points {z.points}, genus {z.genus}, pairs {z.to_pairs()}, split {z.split}")
    click.echo(f"surgery components: {surgery_components(z)}")
    click.echo(f"dim A(Z): {len(matching_algebra_basis(z))}")


@cli.command()
@click.option("--input", "path", default=None, type=click.Path())
@click.option("--n", "n", default=None, type=int, help="Random grid of this size when no --input is given")
@click.option("--seed", default=None, type=int)
@click.option("--format", "fmt", default=OutputFormat.TEXT.value, type=FORMATS)
def grid(path: str | None, n: int | None, seed: int | None, fmt: str) -> None:
    """A grid, its generators and their bigrades."""
    g = _grid_from_options(path, n, seed)
    rows = [(x, bigrade_generator(g, x)) for x in g.generators()]
    if fmt == OutputFormat.JSON.value:
        _emit_json(
            {
                "grid": g.to_mapping(),
                "generators": [{"w": list(x.w), "alexander": b.alexander, "maslov": b.maslov} for x, b in rows],
            }
        )
    elif fmt == OutputFormat.TSV.value:
        click.echo("generator\talexander\tmaslov")
        for x, b in rows:
            click.echo(f"{x}\t{b.alexander}\t{b.maslov}")
    else:
        click.echo(render.render_grid(g))
        for x, b in rows:
            click.echo(f"{x} {b}")


@cli.command("slice")
@click.option("--input", "path", default=None, type=click.Path())
@click.option("--n", "n", default=None, type=int)
@click.option("--seed", default=None, type=int)
@click.option("--cut-k", "k", required=True, type=int)
@click.option("--cut-kp", "kp", required=True, type=int)
@click.option("--max-m", default=2, show_default=True, type=int)
def slice_command(path: str | None, n: int | None, seed: int | None, k: int, kp: int, max_m: int) -> None:
    """Quadrant generators and 2-module bases of a doubly cut grid."""
    g = _grid_from_options(path, n, seed)
    check_bound("max_m", max_m, settings.MAX_CORNER_M)
    cut = DoubleCut(g, k, kp)
    click.echo(render.render_grid(g, cut_k=k, cut_kp=kp))
    for quadrant in Quadrant:
        click.echo(f"{quadrant.value}: {len(cut.generators(quadrant))} partial matchings")
    click.echo(f"AA basis: {len(aa.aa_basis(cut, max_m))}")
    click.echo(f"AD basis: {len(ad.ad_basis(cut, max_m))}")
    click.echo(f"DA basis: {len(da.da_basis(cut, max_m))}")
    click.echo(f"DD basis: {len(dd.dd_basis(cut, max_m))}")


def format_report(read: ReportRead, fmt: str) -> str:
    """Render a report without wall time, so identical runs print identical bytes."""
    if fmt == OutputFormat.JSON.value:
        return json.dumps(read.model_dump(exclude={"elapsed_ms"}, mode="json"), indent=2, sort_keys=True)
    if fmt == OutputFormat.TSV.value:
        lines = ["suite\tcases\tfailed\tpassed", f"{read.suite}\t{read.cases}\t{read.failure_count}\t{read.passed}"]
        lines += [f"{f.case}\t{f.detail}" for f in read.failures]
        return "\n".join(lines)
    status = "PASS" if read.passed else "FAIL"
    lines = [f"{read.suite}: {status} ({read.cases} cases, {read.failure_count} failed)"]
    for f in read.failures:
        lines.append(f"  {f.case}: {f.detail}")
        if f.rendering:
            lines.append(f"    {f.rendering}")
    if read.failures:
        lines.append(f"replay: {read.failures[0].replay}")
    return "\n".join(lines)


@cli.command("verify")
@click.option("--suite", required=True, type=click.Choice([s.value for s in SuiteName]))
@click.option("--n", "n", default=None, type=int)
@click.option("--cut-k", default=None, type=int)
@click.option("--cut-kp", default=None, type=int)
@click.option("--max-m", default=None, type=int)
@click.option("--seed", default=None, type=int)
@click.option("--input", "path", default=None, type=click.Path(), help="Run on this grid only")
@click.option("--format", "fmt", default=OutputFormat.TEXT.value, type=FORMATS)
def verify_command(
    suite: str,
    n: int | None,
    cut_k: int | None,
    cut_kp: int | None,
    max_m: int | None,
    seed: int | None,
    path: str | None,
    fmt: str,
) -> None:
    """Run a verification suite."""
    grid_spec = _load(path, GridSpec) if path is not None else None
    try:
        request = VerifyRequest(
            suite=SuiteName(suite),
            n=n,
            cut_k=cut_k,
            cut_kp=cut_kp,
            max_m=max_m,
            seed=seed,
            grid=grid_spec,
        )
    except ValidationError as e:
        raise click.UsageError(str(e))
    report = verify.run_verify(request)
    click.echo(format_report(verify.report_read(report), fmt))
    if not report.passed:
        sys.exit(1)


@cli.command("homology")
@click.option("--input", "path", required=True, type=click.Path())
@click.option("--format", "fmt", default=OutputFormat.TSV.value, type=FORMATS)
def homology_command(path: str, fmt: str) -> None:
    """Per-bigrade dimensions of H(CP^-) on the default window."""
    table = homology.homology_table(_load(path, GridSpec).to_grid())
    if fmt == OutputFormat.JSON.value:
        click.echo(homology.to_json(table))
    elif fmt == OutputFormat.TSV.value:
        click.echo(homology.to_tsv(table))
    else:
        click.echo(homology.to_text(table))


def _ints(value: str | None) -> list[int] | None:
    if value is None:
        return None
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"Expected comma-separated integers, got {value!r}")


@cli.command("render")
@click.option("--input", "path", default=None, type=click.Path(), help="JSON render request")
@click.option("--kind", default=None, type=click.Choice([k.value for k in RenderKind]))
@click.option("--n", "n", default=None, type=int)
@click.option("--word", default=None, help="nilCoxeter word, e.g. 1,3,2,1")
@click.option("--permutation", default=None, help="One-line permutation, e.g. 3,1,2")
@click.option("--subset", default=None, help="Strands idempotent rows, e.g. 1,3")
def render_command(
    path: str | None,
    kind: str | None,
    n: int | None,
    word: str | None,
    permutation: str | None,
    subset: str | None,
) -> None:
    """ASCII picture of an object, top row first."""
    if path is not None:
        request = _load(path, RenderRequest)
    elif kind is None:
        raise click.UsageError("Give --input or --kind")
    elif word is not None:
        request = RenderRequest(kind=RenderKind(kind), n=n, permutation=_ints(word), word=True)
    else:
        request = RenderRequest(kind=RenderKind(kind), n=n, permutation=_ints(permutation), subset=_ints(subset))
    click.echo(render.render_request(request))


@cli.command()
def demo() -> None:
    """The word sigma_1 sigma_3 sigma_2 sigma_1 and the drawn rectangle of C(6)."""
    click.echo(render.render_word(DEMO_WORD, 4))
    click.echo()
    source, target = nilcox_generator(EXAMPLE_SOURCE), nilcox_generator(EXAMPLE_TARGET)
    rectangles = empty_rectangles(source, target)
    click.echo(f"C(6): {source} -> {target} through {len(rectangles)} empty rectangle(s)")
    for rect in rectangles:
        click.echo(f"  {rect}")
    click.echo(render.render_lattice(6, source.points))


if __name__ == "__main__":
    cli()
