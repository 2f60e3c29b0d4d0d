"""Click CLI commands — thin wrappers that compose the other modules."""

import functools
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional

import click

from . import __version__
from .classify import (
    AdmissibleQuadruple,
    check_admissible,
    classify,
    dh_eval,
    dh_function,
    dh_polytope,
    enumerate_admissible,
)
from .config import (
    DEFAULT_CONFIG_PATH,
    MAX_SUPPORTED_DIM,
    PROJECT_CONFIG_NAME,
    ConfigError,
    coerce_value,
    load_json,
    resolve_config,
    save_config,
)
from .enumeration import build_atlas, enumerate_reflexive_polygons, write_atlas
from .errors import DocumentError, NotAdmissible, PolytopeError
from .exact import format_rational
from .extension import build_extension, build_extension_via_blow_up, verify_extension
from .lattice import (
    gl_equivalent,
    is_delzant,
    is_integral,
    is_reflexive,
    normal_form,
    weight_sum_holds,
)
from .loader import load_polytope, parse_point
from .output import (
    dh_document,
    edges_document,
    facets_document,
    polytope_document,
    render_json,
    render_table,
    report_document,
    report_rows,
    summary_document,
    verdict_document,
    write_output,
)
from .polytope import Polytope, edges, interior_lattice_points, lattice_points

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE_ERROR = 2


def handle_errors(f):
    """Turn domain and config errors into ``Error: ...`` on stderr and exit 2."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (PolytopeError, ConfigError) as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_USAGE_ERROR)

    return wrapper


def quadruple_options(f):
    """--facet/--s/--k, shared by every verb that takes an admissible quadruple."""
    f = click.option("--k", "k", type=int, required=True, help="Kink jump k.")(f)
    f = click.option("--s", "s", type=int, required=True, help="Slope s.")(f)
    f = click.option("--facet", type=int, required=True,
                     help="Facet index (see `check --list-facets`).")(f)
    return f


def dim_option(f):
    return click.option("--dim", type=click.IntRange(1, MAX_SUPPORTED_DIM), default=None,
                        help="Expected dimension of the input polytope.")(f)


def format_option(f):
    return click.option("--format", "fmt", type=click.Choice(["json", "table"]), default=None,
                        help="Report rendering (default from config).")(f)


def output_option(f):
    return click.option("-o", "--output", default=None, type=click.Path(),
                        help="Output file (default: stdout).")(f)


def _config(**overrides) -> dict:
    return resolve_config(cli_overrides=overrides)


def _load(source: str, cfg: dict, dim: Optional[int] = None, extra: int = 0) -> Polytope:
    """Load with the max_dim and --dim guards applied before the hull is built."""
    return load_polytope(source, max_dim=cfg["max_dim"] + extra, expected_dim=dim)


def _quadruple(p: Polytope, facet: int, s: int, k: int) -> AdmissibleQuadruple:
    verdict = check_admissible(p, facet, s, k)
    if not verdict:
        raise NotAdmissible(f"condition ({verdict.failed}) fails: {verdict.detail}")
    return AdmissibleQuadruple(p, facet, s, k)


def _emit(doc: Any, cfg: dict, output: Optional[str] = None, what: str = "document",
          fmt: Optional[str] = None, rows: Optional[list] = None) -> None:
    if (fmt or cfg["format"]) == "table" and rows is not None:
        content = render_table(rows)
    else:
        content = render_json(doc, cfg["indent"])
    write_output(content, output, what)


@click.group()
@click.version_option(version=__version__)
@click.option("-v", "--verbose", is_flag=True, help="Debug logging on stderr.")
def cli(verbose):
    """toric-dh — reflexive Delzant polytopes, admissible quadruples, DH functions
    and their toric extensions, in exact arithmetic.

    POLYTOPE arguments are polytope document paths or built-in shape names
    (square, triangle, hexagon, pentagon, p2-dual, cube).

    \b
    Exit codes:
      0  Success
      1  A requested check is false
      2  Parse, validation, or usage error
    """
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


@cli.group()
def config():
    """Manage toric-dh configuration."""


@config.command("show")
@click.argument("directory", default=".", type=click.Path(exists=True, file_okay=False))
@handle_errors
def config_show(directory):
    """Show resolved config for a directory."""
    cfg = resolve_config(project_dir=Path(directory))
    click.echo(json.dumps(cfg, indent=2))


@config.command("set")
@click.argument("key")
@click.argument("value")
@click.option("--global", "is_global", is_flag=True, help="Set in global config.")
@click.option("--project", is_flag=True, help="Set in project config (cwd).")
def config_set(key, value, is_global, project):
    """Set a single config value."""
    try:
        value = coerce_value(key, value)
    except ConfigError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_USAGE_ERROR)
    if is_global:
        path = DEFAULT_CONFIG_PATH
    elif project:
        path = Path.cwd() / PROJECT_CONFIG_NAME
    else:
        click.echo("Specify --global or --project.", err=True)
        sys.exit(EXIT_USAGE_ERROR)
    data = load_json(path)
    data[key] = value
    save_config(path, data)
    click.echo(f"✓ {key} = {value!r} → {path}")


@config.command("path")
def config_path():
    """Print config file locations."""
    click.echo(f"Global:  {DEFAULT_CONFIG_PATH}")
    click.echo(f"Project: {Path.cwd() / PROJECT_CONFIG_NAME}")


@cli.command()
@click.argument("polytope")
@click.option("--reflexive", is_flag=True, help="Every facet at level -1 and integral.")
@click.option("--delzant", is_flag=True, help="Integral, simple and smooth.")
@click.option("--integral", is_flag=True, help="All vertices are lattice points.")
@click.option("--weight-sum", is_flag=True, help="v = -(sum of weights) at every vertex.")
@click.option("--lattice-points", "count_points", is_flag=True, help="Report lattice point counts.")
@click.option("--list-facets", is_flag=True, help="Report the facet index mapping.")
@dim_option
@format_option
@handle_errors
def check(polytope, reflexive, delzant, integral, weight_sum, count_points, list_facets,
          dim, fmt):
    """Decide lattice properties of POLYTOPE; exit 1 if any is false."""
    cfg = _config()
    p = _load(polytope, cfg, dim)
    if not (reflexive or delzant or integral or weight_sum):
        reflexive = delzant = integral = True
    report: dict[str, Any] = {}
    if reflexive:
        report["reflexive"] = is_reflexive(p)
    if delzant:
        report["delzant"] = is_delzant(p)
    if integral:
        report["integral"] = is_integral(p)
    if weight_sum:
        report["weight_sum"] = is_delzant(p) and weight_sum_holds(p)
    checks = dict(report)
    if count_points:
        report["lattice_points"] = len(lattice_points(p))
        report["interior_lattice_points"] = [
            [format_rational(x) for x in w] for w in interior_lattice_points(p)
        ]
    rows = [{"check": k, "value": v} for k, v in report.items()]
    if list_facets:
        report["facets"] = facets_document(p)
        rows += [
            {"check": f"facet {f['index']}", "value": f"normal {tuple(f['normal'])}, c = {f['c']}"}
            for f in report["facets"]
        ]
    _emit(report, cfg, fmt=fmt, rows=rows)
    if not all(checks.values()):
        sys.exit(EXIT_CHECK_FAILED)


@cli.command("normal-form")
@click.argument("polytope")
@click.option("--compare", "other", default=None, help="Second polygon to test for equivalence.")
@dim_option
@output_option
@handle_errors
def normal_form_cmd(polytope, other, dim, output):
    """Canonical GL(2, Z) representative of an integral polygon."""
    cfg = _config()
    p = _load(polytope, cfg, dim)
    if other is not None:
        q = _load(other, cfg, dim)
        same = gl_equivalent(p, q)
        _emit({"equivalent": same}, cfg, output, "comparison")
        if not same:
            sys.exit(EXIT_CHECK_FAILED)
        return
    nf = normal_form(p)
    doc = {"normal_form": polytope_document(nf.polytope()), "witness": [list(r) for r in nf.witness]}
    _emit(doc, cfg, output, "normal form")


@cli.command()
@click.argument("polytope")
@dim_option
@output_option
@handle_errors
def hull(polytope, dim, output):
    """Canonical polytope document (minimal halfspaces and vertices)."""
    cfg = _config()
    _emit(polytope_document(_load(polytope, cfg, dim)), cfg, output, "polytope")


@cli.command()
@click.argument("polytope")
@click.option("--edges", "with_edges", is_flag=True, help="Also list edges.")
@dim_option
@output_option
@handle_errors
def vertices(polytope, with_edges, dim, output):
    """Vertices (and optionally edges) of POLYTOPE."""
    cfg = _config()
    p = _load(polytope, cfg, dim)
    doc: dict[str, Any] = {"vertices": polytope_document(p)["vertices"]}
    if with_edges:
        doc["edges"] = edges_document(edges(p))
    _emit(doc, cfg, output, "vertices")


@cli.command()
@click.argument("polytope")
@click.option("--facet", type=int, default=None, help="Facet index; omit to list all.")
@click.option("--s", "s", type=int, default=None)
@click.option("--k", "k", type=int, default=None)
@dim_option
@format_option
@handle_errors
def admissible(polytope, facet, s, k, dim, fmt):
    """Check one quadruple (exit 1 on failure) or list all admissible ones."""
    cfg = _config()
    p = _load(polytope, cfg, dim)
    given = [x is not None for x in (facet, s, k)]
    if any(given) and not all(given):
        raise DocumentError("quadruple", "--facet, --s and --k go together")
    if all(given):
        verdict = check_admissible(p, facet, s, k)
        doc = verdict_document(verdict)
        _emit(doc, cfg, fmt=fmt, rows=[doc])
        if not verdict:
            sys.exit(EXIT_CHECK_FAILED)
        return
    rows = [
        {"facet": q.facet, "nu": list(q.nu), "s": q.s, "k": q.k}
        for q in enumerate_admissible(p)
    ]
    _emit(rows, cfg, fmt=fmt, rows=rows)


@cli.command("classify")
@click.argument("polytope")
@dim_option
@format_option
@output_option
@handle_errors
def classify_cmd(polytope, dim, fmt, output):
    """DH classes of monotone tall complexity-one spaces over POLYTOPE."""
    cfg = _config()
    report = classify(_load(polytope, cfg, dim))
    click.echo(f"{len(report.classes)} classes", err=True)
    _emit(report_document(report), cfg, output, "classification", fmt, report_rows(report))


@cli.command("dh-eval")
@click.argument("polytope")
@quadruple_options
@click.option("--at", "points", multiple=True, required=True,
              help="Point as comma-separated rationals, e.g. --at=1,-1/2. Repeatable.")
@dim_option
@format_option
@handle_errors
def dh_eval_cmd(polytope, facet, s, k, points, dim, fmt):
    """Evaluate the DH function of an admissible quadruple."""
    cfg = _config()
    p = _load(polytope, cfg, dim)
    f = dh_function(_quadruple(p, facet, s, k))
    rows = []
    for text in points:
        w = parse_point(text, p.dim)
        rows.append({"point": [format_rational(x) for x in w], "value": format_rational(dh_eval(f, w))})
    _emit({"dh": dh_document(f), "values": rows}, cfg, fmt=fmt, rows=rows)


@cli.command("dh-polytope")
@click.argument("polytope")
@quadruple_options
@dim_option
@output_option
@handle_errors
def dh_polytope_cmd(polytope, facet, s, k, dim, output):
    """The region under the DH graph, one dimension up."""
    cfg = _config()
    p = _load(polytope, cfg, dim)
    _emit(polytope_document(dh_polytope(_quadruple(p, facet, s, k))), cfg, output, "DH polytope")


@cli.command()
@click.argument("polytope")
@quadruple_options
@click.option("--via-blow-up", is_flag=True, help="Build through combinatorial blow-ups.")
@dim_option
@output_option
@handle_errors
def extend(polytope, facet, s, k, via_blow_up, dim, output):
    """Reflexive Delzant extension realizing the quadruple."""
    cfg = _config()
    q = _quadruple(_load(polytope, cfg, dim), facet, s, k)
    result = build_extension_via_blow_up(q) if via_blow_up else build_extension(q)
    _emit(polytope_document(result), cfg, output, "extension")


@cli.command("verify-extension")
@click.argument("extension")
@click.argument("polytope")
@quadruple_options
@dim_option
@format_option
@handle_errors
def verify_extension_cmd(extension, polytope, facet, s, k, dim, fmt):
    """Check that EXTENSION realizes the quadruple over POLYTOPE; exit 1 if not."""
    cfg = _config()
    base = _load(polytope, cfg, dim)
    ext = _load(extension, cfg, extra=1)
    verdict = verify_extension(ext, _quadruple(base, facet, s, k))
    doc = verdict_document(verdict)
    _emit(doc, cfg, fmt=fmt, rows=[doc])
    if not verdict:
        sys.exit(EXIT_CHECK_FAILED)


@cli.command("enumerate-reflexive")
@click.option("--delzant-only", is_flag=True, help="Keep the Delzant polygons only.")
@click.option("--radius", type=int, default=None, help="Vertex box half-width.")
@click.option("--workers", type=int, default=None, help="Worker processes.")
@format_option
@output_option
@handle_errors
def enumerate_reflexive(delzant_only, radius, workers, fmt, output):
    """All reflexive polygons up to unimodular equivalence."""
    cfg = _config(search_radius=radius, workers=workers)
    click.echo(f"Searching [-{cfg['search_radius']}, {cfg['search_radius']}]^2 ...", err=True)
    polygons = enumerate_reflexive_polygons(radius=cfg["search_radius"], workers=cfg["workers"])
    entries = []
    for i, p in enumerate(polygons):
        smooth = is_delzant(p)
        if delzant_only and not smooth:
            continue
        entries.append({"index": i, "delzant": smooth, "polytope": polytope_document(p)})
    click.echo(f"  → {len(polygons)} classes, {sum(e['delzant'] for e in entries)} Delzant", err=True)
    rows = [
        {"index": e["index"], "delzant": e["delzant"], "vertices": len(e["polytope"]["vertices"])}
        for e in entries
    ]
    _emit({"count": len(entries), "polygons": entries}, cfg, output, "polygons", fmt, rows)


@cli.command()
@click.argument("directory", type=click.Path(file_okay=False))
@click.option("--radius", type=int, default=None, help="Vertex box half-width.")
@click.option("--workers", type=int, default=None, help="Worker processes.")
@handle_errors
def atlas(directory, radius, workers):
    """Classify and verify every reflexive Delzant polygon; write DIRECTORY."""
    cfg = _config(search_radius=radius, workers=workers)
    click.echo("Building atlas ...", err=True)
    result = build_atlas(radius=cfg["search_radius"], workers=cfg["workers"])
    written = write_atlas(result, Path(directory), cfg["indent"])
    click.echo(f"✓ {len(written)} files written → {directory}", err=True)
    click.echo(render_json(summary_document(result), cfg["indent"]), nl=False)
