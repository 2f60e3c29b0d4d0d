"""Document building, JSON/table rendering, and writing."""

import json
from pathlib import Path
from typing import TYPE_CHECKING, Any, Optional, Sequence

import click

from .classify import ClassificationReport, DHClass, DHFunction, Verdict
from .exact import format_rational
from .polytope import Edge, Polytope

if TYPE_CHECKING:
    from .enumeration import Atlas


def _rats(v: Sequence) -> list[str]:
    return [format_rational(x) for x in v]


def polytope_document(p: Polytope) -> dict[str, Any]:
    return {
        "dim": p.dim,
        "vertices": [_rats(v) for v in p.vertices],
        "halfspaces": [
            {"normal": list(h.normal), "c": format_rational(h.c)} for h in p.halfspaces
        ],
    }


def facets_document(p: Polytope) -> list[dict[str, Any]]:
    """Index -> facet mapping, so a facet can be named on the command line."""
    return [
        {
            "index": i,
            "normal": list(h.normal),
            "c": format_rational(h.c),
            "vertices": [_rats(p.vertices[j]) for j in sorted(inc)],
        }
        for i, (h, inc) in enumerate(zip(p.halfspaces, p.incidence))
    ]


def edges_document(edges: Sequence[Edge]) -> list[dict[str, Any]]:
    return [
        {
            "vertex": _rats(e.vertex),
            "direction": list(e.direction),
            "length": format_rational(e.length),
        }
        for e in edges
    ]


def verdict_document(v: Verdict) -> dict[str, Any]:
    return {"ok": v.ok, "failed": v.failed, "detail": v.detail}


def dh_document(f: DHFunction) -> dict[str, Any]:
    return {"nu": None if f.nu is None else list(f.nu), "pieces": list(f.pieces)}


def _class_summary(cls: DHClass) -> dict[str, Any]:
    first = cls.quadruples[0]
    return {
        "nu": list(first.nu),
        "s": cls.s,
        "k": cls.k,
        "m": cls.m,
        "isolated_fixed_points": cls.isolated_fixed_points,
        "dh_min": format_rational(cls.dh_min),
        "realizing_facets": sorted(q.facet for q in cls.quadruples),
        "collision": cls.collision,
    }


def class_document(cls: DHClass) -> dict[str, Any]:
    doc = _class_summary(cls)
    doc["genus"] = cls.genus
    doc["painting"] = cls.painting
    doc["dh"] = dh_document(cls.dh)
    doc["extension"] = polytope_document(cls.extension)
    return doc


def report_document(report: ClassificationReport) -> dict[str, Any]:
    return {
        "polytope": polytope_document(report.polytope),
        "classes": [class_document(c) for c in report.classes],
    }


def report_rows(report: ClassificationReport) -> list[dict[str, Any]]:
    rows = []
    for cls in report.classes:
        row = _class_summary(cls)
        row["realizing_facets"] = ",".join(map(str, row["realizing_facets"]))
        row["nu"] = "(" + ",".join(map(str, row["nu"])) + ")"
        rows.append(row)
    return rows


def summary_document(atlas: "Atlas") -> dict[str, Any]:
    entries = []
    for i, p in enumerate(atlas.polygons):
        entry: dict[str, Any] = {
            "polygon": i,
            "vertices": len(p.vertices),
            "delzant": i in atlas.delzant_subset,
            "classes": [],
        }
        if entry["delzant"]:
            entry["classes"] = [_class_summary(c) for c in atlas.report_for(i).classes]
        entries.append(entry)
    return {
        "polygons": len(atlas.polygons),
        "delzant": len(atlas.delzant_subset),
        "classes": atlas.class_count,
        "entries": entries,
    }


def render_json(doc: Any, indent: int = 2) -> str:
    return json.dumps(doc, indent=indent, ensure_ascii=False) + "\n"


def render_table(rows: Sequence[dict[str, Any]]) -> str:
    """Left-aligned columns under a header; the first row fixes the column set."""
    if not rows:
        return "(empty)\n"
    columns = list(rows[0])
    cells = [[_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return "(" + ",".join(_cell(x) for x in value) + ")"
    return str(value)


def write_output(content: str, output_path: Optional[str], what: str) -> None:
    """Write to a file or stdout; the file case is announced on stderr."""
    if output_path:
        p = Path(output_path)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(content, encoding="utf-8")
        click.echo(f"✓ {what} written → {p}", err=True)
    else:
        click.echo(content, nl=False)
