"""Enumeration of reflexive polygons and the classification atlas.

Candidates are convex lattice polygons with vertices in the box [-r, r]^2
whose only interior lattice point is the origin. A polygon is walked
counterclockwise from its lowest-then-leftmost vertex; each edge ab must
bound an empty fan triangle (0, a, b), which by Pick's theorem means
cross(a, b) == gcd(b - a) for primitive a and b, and edge directions must
turn strictly left without completing more than one revolution.
"""

import logging
import math
import multiprocessing
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .classify import ClassificationReport, classify
from .errors import VerificationFailed
from .exact import LatticeVec
from .extension import build_extension, verify_extension
from .lattice import is_delzant, is_reflexive, normal_form
from .polytope import Polytope, from_vertices

logger = logging.getLogger(__name__)

DEFAULT_RADIUS = 3
REFLEXIVE_POLYGON_COUNT = 16
DELZANT_POLYGON_COUNT = 5


def _cross(a: LatticeVec, b: LatticeVec) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _height_key(v: LatticeVec) -> tuple[int, int]:
    return (v[1], v[0])


def _upper_half(d: LatticeVec) -> bool:
    return d[1] > 0 or (d[1] == 0 and d[0] > 0)


def _turns_forward(prev: LatticeVec, new: LatticeVec) -> bool:
    """*new* is a strict left turn from *prev* and later in angle from [0, 2pi)."""
    if _cross(prev, new) <= 0:
        return False
    return _upper_half(prev) or not _upper_half(new)


def _empty_fan(a: LatticeVec, b: LatticeVec) -> bool:
    dx, dy = b[0] - a[0], b[1] - a[1]
    return _cross(a, b) == math.gcd(dx, dy)


def _candidates(radius: int, reverse: bool) -> list[LatticeVec]:
    pts = [
        (x, y)
        for y in range(-radius, radius + 1)
        for x in range(-radius, radius + 1)
        if math.gcd(x, y) == 1
    ]
    pts.sort(key=_height_key)
    return pts[::-1] if reverse else pts


def _walk(start: LatticeVec, pool: list[LatticeVec]) -> Iterator[tuple[LatticeVec, ...]]:
    path = [start]

    def extend(direction: LatticeVec | None) -> Iterator[tuple[LatticeVec, ...]]:
        a = path[-1]
        if len(path) >= 3 and _empty_fan(a, start):
            closing = (start[0] - a[0], start[1] - a[1])
            first = (path[1][0] - start[0], path[1][1] - start[1])
            if _turns_forward(direction, closing) and _cross(closing, first) > 0:
                yield tuple(path)
        for b in pool:
            if b in path or not _empty_fan(a, b):
                continue
            step = (b[0] - a[0], b[1] - a[1])
            if direction is not None and not _turns_forward(direction, step):
                continue
            path.append(b)
            yield from extend(step)
            path.pop()

    yield from extend(None)


def _search_from(args: tuple[LatticeVec, int, bool]) -> list[tuple[LatticeVec, ...]]:
    """Canonical vertex lists of every reflexive polygon whose lowest-then-leftmost
    vertex is *start*."""
    start, radius, reverse = args
    if start[1] >= 0:
        return []
    pool = [v for v in _candidates(radius, reverse) if _height_key(v) > _height_key(start)]
    found: dict[tuple[LatticeVec, ...], None] = {}
    for cycle in _walk(start, pool):
        p = from_vertices(cycle)
        if len(p.vertices) != len(cycle) or not is_reflexive(p):
            continue
        found.setdefault(normal_form(p).canonical_vertices, None)
    return list(found)


def _canonical_order(vertices: tuple[LatticeVec, ...]) -> tuple[int, tuple[LatticeVec, ...]]:
    return (len(vertices), vertices)


def enumerate_reflexive_polygons(
    radius: int = DEFAULT_RADIUS, workers: int = 1, reverse: bool = False
) -> list[Polytope]:
    """One normal-form representative per unimodular class of reflexive polygons."""
    starts = [(v, radius, reverse) for v in _candidates(radius, reverse)]
    if workers > 1:
        with multiprocessing.Pool(processes=workers) as pool:
            batches = pool.map(_search_from, starts)
    else:
        batches = [_search_from(s) for s in starts]
    classes = sorted({vs for batch in batches for vs in batch}, key=_canonical_order)
    logger.info("radius %d: %d reflexive polygon classes", radius, len(classes))
    return [from_vertices(vs) for vs in classes]


@dataclass(frozen=True)
class Atlas:
    polygons: tuple[Polytope, ...]
    delzant_subset: tuple[int, ...]
    reports: tuple[ClassificationReport, ...]

    def report_for(self, index: int) -> ClassificationReport:
        return self.reports[self.delzant_subset.index(index)]

    @property
    def class_count(self) -> int:
        return sum(len(r.classes) for r in self.reports)


def build_atlas(radius: int = DEFAULT_RADIUS, workers: int = 1) -> Atlas:
    """Classify every reflexive Delzant polygon and verify each extension."""
    polygons = enumerate_reflexive_polygons(radius=radius, workers=workers)
    delzant = tuple(i for i, p in enumerate(polygons) if is_delzant(p))
    reports = []
    for i in delzant:
        report = classify(polygons[i])
        for cls in report.classes:
            for q in cls.quadruples:
                verdict = verify_extension(build_extension(q), q)
                if not verdict:
                    raise VerificationFailed(
                        f"polygon {i}, facet {q.facet}, (s, k) = ({q.s}, {q.k}): "
                        f"{verdict.failed} {verdict.detail}".rstrip()
                    )
        reports.append(report)
    logger.info("atlas: %d polygons, %d Delzant, %d classes",
                len(polygons), len(delzant), sum(len(r.classes) for r in reports))
    return Atlas(tuple(polygons), delzant, tuple(reports))


def write_atlas(atlas: Atlas, directory: Path, indent: int = 2) -> list[Path]:
    """Write polygon, class and summary documents; returns the paths written."""
    from .output import class_document, polytope_document, render_json, summary_document

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []

    def emit(path: Path, doc: dict) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(render_json(doc, indent))
        written.append(path)

    for i, p in enumerate(atlas.polygons):
        emit(directory / f"polygon-{i:02d}.json", polytope_document(p))
        if i not in atlas.delzant_subset:
            continue
        for j, cls in enumerate(atlas.report_for(i).classes):
            emit(directory / f"polygon-{i:02d}" / f"class-{j:02d}.json", class_document(cls))
    emit(directory / "summary.json", summary_document(atlas))
    return written
