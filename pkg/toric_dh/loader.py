"""Polytope document parsing, command-line points, and built-in shapes.

A polytope document is a JSON object

    {"dim": 2,
     "vertices": [["-1", "-1"], ["1", "-1"], ...],
     "halfspaces": [{"normal": [0, 1], "c": "-1"}, ...]}

with at least one of ``vertices`` and ``halfspaces``. Every validation
failure raises DocumentError naming the field, e.g. ``halfspaces[2].c``.
"""

import json
from pathlib import Path
from typing import Any

from .errors import DocumentError
from .exact import RatVec, parse_rational
from .polytope import HalfSpace, Polytope, from_halfspaces, from_vertices

BUILTIN_SHAPES: dict[str, tuple[tuple[int, ...], ...]] = {
    "square": ((-1, -1), (1, -1), (1, 1), (-1, 1)),
    "triangle": ((-1, -1), (2, -1), (-1, 2)),
    "hexagon": ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)),
    "pentagon": ((-1, -1), (1, -1), (1, 0), (0, 1), (-1, 1)),
    "p2-dual": ((1, 0), (0, 1), (-1, -1)),
    "cube": tuple(
        (x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)
    ),
}


def builtin_shape(name: str) -> Polytope:
    try:
        return from_vertices(BUILTIN_SHAPES[name])
    except KeyError:
        raise DocumentError(
            "shape", f"unknown shape '{name}'. Known: {', '.join(sorted(BUILTIN_SHAPES))}"
        ) from None


def _rational(value: Any, field: str):
    try:
        return parse_rational(value)
    except ValueError as e:
        raise DocumentError(field, str(e)) from None


def _integer(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(field, f"expected an integer, got {value!r}")
    return value


def _array(value: Any, field: str, length: int | None = None) -> list:
    if not isinstance(value, list):
        raise DocumentError(field, f"expected an array, got {type(value).__name__}")
    if length is not None and len(value) != length:
        raise DocumentError(field, f"expected {length} entries, got {len(value)}")
    return value


def parse_point(text: str, dim: int | None = None) -> RatVec:
    """Comma-separated rationals, e.g. ``"1,-1/2"``."""
    point = tuple(_rational(p, f"point[{i}]") for i, p in enumerate(text.split(",")))
    if dim is not None and len(point) != dim:
        raise DocumentError("point", f"expected {dim} coordinates, got {len(point)}")
    return point


def _check_dim(dim: int, max_dim: int | None, expected: int | None) -> None:
    if max_dim is not None and dim > max_dim:
        raise DocumentError("dim", f"dimension {dim} exceeds max_dim {max_dim}")
    if expected is not None and dim != expected:
        raise DocumentError("dim", f"dimension {dim}, expected {expected}")


def parse_polytope_document(
    doc: Any, max_dim: int | None = None, expected_dim: int | None = None
) -> Polytope:
    """Validate *doc* field by field; the dimension is checked before any hull work."""
    if not isinstance(doc, dict):
        raise DocumentError("document", "expected a JSON object")
    unknown = sorted(set(doc) - {"dim", "vertices", "halfspaces"})
    if unknown:
        raise DocumentError(unknown[0], "unknown field")
    if "dim" not in doc:
        raise DocumentError("dim", "missing")
    dim = _integer(doc["dim"], "dim")
    if dim < 1:
        raise DocumentError("dim", f"must be positive, got {dim}")
    _check_dim(dim, max_dim, expected_dim)
    if "vertices" not in doc and "halfspaces" not in doc:
        raise DocumentError("document", "needs vertices or halfspaces")

    from_v = from_h = None
    if "vertices" in doc:
        points = [
            tuple(
                _rational(x, f"vertices[{i}][{j}]")
                for j, x in enumerate(_array(v, f"vertices[{i}]", dim))
            )
            for i, v in enumerate(_array(doc["vertices"], "vertices"))
        ]
        if not points:
            raise DocumentError("vertices", "empty")
        from_v = from_vertices(points)
    if "halfspaces" in doc:
        halfspaces = []
        for i, h in enumerate(_array(doc["halfspaces"], "halfspaces")):
            if not isinstance(h, dict):
                raise DocumentError(f"halfspaces[{i}]", "expected an object")
            for key in ("normal", "c"):
                if key not in h:
                    raise DocumentError(f"halfspaces[{i}].{key}", "missing")
            normal = tuple(
                _integer(x, f"halfspaces[{i}].normal[{j}]")
                for j, x in enumerate(_array(h["normal"], f"halfspaces[{i}].normal", dim))
            )
            if not any(normal):
                raise DocumentError(f"halfspaces[{i}].normal", "zero normal")
            halfspaces.append(HalfSpace(normal, _rational(h["c"], f"halfspaces[{i}].c")))
        if not halfspaces:
            raise DocumentError("halfspaces", "empty")
        from_h = from_halfspaces(halfspaces)

    if from_v is not None and from_h is not None and from_v != from_h:
        raise DocumentError("halfspaces", "does not describe the same polytope as vertices")
    return from_v if from_v is not None else from_h


def load_polytope(
    source: str, max_dim: int | None = None, expected_dim: int | None = None
) -> Polytope:
    """Read a polytope document from a path, or a built-in shape by name."""
    path = Path(source)
    if path.is_file():
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise DocumentError("document", f"{path} is not valid JSON ({e.msg})") from None
        except UnicodeDecodeError as e:
            raise DocumentError("document", f"{path} is not UTF-8 ({e.reason})") from None
        except OSError as e:
            raise DocumentError("document", f"cannot read {path} ({e.strerror})") from None
        return parse_polytope_document(doc, max_dim, expected_dim)
    if source in BUILTIN_SHAPES:
        _check_dim(len(BUILTIN_SHAPES[source][0]), max_dim, expected_dim)
        return builtin_shape(source)
    raise DocumentError("path", f"no such file or built-in shape: {source}")
