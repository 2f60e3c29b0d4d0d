"""Tests for toric_dh.loader."""

import json
from fractions import Fraction
from itertools import product
from pathlib import Path

import pytest

from toric_dh import loader as loader_mod
from toric_dh.errors import DocumentError
from toric_dh.loader import (
    BUILTIN_SHAPES,
    builtin_shape,
    load_polytope,
    parse_point,
    parse_polytope_document,
)
from toric_dh.output import polytope_document

SQUARE_DOC = {
    "dim": 2,
    "vertices": [["-1", "-1"], ["1", "-1"], ["1", "1"], ["-1", "1"]],
}


def field_of(excinfo) -> str:
    return excinfo.value.field


class TestBuiltinShapes:
    @pytest.mark.parametrize("name", sorted(BUILTIN_SHAPES))
    def test_loads(self, name):
        p = builtin_shape(name)
        assert len(p.vertices) == len(BUILTIN_SHAPES[name])

    def test_unknown(self):
        with pytest.raises(DocumentError, match="unknown shape") as excinfo:
            builtin_shape("dodecahedron")
        assert field_of(excinfo) == "shape"


class TestParsePoint:
    def test_rationals(self):
        assert parse_point("1,-1/2") == (1, Fraction(-1, 2))

    def test_bad_coordinate(self):
        with pytest.raises(DocumentError) as excinfo:
            parse_point("1,x")
        assert field_of(excinfo) == "point[1]"

    def test_wrong_dimension(self):
        with pytest.raises(DocumentError) as excinfo:
            parse_point("1,2,3", dim=2)
        assert field_of(excinfo) == "point"


class TestParsePolytopeDocument:
    def test_vertices(self):
        assert parse_polytope_document(SQUARE_DOC) == builtin_shape("square")

    def test_halfspaces_only(self):
        doc = {
            "dim": 2,
            "halfspaces": [
                {"normal": [1, 0], "c": -1},
                {"normal": [-1, 0], "c": "-1"},
                {"normal": [0, 1], "c": "-1"},
                {"normal": [0, -1], "c": "-1"},
            ],
        }
        assert parse_polytope_document(doc) == builtin_shape("square")

    def test_rational_vertex(self):
        doc = {"dim": 2, "vertices": [["1/2", "0"], ["0", "1"], ["-1", "-1"]]}
        assert (Fraction(1, 2), 0) in parse_polytope_document(doc).vertices

    def test_own_document_round_trips(self):
        for name in ("triangle", "hexagon", "cube"):
            p = builtin_shape(name)
            assert parse_polytope_document(polytope_document(p)) == p

    @pytest.mark.parametrize(
        "doc,field",
        [
            ({"vertices": [["0", "0"]]}, "dim"),
            ({"dim": "2", "vertices": []}, "dim"),
            ({"dim": 2}, "document"),
            ({"dim": 2, "vertices": [["0", "0"], ["1", "x"]]}, "vertices[1][1]"),
            ({"dim": 2, "vertices": [["0", "0", "0"]]}, "vertices[0]"),
            ({"dim": 2, "vertices": []}, "vertices"),
            ({"dim": 2, "halfspaces": [{"normal": [1, 0]}]}, "halfspaces[0].c"),
            ({"dim": 2, "halfspaces": [{"normal": [1, "0"], "c": 1}]}, "halfspaces[0].normal[1]"),
            ({"dim": 2, "halfspaces": [{"normal": [0, 0], "c": 1}]}, "halfspaces[0].normal"),
            ({"dim": 2, "halfspaces": [{"normal": [1, 0], "c": "0.5"}]}, "halfspaces[0].c"),
            ({"dim": 2, "vertices": [["0", "0"]], "colour": "red"}, "colour"),
        ],
    )
    def test_field_errors(self, doc, field):
        with pytest.raises(DocumentError) as excinfo:
            parse_polytope_document(doc)
        assert field_of(excinfo) == field
        assert str(excinfo.value).startswith(f"{field}: ")

    def test_mismatched_representations(self):
        doc = dict(SQUARE_DOC, halfspaces=polytope_document(builtin_shape("triangle"))["halfspaces"])
        with pytest.raises(DocumentError, match="same polytope"):
            parse_polytope_document(doc)

    def test_not_an_object(self):
        with pytest.raises(DocumentError):
            parse_polytope_document([1, 2])


class TestLoadPolytope:
    def test_from_file(self, tmp_path):
        path = tmp_path / "square.json"
        path.write_text(json.dumps(SQUARE_DOC))
        assert load_polytope(str(path)) == builtin_shape("square")

    def test_builtin_name(self):
        assert load_polytope("hexagon") == builtin_shape("hexagon")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        with pytest.raises(DocumentError, match="not valid JSON"):
            load_polytope(str(path))

    def test_missing(self, tmp_path):
        with pytest.raises(DocumentError) as excinfo:
            load_polytope(str(tmp_path / "absent.json"))
        assert field_of(excinfo) == "path"

    def test_not_utf8(self, tmp_path):
        path = tmp_path / "latin1.json"
        path.write_bytes(b'{"dim": 2, "vertices": [["\xff"]]}')
        with pytest.raises(DocumentError, match="not UTF-8") as excinfo:
            load_polytope(str(path))
        assert field_of(excinfo) == "document"

    def test_unreadable(self, tmp_path, monkeypatch):
        path = tmp_path / "locked.json"
        path.write_text(json.dumps(SQUARE_DOC))

        def refuse(self, *args, **kwargs):
            raise PermissionError(13, "Permission denied")

        monkeypatch.setattr(Path, "read_text", refuse)
        with pytest.raises(DocumentError, match="cannot read") as excinfo:
            load_polytope(str(path))
        assert field_of(excinfo) == "document"

    def test_builtin_over_max_dim(self):
        with pytest.raises(DocumentError, match="exceeds max_dim") as excinfo:
            load_polytope("cube", max_dim=2)
        assert field_of(excinfo) == "dim"

    def test_builtin_wrong_dim(self):
        with pytest.raises(DocumentError, match="expected 2") as excinfo:
            load_polytope("cube", expected_dim=2)
        assert field_of(excinfo) == "dim"


def hypercube_doc(dim: int) -> dict:
    return {
        "dim": dim,
        "vertices": [[str(x) for x in v] for v in product((-1, 1), repeat=dim)],
    }


class TestDimensionGuard:
    def test_rejected_before_the_hull(self, monkeypatch):
        def no_hull(*args, **kwargs):
            raise AssertionError("hull built for an oversized document")

        monkeypatch.setattr(loader_mod, "from_vertices", no_hull)
        with pytest.raises(DocumentError, match="exceeds max_dim 4") as excinfo:
            parse_polytope_document(hypercube_doc(7), max_dim=4)
        assert field_of(excinfo) == "dim"

    def test_expected_dim(self):
        with pytest.raises(DocumentError, match="dimension 2, expected 3"):
            parse_polytope_document(SQUARE_DOC, expected_dim=3)

    def test_within_limits(self):
        p = parse_polytope_document(hypercube_doc(3), max_dim=3, expected_dim=3)
        assert p == builtin_shape("cube")
