"""Full-dimensional rational polytopes in dual description.

A ``Polytope`` always carries both its minimal H-representation (primitive
inward normals, sorted) and its vertex list (sorted lexicographically), plus
the facet/vertex incidence. Both constructors funnel through ``_assemble`` so
two equal polytopes compare equal field by field.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from .errors import (
    DimensionMismatch,
    Empty,
    IndexOutOfRange,
    NotAVertex,
    NotFullDimensional,
    SingularMatrix,
    Unbounded,
)
from .exact import (
    LatticeVec,
    RatVec,
    add,
    det,
    dot,
    integral_direction,
    mat_vec,
    neg,
    normal_vector,
    primitive,
    rank,
    rat_vec,
    solve_square,
    sub,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class HalfSpace:
    """``{w : <w, normal> >= c}`` with an inward normal."""

    normal: LatticeVec
    c: Fraction

    @classmethod
    def canonical(cls, normal: Sequence[int], c: Fraction | int) -> "HalfSpace":
        g = math.gcd(*normal)
        prim = primitive(normal)
        return cls(prim, Fraction(c) / g)

    def slack(self, w: Sequence) -> Fraction:
        return dot(self.normal, w) - self.c

    def contains(self, w: Sequence) -> bool:
        return self.slack(w) >= 0

    def lift(self, last: int = 0) -> "HalfSpace":
        """The same inequality in t* x R, with *last* as the new normal entry."""
        return HalfSpace(self.normal + (last,), self.c)


@dataclass(frozen=True)
class Edge:
    """``{vertex + t * direction : 0 <= t <= length}``, direction primitive."""

    vertex: RatVec
    direction: LatticeVec
    length: Fraction

    @property
    def end(self) -> RatVec:
        return add(self.vertex, tuple(self.length * a for a in self.direction))


@dataclass(frozen=True)
class Polytope:
    dim: int
    halfspaces: tuple[HalfSpace, ...]
    vertices: tuple[RatVec, ...]
    incidence: tuple[frozenset[int], ...] = field(repr=False)

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        return tuple(_compute_edges(self))

    def vertex_index(self, v: Sequence) -> int:
        try:
            return self.vertices.index(rat_vec(v))
        except ValueError:
            raise NotAVertex(f"{_fmt(v)} is not a vertex") from None

    @property
    def normals(self) -> list[LatticeVec]:
        return [h.normal for h in self.halfspaces]


def _fmt(v: Sequence) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in v) + ")"


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull; -1 for no points."""
    if not points:
        return -1
    base = points[0]
    return rank([sub(p, base) for p in points[1:]])


def _assemble(dim: int, facets: Iterable[HalfSpace], vertices: Iterable[RatVec]) -> Polytope:
    hs = tuple(sorted(set(facets)))
    vs = tuple(sorted(set(vertices)))
    incidence = tuple(
        frozenset(i for i, v in enumerate(vs) if h.slack(v) == 0) for h in hs
    )
    return Polytope(dim, hs, vs, incidence)


def _hull_facets(points: list[RatVec], dim: int) -> set[HalfSpace]:
    facets: set[HalfSpace] = set()
    for combo in combinations(points, dim):
        base = combo[0]
        nv = normal_vector([sub(p, base) for p in combo[1:]])
        if all(x == 0 for x in nv):
            continue
        normal = integral_direction(nv)
        c = dot(normal, base)
        values = [dot(normal, p) - c for p in points]
        if all(x >= 0 for x in values):
            facets.add(HalfSpace(normal, c))
        elif all(x <= 0 for x in values):
            facets.add(HalfSpace(neg(normal), -c))
    return facets


def from_vertices(points: Iterable[Sequence]) -> Polytope:
    """Convex hull of a finite point set; non-extreme points are dropped."""
    pts = sorted({rat_vec(p) for p in points})
    if not pts:
        raise Empty("no points given")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise DimensionMismatch("points of different lengths")
    if affine_rank(pts) < dim:
        raise NotFullDimensional(f"affine hull of the points has dimension < {dim}")
    facets = _hull_facets(pts, dim)
    vertices = [
        p for p in pts
        if rank([h.normal for h in facets if h.slack(p) == 0]) == dim
    ]
    logger.debug("hull of %d points: %d facets, %d vertices", len(pts), len(facets), len(vertices))
    return _assemble(dim, facets, vertices)


def from_halfspaces(halfspaces: Iterable[HalfSpace]) -> Polytope:
    """Intersection of halfspaces; vertices found by exhaustive d-subset solves."""
    hs = sorted({HalfSpace.canonical(h.normal, h.c) for h in halfspaces})
    if not hs:
        raise Unbounded("no halfspaces: the whole space")
    dim = len(hs[0].normal)
    if any(len(h.normal) != dim for h in hs):
        raise DimensionMismatch("halfspace normals of different lengths")
    if rank([h.normal for h in hs]) < dim:
        raise Unbounded("inward normals do not span the dual space")

    vertices: set[RatVec] = set()
    for combo in combinations(hs, dim):
        a = [h.normal for h in combo]
        if det(a) == 0:
            continue
        x = solve_square(a, [h.c for h in combo])
        if all(h.contains(x) for h in hs):
            vertices.add(x)
    if not vertices:
        raise Empty("halfspace intersection is empty")

    for combo in combinations(hs, dim - 1):
        ray = normal_vector([h.normal for h in combo])
        if all(x == 0 for x in ray):
            continue
        for r in (ray, tuple(-x for x in ray)):
            if all(dot(h.normal, r) >= 0 for h in hs):
                raise Unbounded(f"recession direction {_fmt(r)}")

    verts = sorted(vertices)
    if affine_rank(verts) < dim:
        raise NotFullDimensional(f"halfspace intersection has dimension < {dim}")
    facets = [
        h for h in hs
        if affine_rank([v for v in verts if h.slack(v) == 0]) == dim - 1
    ]
    logger.debug("%d halfspaces -> %d facets, %d vertices", len(hs), len(facets), len(verts))
    return _assemble(dim, facets, verts)


def _compute_edges(p: Polytope) -> list[Edge]:
    out = []
    n = len(p.vertices)
    for i, j in combinations(range(n), 2):
        common = [h.normal for h, inc in zip(p.halfspaces, p.incidence) if i in inc and j in inc]
        if rank(common) != p.dim - 1:
            continue
        vi, vj = p.vertices[i], p.vertices[j]
        diff = sub(vj, vi)
        alpha = integral_direction(diff)
        k = next(idx for idx, a in enumerate(alpha) if a != 0)
        out.append(Edge(vi, alpha, diff[k] / alpha[k]))
    return out


def edges(p: Polytope) -> list[Edge]:
    """One edge per geometric edge, oriented from the lexicographically smaller end."""
    return list(p.edge_list)


def contains(p: Polytope, w: Sequence) -> bool:
    if len(w) != p.dim:
        raise DimensionMismatch(f"point of length {len(w)} in dimension {p.dim}")
    return all(h.contains(w) for h in p.halfspaces)


def _bounding_box(p: Polytope) -> list[range]:
    ranges = []
    for k in range(p.dim):
        coords = [v[k] for v in p.vertices]
        ranges.append(range(math.floor(min(coords)), math.ceil(max(coords)) + 1))
    return ranges


def lattice_points(p: Polytope) -> list[LatticeVec]:
    return [w for w in product(*_bounding_box(p)) if contains(p, w)]


def interior_lattice_points(p: Polytope) -> list[LatticeVec]:
    return [
        w for w in product(*_bounding_box(p))
        if all(h.slack(w) > 0 for h in p.halfspaces)
    ]


def facet_of(p: Polytope, i: int) -> tuple[HalfSpace, frozenset[int]]:
    if not 0 <= i < len(p.halfspaces):
        raise IndexOutOfRange(f"facet index {i} (polytope has {len(p.halfspaces)} facets)")
    return p.halfspaces[i], p.incidence[i]


def facet_with_normal(p: Polytope, normal: Sequence[int]) -> Optional[int]:
    target = tuple(normal)
    for i, h in enumerate(p.halfspaces):
        if h.normal == target:
            return i
    return None


def face_vertices(p: Polytope, facets: Iterable[int]) -> frozenset[int]:
    """Vertex indices of the face cut out by the given facets."""
    result = frozenset(range(len(p.vertices)))
    for i in facets:
        result &= facet_of(p, i)[1]
    return result


def apply_linear(p: Polytope, u: Sequence[Sequence[int]]) -> Polytope:
    """Image of *p* under the integral matrix *u* (rows act on column vectors)."""
    if len(u) != p.dim or any(len(r) != p.dim for r in u):
        raise DimensionMismatch(f"{len(u)}x? matrix on dimension {p.dim}")
    if det(u) == 0:
        raise SingularMatrix("linear map is singular")
    return from_vertices(mat_vec(u, v) for v in p.vertices)


def translate(p: Polytope, t: Sequence) -> Polytope:
    return from_vertices(add(v, t) for v in p.vertices)
