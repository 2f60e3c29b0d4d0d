"""Lattice-sensitive predicates: integrality, reflexivity, Delzant smoothness,
vertex weights, the weight sum formula, and the planar unimodular normal form."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .errors import (
    AssertionViolation,
    DimensionMismatch,
    NotAVertex,
    NotAVertexOfFacet,
    NotDelzant,
    NotIntegral,
    UnsupportedDimension,
)
from .exact import (
    LatticeVec,
    RatVec,
    dot,
    ext_gcd,
    is_integral_vec,
    is_unimodular_basis,
    mat_vec,
    neg,
    rat_vec,
    to_lattice,
)
from .polytope import Polytope, facet_of, from_vertices


Matrix2 = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class VertexWeights:
    vertex: RatVec
    weights: tuple[LatticeVec, ...]


@dataclass(frozen=True)
class NormalForm:
    canonical_vertices: tuple[LatticeVec, ...]
    witness: Matrix2

    def polytope(self) -> Polytope:
        return from_vertices(self.canonical_vertices)


def is_integral(p: Polytope) -> bool:
    return all(is_integral_vec(v) for v in p.vertices)


def is_reflexive(p: Polytope) -> bool:
    """Integral, with every primitive inward normal at level c = -1."""
    if not all(h.c == -1 for h in p.halfspaces):
        return False
    return is_integral(p)


def vertex_weights(p: Polytope, v: Sequence) -> VertexWeights:
    """Primitive directions of the edges leaving *v*."""
    vertex = rat_vec(v)
    if vertex not in p.vertices:
        raise NotAVertex(f"{[str(x) for x in vertex]} is not a vertex")
    weights = []
    for e in p.edge_list:
        if e.vertex == vertex:
            weights.append(e.direction)
        elif e.end == vertex:
            weights.append(neg(e.direction))
    return VertexWeights(vertex, tuple(sorted(weights)))


def is_smooth(p: Polytope) -> bool:
    """Simple, with the weights at each vertex forming a Z-basis."""
    for v in p.vertices:
        weights = vertex_weights(p, v).weights
        if len(weights) != p.dim or not is_unimodular_basis(weights):
            return False
    return True


def is_delzant(p: Polytope) -> bool:
    """Integral and smooth at every vertex."""
    return is_integral(p) and is_smooth(p)


def weight_sum_holds(p: Polytope) -> bool:
    """v = -(sum of the weights of v) at every vertex."""
    if not is_delzant(p):
        raise NotDelzant("weight sum formula is only defined for Delzant polytopes")
    for v in p.vertices:
        weights = vertex_weights(p, v).weights
        total = [sum(w[k] for w in weights) for k in range(p.dim)]
        if any(v[k] != -total[k] for k in range(p.dim)):
            return False
    return True


def vertex_sum(p: Polytope) -> RatVec:
    return tuple(sum((v[k] for v in p.vertices), Fraction(0)) for k in range(p.dim))


def edge_out_of_facet(p: Polytope, facet: int, v: Sequence) -> tuple[LatticeVec, int]:
    """The weight at *v* leaving the facet, and the integer length of its edge.

    On a reflexive Delzant polytope the weight pairs to 1 with the facet normal
    and the edge length is a positive integer; anything else raises
    AssertionViolation.
    """
    halfspace, members = facet_of(p, facet)
    vertex = rat_vec(v)
    if vertex not in p.vertices or p.vertices.index(vertex) not in members:
        raise NotAVertexOfFacet(f"{[str(x) for x in vertex]} is not a vertex of facet {facet}")
    leaving = [a for a in vertex_weights(p, vertex).weights if dot(a, halfspace.normal) != 0]
    if len(leaving) != 1:
        raise AssertionViolation(f"{len(leaving)} weights leave facet {facet} at this vertex")
    alpha = leaving[0]
    if dot(alpha, halfspace.normal) != 1:
        raise AssertionViolation(f"<alpha, nu> = {dot(alpha, halfspace.normal)}, expected 1")
    for e in p.edge_list:
        if (e.vertex == vertex and e.direction == alpha) or (e.end == vertex and e.direction == neg(alpha)):
            length = e.length
            break
    else:  # pragma: no cover - every weight comes from an edge
        raise AssertionViolation("weight without an edge")
    if length.denominator != 1 or length <= 0:
        raise AssertionViolation(f"edge length {length} is not a positive integer")
    return alpha, int(length)


def _hermite_frame(alpha: LatticeVec, beta: LatticeVec) -> Matrix2:
    """Unique U in GL(2, Z) with U·alpha = e1 and U·beta = (b1, b2), 0 <= b1 < b2."""
    a, c = alpha
    g, x, y = ext_gcd(a, c)
    if g != 1:
        raise AssertionViolation(f"edge direction {alpha} is not primitive")
    row1, row2 = (x, y), (-c, a)
    b1 = row1[0] * beta[0] + row1[1] * beta[1]
    b2 = row2[0] * beta[0] + row2[1] * beta[1]
    if b2 < 0:
        row2, b2 = (c, -a), -b2
    q = b1 // b2
    row1 = (row1[0] - q * row2[0], row1[1] - q * row2[1])
    return (row1, row2)


def normal_form(p: Polytope) -> NormalForm:
    """Canonical GL(2, Z) representative of an integral polygon.

    Every (vertex, ordered pair of weights) determines one unimodular frame;
    the representative is the lexicographically smallest sorted image.
    """
    if p.dim != 2:
        raise UnsupportedDimension(f"normal form is implemented for polygons, got dim {p.dim}")
    if not is_integral(p):
        raise NotIntegral("normal form needs an integral polygon")
    best: tuple[tuple[LatticeVec, ...], Matrix2] | None = None
    for v in p.vertices:
        for alpha, beta in permutations(vertex_weights(p, v).weights, 2):
            u = _hermite_frame(alpha, beta)
            image = tuple(sorted(to_lattice(mat_vec(u, w)) for w in p.vertices))
            if best is None or image < best[0]:
                best = (image, u)
    assert best is not None
    return NormalForm(best[0], best[1])


def gl_equivalent(p: Polytope, q: Polytope) -> bool:
    if p.dim != q.dim:
        raise DimensionMismatch(f"dimensions {p.dim} and {q.dim}")
    return normal_form(p).canonical_vertices == normal_form(q).canonical_vertices
