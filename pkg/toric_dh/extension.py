"""Combinatorial blow-ups and toric extensions.

For an admissible quadruple (Δ, F, s, k) with F supported on <w, nu> = -1,
the extension Δ' lives in t* x R:

    k = 0:          y >= -1,  <(w, y), (-s nu, -1)> >= -1,  (nu_i, 0) >= -1
    (s, k) = (-1, 1): the k = 0, s = 0 polytope cut by <(w, y), (nu, -1)> >= -1
    (s, k) = (-1, 2): additionally cut by <(w, y), (-nu, 1)> >= -1

Its projection is Δ and its fibre length over w is DH(w).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .classify import AdmissibleQuadruple, Verdict, check_admissible, dh_function, kink_crossings
from .errors import (
    AssertionViolation,
    DimensionMismatch,
    EpsilonTooLarge,
    InvalidFace,
    NotAdmissible,
    NotDelzant,
    OutOfDomain,
    PolytopeError,
)
from .exact import RatVec, dot, neg, rat_vec
from .lattice import is_delzant, is_reflexive, is_smooth
from .polytope import (
    HalfSpace,
    Polytope,
    affine_rank,
    face_vertices,
    facet_with_normal,
    from_halfspaces,
    from_vertices,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlowUpSpec:
    """Blow up along the face cut out by ``face`` (facet indices), of size ``epsilon``."""

    face: frozenset[int]
    epsilon: Fraction

    @classmethod
    def of(cls, facets: Iterable[int], epsilon: Fraction | int = 1) -> "BlowUpSpec":
        return cls(frozenset(facets), Fraction(epsilon))


def blow_up(p: Polytope, spec: BlowUpSpec) -> Polytope:
    """Cut *p* by <w, nu_0> >= c_0 where nu_0 and c_0 - epsilon sum over the
    facets containing the face.

    *p* only has to be smooth, not integral: a rational epsilon gives a smooth
    polytope with rational vertices, so NotDelzant here means "not smooth".
    """
    if not is_smooth(p):
        raise NotDelzant("blow-up needs a smooth polytope")
    if spec.epsilon <= 0:
        raise PolytopeError(f"blow-up size must be positive, got {spec.epsilon}")
    if not spec.face:
        raise InvalidFace("no facets given")
    members = face_vertices(p, spec.face)
    if not members:
        raise InvalidFace(f"facets {sorted(spec.face)} do not meet")
    codim = p.dim - affine_rank([p.vertices[i] for i in sorted(members)])
    if codim < 2:
        raise InvalidFace(f"face has codimension {codim}, need at least 2")

    containing = [h for h, inc in zip(p.halfspaces, p.incidence) if members <= inc]
    nu0 = tuple(sum(h.normal[j] for h in containing) for j in range(p.dim))
    c0 = spec.epsilon + sum(h.c for h in containing)
    for i, v in enumerate(p.vertices):
        if i not in members and dot(v, nu0) <= c0:
            raise EpsilonTooLarge(
                f"vertex {[str(x) for x in v]} has <v, nu_0> = {dot(v, nu0)} <= c_0 = {c0}"
            )
    result = from_halfspaces(p.halfspaces + (HalfSpace(nu0, c0),))
    if not is_smooth(result):
        raise AssertionViolation("blow-up of a smooth polytope is not smooth")
    logger.debug("blow-up along %s: %d -> %d vertices", sorted(spec.face),
                 len(p.vertices), len(result.vertices))
    return result


def _require_admissible(q: AdmissibleQuadruple) -> None:
    verdict = check_admissible(q.polytope, q.facet, q.s, q.k)
    if not verdict:
        raise NotAdmissible(f"condition ({verdict.failed}) fails: {verdict.detail}")


def build_extension(q: AdmissibleQuadruple) -> Polytope:
    """The reflexive Delzant polytope over Δ whose height function is DH."""
    _require_admissible(q)
    p, nu = q.polytope, q.nu
    zero = (0,) * p.dim
    s_base = q.s if q.k == 0 else 0
    hs = [h.lift() for h in p.halfspaces]
    hs.append(HalfSpace(zero + (1,), Fraction(-1)))
    hs.append(HalfSpace(tuple(-s_base * x for x in nu) + (-1,), Fraction(-1)))
    if q.k >= 1:
        hs.append(HalfSpace(nu + (-1,), Fraction(-1)))
    if q.k == 2:
        hs.append(HalfSpace(neg(nu) + (1,), Fraction(-1)))
    result = from_halfspaces(hs)
    if not (is_reflexive(result) and is_delzant(result)):
        raise AssertionViolation("extension is not reflexive Delzant")
    return result


def build_extension_via_blow_up(q: AdmissibleQuadruple) -> Polytope:
    """Same polytope as build_extension, reached through size-1 blow-ups of
    the (0, 0) extension."""
    _require_admissible(q)
    if q.k == 0:
        return build_extension(q)
    p, nu = q.polytope, q.nu
    zero = (0,) * p.dim
    base = build_extension(AdmissibleQuadruple(p, q.facet, 0, 0))
    top = facet_with_normal(base, zero + (-1,))
    lifted = facet_with_normal(base, nu + (0,))
    step = blow_up(base, BlowUpSpec.of((top, lifted)))
    if q.k == 1:
        return step
    bottom = facet_with_normal(step, zero + (1,))
    opposite = facet_with_normal(step, neg(nu) + (0,))
    return blow_up(step, BlowUpSpec.of((bottom, opposite)))


def extension_vertex_census(q: AdmissibleQuadruple) -> tuple[RatVec, ...]:
    """Vertices the extension must have, read off the fibre bounds over the
    vertices of Δ and over the kink crossings."""
    p, nu = q.polytope, q.nu
    points: set[RatVec] = set()
    crossings = [point for _, _, point in kink_crossings(q)]
    for v in p.vertices:
        t = dot(v, nu)
        if q.k == 0:
            points.add(v + (Fraction(-1),))
            points.add(v + (1 - q.s * t,))
            continue
        points.add(v + (min(Fraction(1), 1 + t),))
        points.add(v + ((max(Fraction(-1), -1 + t) if q.k == 2 else Fraction(-1)),))
    for x in crossings:
        points.add(x + (Fraction(1),))
        if q.k == 2:
            points.add(x + (Fraction(-1),))
    return tuple(sorted(points))


def project(p_prime: Polytope) -> Polytope:
    """Drop the last coordinate."""
    return from_vertices(v[:-1] for v in p_prime.vertices)


def fiber(p_prime: Polytope, w: Sequence) -> tuple[Fraction, Fraction]:
    """The interval {y : (w, y) in p_prime}."""
    point = rat_vec(w)
    if len(point) != p_prime.dim - 1:
        raise DimensionMismatch(f"point of length {len(point)} under dimension {p_prime.dim}")
    lower: Fraction | None = None
    upper: Fraction | None = None
    for h in p_prime.halfspaces:
        ny = h.normal[-1]
        rest = h.c - dot(h.normal[:-1], point)
        if ny == 0:
            if rest > 0:
                raise OutOfDomain(f"{[str(x) for x in point]} is outside the projection")
        elif ny > 0:
            bound = rest / ny
            lower = bound if lower is None else max(lower, bound)
        else:
            bound = rest / ny
            upper = bound if upper is None else min(upper, bound)
    if lower is None or upper is None:
        raise AssertionViolation("fibre is unbounded")
    if lower > upper:
        raise OutOfDomain(f"{[str(x) for x in point]} is outside the projection")
    return lower, upper


def height(p_prime: Polytope, w: Sequence) -> Fraction:
    lower, upper = fiber(p_prime, w)
    return upper - lower


def _halves(p: Polytope, nu: tuple[int, ...]) -> list[Polytope]:
    return [
        from_halfspaces(p.halfspaces + (HalfSpace(sign, Fraction(0)),))
        for sign in (nu, neg(nu))
    ]


def verify_extension(p_prime: Polytope, q: AdmissibleQuadruple) -> Verdict:
    """Reflexive Delzant, projects onto Δ, and height equals DH.

    Both functions are affine on each side of <w, nu> = 0, so agreement on
    the vertices of the two halves is agreement everywhere.
    """
    base = q.polytope
    if p_prime.dim != base.dim + 1:
        return Verdict.fail("dimension", f"extension has dim {p_prime.dim}, expected {base.dim + 1}")
    if not is_reflexive(p_prime):
        return Verdict.fail("reflexive")
    if not is_delzant(p_prime):
        return Verdict.fail("delzant")
    if project(p_prime) != base:
        return Verdict.fail("projection", "projection differs from the base polytope")
    f = dh_function(q)
    for half in _halves(base, q.nu):
        for v in half.vertices:
            h = height(p_prime, v)
            expected = f.value(v)
            if h != expected:
                return Verdict.fail(
                    "height", f"at ({', '.join(map(str, v))}): {h} != {expected}"
                )
    return Verdict.passed()
