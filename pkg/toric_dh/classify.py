"""Admissible quadruples, abstract Duistermaat-Heckman functions, and the
classification of monotone tall complexity-one spaces over a reflexive
Delzant polytope.

A quadruple (polytope, facet, s, k) is admissible when it passes conditions
(i)-(v) of ``check_admissible``. Its DH function is

    DH(w) = 2 - s<w, nu> - k max(0, <w, nu>) = min(2 - s<w, nu>, 2 - (s + k)<w, nu>)

with nu the inward normal of the chosen facet, so it is stored as the set of
slopes {s, s + k}. Classification groups quadruples by that function.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import AssertionViolation, NotReflexiveDelzant, OutOfDomain
from .exact import LatticeVec, RatVec, add, dot, neg, rat_vec
from .lattice import is_delzant, is_reflexive, vertex_weights
from .polytope import HalfSpace, Polytope, contains, facet_of, facet_with_normal, from_halfspaces

logger = logging.getLogger(__name__)

ADMISSIBLE_PAIRS: tuple[tuple[int, int], ...] = ((0, 0), (-1, 0), (-1, 1), (-1, 2))
GENUS = 0
PAINTING = "trivial"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: ``failed`` names the first condition that did not hold."""

    ok: bool
    failed: Optional[str] = None
    detail: str = ""

    @classmethod
    def passed(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def fail(cls, tag: str, detail: str = "") -> "Verdict":
        return cls(False, tag, detail)

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class AdmissibleQuadruple:
    polytope: Polytope = field(repr=False)
    facet: int
    s: int
    k: int

    @property
    def nu(self) -> LatticeVec:
        return self.polytope.halfspaces[self.facet].normal


@dataclass(frozen=True)
class DHFunction:
    """``w -> min over c in pieces of 2 - c<w, nu>``.

    Canonical: pieces sorted and deduplicated, nu the lexicographically smaller
    of the two signs (pieces negated along with it), and nu dropped when the
    only piece is the constant 0. Two instances on the same domain are equal
    exactly when they define the same function.
    """

    nu: Optional[LatticeVec]
    pieces: tuple[int, ...]
    domain: Polytope = field(compare=False, repr=False)

    @classmethod
    def canonical(cls, nu: LatticeVec, pieces: Sequence[int], domain: Polytope) -> "DHFunction":
        slopes = sorted(set(pieces))
        if slopes == [0]:
            return cls(None, (0,), domain)
        flipped = neg(nu)
        if flipped < nu:
            nu, slopes = flipped, sorted(-c for c in slopes)
        return cls(nu, tuple(slopes), domain)

    def value(self, w: Sequence) -> Fraction:
        if self.nu is None:
            return Fraction(2)
        t = dot(w, self.nu)
        return min(2 - c * t for c in self.pieces)


@dataclass(frozen=True)
class DHClass:
    dh: DHFunction
    quadruples: tuple[AdmissibleQuadruple, ...]
    m: int
    extension: Polytope = field(repr=False)
    genus: int = GENUS
    painting: str = PAINTING

    @property
    def s(self) -> int:
        return self.quadruples[0].s

    @property
    def k(self) -> int:
        return self.quadruples[0].k

    @property
    def isolated_fixed_points(self) -> int:
        return self.k * self.m

    @property
    def dh_min(self) -> int:
        return 2 + self.s

    @property
    def collision(self) -> bool:
        """More than one quadruple realizes this DH function."""
        return len(self.quadruples) > 1


@dataclass(frozen=True)
class ClassificationReport:
    polytope: Polytope
    classes: tuple[DHClass, ...]


def check_admissible(p: Polytope, facet: int, s: int, k: int) -> Verdict:
    halfspace, _ = facet_of(p, facet)
    if not (is_reflexive(p) and is_delzant(p)):
        return Verdict.fail("i", "polytope is not reflexive Delzant")
    nu = halfspace.normal
    if halfspace.c != -1 or halfspace != HalfSpace.canonical(nu, halfspace.c):
        return Verdict.fail("ii", f"facet {facet} is not at level -1 with a primitive normal")
    if (s, k) not in ADMISSIBLE_PAIRS:
        return Verdict.fail("iii", f"(s, k) = ({s}, {k}) is not one of {list(ADMISSIBLE_PAIRS)}")
    if k != 0:
        on_kink = [v for v in p.vertices if dot(v, nu) == 0]
        if on_kink:
            return Verdict.fail("iv", f"{len(on_kink)} vertices lie on <w, nu> = 0 but k = {k}")
    if k == 2:
        opposite = facet_with_normal(p, neg(nu))
        if opposite is None or p.halfspaces[opposite].c != -1:
            return Verdict.fail("v", "no facet with normal -nu at level -1")
    return Verdict.passed()


def _require_reflexive_delzant(p: Polytope) -> None:
    if not (is_reflexive(p) and is_delzant(p)):
        raise NotReflexiveDelzant("polytope is not reflexive Delzant")


def enumerate_admissible(p: Polytope) -> list[AdmissibleQuadruple]:
    """All admissible (facet, s, k), ordered by facet then by ADMISSIBLE_PAIRS."""
    _require_reflexive_delzant(p)
    out = []
    for facet in range(len(p.halfspaces)):
        for s, k in ADMISSIBLE_PAIRS:
            if check_admissible(p, facet, s, k):
                out.append(AdmissibleQuadruple(p, facet, s, k))
    logger.debug("%d admissible quadruples over %d facets", len(out), len(p.halfspaces))
    return out


def dh_function(q: AdmissibleQuadruple) -> DHFunction:
    return DHFunction.canonical(q.nu, (q.s, q.s + q.k), q.polytope)


def dh_eval(f: DHFunction, w: Sequence) -> Fraction:
    point = rat_vec(w)
    if not contains(f.domain, point):
        raise OutOfDomain(f"{[str(x) for x in point]} is outside the polytope")
    return f.value(point)


def dh_polytope(q: AdmissibleQuadruple) -> Polytope:
    """{(w, t) : w in the polytope, 0 <= t <= DH(w)} in one dimension higher."""
    p = q.polytope
    f = dh_function(q)
    zero = (0,) * p.dim
    hs = [h.lift() for h in p.halfspaces]
    hs.append(HalfSpace(zero + (1,), Fraction(0)))
    for c in f.pieces:
        # t <= 2 - c<w, nu>  <=>  <(w, t), (-c nu, -1)> >= -2
        slope = zero if f.nu is None else tuple(-c * x for x in f.nu)
        hs.append(HalfSpace(slope + (-1,), Fraction(-2)))
    return from_halfspaces(hs)


def kink_crossings(q: AdmissibleQuadruple) -> list[tuple[RatVec, LatticeVec, RatVec]]:
    """Where the edges of the polytope cross <w, nu> = 0, for k > 0.

    Each crossing is v + alpha_v for a vertex v of the minimal facet and the
    weight alpha_v leaving the facet; raises AssertionViolation otherwise.
    """
    if q.k == 0:
        return []
    p, nu = q.polytope, q.nu
    _, members = facet_of(p, q.facet)
    out = []
    for e in p.edge_list:
        a, b = dot(e.vertex, nu), dot(e.end, nu)
        if a == 0 or b == 0:
            raise AssertionViolation("vertex on the kink hyperplane with k > 0")
        if (a < 0) == (b < 0):
            continue
        low, alpha = (e.vertex, e.direction) if a < 0 else (e.end, neg(e.direction))
        if p.vertices.index(low) not in members:
            raise AssertionViolation("crossing edge does not start on the minimal facet")
        if alpha not in vertex_weights(p, low).weights:
            raise AssertionViolation("crossing edge direction is not a weight")
        point = add(low, alpha)
        if dot(point, nu) != 0:
            raise AssertionViolation("crossing is not at v + alpha_v")
        out.append((low, alpha, point))
    return sorted(out)


def strip_contains(q: AdmissibleQuadruple) -> bool:
    """The polytope lies in {-1 <= <w, nu> <= 1}."""
    return all(-1 <= dot(v, q.nu) <= 1 for v in q.polytope.vertices)


def classify(p: Polytope) -> ClassificationReport:
    """One class per distinct DH function over the admissible quadruples."""
    from .extension import build_extension

    quadruples = enumerate_admissible(p)
    groups: dict[DHFunction, list[AdmissibleQuadruple]] = {}
    for q in quadruples:
        groups.setdefault(dh_function(q), []).append(q)
    classes = []
    for dh, members in groups.items():
        first = members[0]
        m = len(facet_of(p, first.facet)[1])
        classes.append(DHClass(dh, tuple(members), m, build_extension(first)))
    logger.info("%d quadruples -> %d DH classes", len(quadruples), len(classes))
    return ClassificationReport(p, tuple(classes))
