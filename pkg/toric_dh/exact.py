"""Exact scalars, lattice vectors, and the small linear algebra everything else uses.

Scalars are ``fractions.Fraction`` (always reduced, denominator > 0); lattice
vectors are tuples of ints and points of t* are tuples of Fractions. Both are
immutable and hashable, so every function here is pure and thread-safe.
"""

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix, ZeroVector

Rat = Fraction
LatticeVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]
Matrix = Sequence[Sequence[int | Fraction]]

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(text: str | int) -> Fraction:
    """Parse ``"p/q"`` or a bare integer string. Decimals are rejected."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational: {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise ValueError(f"zero denominator: {text!r}") from None


def format_rational(value: Fraction | int) -> str:
    return str(Fraction(value))


def rat_vec(coords: Iterable) -> RatVec:
    return tuple(Fraction(c) for c in coords)


def is_integral_vec(v: Sequence[Fraction | int]) -> bool:
    return all(Fraction(c).denominator == 1 for c in v)


def to_lattice(v: Sequence[Fraction | int]) -> LatticeVec:
    if not is_integral_vec(v):
        raise ValueError(f"{v} is not a lattice vector")
    return tuple(int(Fraction(c)) for c in v)


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatch(f"pairing of lengths {len(a)} and {len(b)}")
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence, b: Sequence) -> RatVec:
    return tuple(Fraction(x) + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> RatVec:
    return tuple(Fraction(x) - y for x, y in zip(a, b))


def scale(v: Sequence, s: Fraction | int) -> RatVec:
    return tuple(Fraction(x) * s for x in v)


def neg(v: LatticeVec) -> LatticeVec:
    return tuple(-x for x in v)


def primitive(v: Sequence[int]) -> LatticeVec:
    """Divide an integer vector by the gcd of its coordinates."""
    g = math.gcd(*v)
    if g == 0:
        raise ZeroVector("primitive() of the zero vector")
    return tuple(x // g for x in v)


def integral_direction(v: Sequence[Fraction | int]) -> LatticeVec:
    """Primitive lattice vector pointing along a nonzero rational vector."""
    fracs = [Fraction(x) for x in v]
    denom = math.lcm(*(f.denominator for f in fracs))
    return primitive([int(f * denom) for f in fracs])


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def det(rows: Matrix) -> Fraction:
    """Bareiss fraction-free elimination; exact on ints and Fractions."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in r] for r in rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular_basis(vs: Sequence[Sequence[int]]) -> bool:
    dim = len(vs[0]) if vs else 0
    if len(vs) != dim or any(len(v) != dim for v in vs):
        raise DimensionMismatch(f"{len(vs)} vectors in dimension {dim}")
    return abs(det(vs)) == 1


def _row_reduce(rows: Matrix) -> list[list[Fraction]]:
    m = [[Fraction(x) for x in r] for r in rows]
    width = len(m[0]) if m else 0
    pivot_row = 0
    for col in range(width):
        pivot = next((i for i in range(pivot_row, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[pivot_row], m[pivot] = m[pivot], m[pivot_row]
        lead = m[pivot_row][col]
        m[pivot_row] = [x / lead for x in m[pivot_row]]
        for i in range(len(m)):
            if i != pivot_row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    return m


def rank(rows: Matrix) -> int:
    if not rows:
        return 0
    return sum(1 for r in _row_reduce(rows) if any(x != 0 for x in r))


def solve_square(a: Matrix, b: Sequence) -> RatVec:
    """Unique exact solution of a·x = b for square nonsingular a."""
    n = len(a)
    if len(b) != n or any(len(r) != n for r in a):
        raise DimensionMismatch("solve_square needs a square system")
    reduced = _row_reduce([list(r) + [b[i]] for i, r in enumerate(a)])
    for i in range(n):
        if reduced[i][i] != 1:
            raise SingularMatrix("matrix is singular")
    return tuple(reduced[i][n] for i in range(n))


def mat_vec(a: Matrix, x: Sequence) -> RatVec:
    return tuple(dot(row, x) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> tuple[tuple, ...]:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def normal_vector(rows: Matrix) -> RatVec:
    """Vector orthogonal to d-1 vectors in dimension d (cofactor expansion).

    Zero exactly when the rows are linearly dependent.
    """
    d = len(rows) + 1
    if any(len(r) != d for r in rows):
        raise DimensionMismatch("normal_vector needs d-1 rows of length d")
    out = []
    for j in range(d):
        minor = [[r[c] for c in range(d) if c != j] for r in rows]
        cof = det(minor)
        out.append(cof if (j + d - 1) % 2 == 0 else -cof)
    return tuple(out)
