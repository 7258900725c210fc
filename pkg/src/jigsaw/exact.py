"""Exact projective arithmetic over the rationals.

Every matrix in the package is a nonsingular 2x2 integer matrix considered up
to scale, i.e. an element of PGL(2, Q) with positive determinant.  Matrices
act on Q union {infinity} by fractional linear maps.  All arithmetic is exact:
arbitrary-precision integers and fractions.Fraction, no floating point.

Normal form: entries are coprime as a 4-tuple and the first nonzero entry in
the order (a, b, c, d) is positive, so projective equality is plain tuple
comparison.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from .errors import (
    IdentityMatrix,
    NegativeDeterminant,
    NonPositiveHeight,
    SingularMatrix,
)


class Infinity:
    """The distinguished boundary point at infinity.  Compares equal only to itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        # keep the singleton property across pickling
        return (Infinity, ())


INF = Infinity()

ExtendedRational = Union[Fraction, Infinity]


def is_infinite(x: ExtendedRational) -> bool:
    return isinstance(x, Infinity)


def _normalize_entries(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    det = a * d - b * c
    if det == 0:
        raise SingularMatrix(f"matrix [[{a},{b}],[{c},{d}]] is singular")
    if det < 0:
        raise NegativeDeterminant(
            f"matrix [[{a},{b}],[{c},{d}]] has negative determinant {det}"
        )
    g = gcd(gcd(abs(a), abs(b)), gcd(abs(c), abs(d)))
    a, b, c, d = a // g, b // g, c // g, d // g
    for entry in (a, b, c, d):
        if entry != 0:
            if entry < 0:
                a, b, c, d = -a, -b, -c, -d
            break
    return a, b, c, d


class ProjectiveMatrix:
    """A nonsingular integer 2x2 matrix up to scalars, det > 0, in normal form."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int, d: int):
        a, b, c, d = _normalize_entries(int(a), int(b), int(c), int(d))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("ProjectiveMatrix is immutable")

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace_squared(self) -> int:
        return (self.a + self.d) ** 2

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectiveMatrix) and self.entries() == other.entries()

    def __hash__(self) -> int:
        return hash(self.entries())

    def __mul__(self, other: "ProjectiveMatrix") -> "ProjectiveMatrix":
        return compose(self, other)

    def __repr__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = ProjectiveMatrix(1, 0, 0, 1)


def normalize(a: int, b: int, c: int, d: int) -> ProjectiveMatrix:
    """Reduce raw integer entries to the canonical projective representative."""
    return ProjectiveMatrix(a, b, c, d)


def compose(m1: ProjectiveMatrix, m2: ProjectiveMatrix) -> ProjectiveMatrix:
    """Matrix product; the action equals composition (m1 applied after m2)."""
    a1, b1, c1, d1 = m1.entries()
    a2, b2, c2, d2 = m2.entries()
    return ProjectiveMatrix(
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
    )


def inverse(m: ProjectiveMatrix) -> ProjectiveMatrix:
    """Projective inverse (the adjugate; determinants are scalars here)."""
    return ProjectiveMatrix(m.d, -m.b, -m.c, m.a)


def mobius_apply(m: ProjectiveMatrix, x: ExtendedRational) -> ExtendedRational:
    """Apply z -> (az + b)/(cz + d) exactly, with the usual conventions at poles."""
    a, b, c, d = m.entries()
    if is_infinite(x):
        if c == 0:
            return INF
        return Fraction(a, c)
    num = a * x.numerator + b * x.denominator
    den = c * x.numerator + d * x.denominator
    if den == 0:
        return INF
    return Fraction(num, den)


def apply_to_point(
    m: ProjectiveMatrix, x: Fraction, y_squared: Fraction
) -> tuple[Fraction, Fraction]:
    """Image of the upper-half-plane point (x, y) under m, carried as (x, y^2).

    Works entirely in rationals: y itself may be irrational but y^2 is rational
    and transforms rationally.
    """
    a, b, c, d = m.entries()
    den = (c * x + d) ** 2 + c * c * y_squared
    new_x = ((a * x + b) * (c * x + d) + a * c * y_squared) / den
    new_y2 = Fraction(m.det**2) * y_squared / (den * den)
    return new_x, new_y2


class IsometryClass(enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    IDENTITY = "identity"


def classify(m: ProjectiveMatrix) -> IsometryClass:
    """Scale-invariant isometry type from the sign of trace^2 - 4 det."""
    if m.det < 0:
        raise NegativeDeterminant("orientation-reversing elements are unsupported")
    if m.is_identity():
        return IsometryClass.IDENTITY
    disc = m.trace_squared - 4 * m.det
    if disc > 0:
        return IsometryClass.HYPERBOLIC
    if disc == 0:
        return IsometryClass.PARABOLIC
    return IsometryClass.ELLIPTIC


@dataclass(frozen=True)
class FixedPointResult:
    """Boundary fixed points of a matrix.

    kind is one of "two_rational", "one_rational", "irrational_pair",
    "none_real".  For the rational kinds, points holds the fixed points in
    increasing order with infinity last.  For "irrational_pair", discriminant
    is the positive non-square integer trace^2 - 4 det of the normal form.
    """

    kind: str
    points: tuple[ExtendedRational, ...] = ()
    discriminant: int | None = None


def fixed_points(m: ProjectiveMatrix) -> FixedPointResult:
    """Solve c z^2 + (d - a) z - b = 0 over Q; infinity is fixed iff c = 0."""
    if m.is_identity():
        raise IdentityMatrix("every point is fixed by the identity")
    a, b, c, d = m.entries()
    disc = m.trace_squared - 4 * m.det
    if c == 0:
        if a == d:
            return FixedPointResult("one_rational", (INF,))
        return FixedPointResult("two_rational", (Fraction(b, d - a), INF))
    if disc < 0:
        return FixedPointResult("none_real")
    if disc == 0:
        return FixedPointResult("one_rational", (Fraction(a - d, 2 * c),))
    root = isqrt(disc)
    if root * root != disc:
        return FixedPointResult("irrational_pair", discriminant=disc)
    p = Fraction(a - d - root, 2 * c)
    q = Fraction(a - d + root, 2 * c)
    if p > q:
        p, q = q, p
    return FixedPointResult("two_rational", (p, q))


def denominator_height(x: ExtendedRational) -> int:
    """Height of p/q in lowest terms is q; infinity has height 0."""
    if is_infinite(x):
        return 0
    return x.denominator


def rotation_about(x: Fraction, y_squared: Fraction) -> ProjectiveMatrix:
    """Integer representative of the half-turn about the point (x, y), y^2 given.

    The rational matrix is (x, -(x^2 + y^2); 1, -x); denominators are cleared
    before normalization.  Trace 0, determinant a positive square times y^2.
    """
    x = Fraction(x)
    y_squared = Fraction(y_squared)
    if y_squared <= 0:
        raise NonPositiveHeight(f"rotation center must satisfy y^2 > 0, got {y_squared}")
    top = -(x * x + y_squared)
    scale = x.denominator * top.denominator // gcd(x.denominator, top.denominator)
    return ProjectiveMatrix(
        int(x * scale), int(top * scale), scale, int(-x * scale)
    )
