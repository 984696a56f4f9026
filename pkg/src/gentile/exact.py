"""Exact arithmetic over Q and Q(sqrt d), points and plane similarities.

Every coordinate in the package is a :class:`QuadScalar`, i.e. a number
``a + b*sqrt(d)`` with rational ``a``, ``b`` and a radicand ``d`` shared by
the whole scene.  Signs and equality are decided with rational arithmetic
only, so no geometric predicate ever touches floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

Rational = Fraction
Number = Union[int, Fraction, "QuadScalar"]


class ExactError(ValueError):
    pass


class RadicandMismatch(ExactError):
    pass


class DivisionByZero(ExactError, ZeroDivisionError):
    pass


class DegenerateSource(ExactError):
    pass


class NotASimilarity(ExactError):
    pass


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Return the rational square root of ``x`` or None if there is none."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def squarefree_split(n: int) -> tuple[int, int]:
    """Write a positive integer as ``k*k*m`` with ``m`` squarefree."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    k, m = 1, 1
    f = 2
    while f * f <= n:
        while n % (f * f) == 0:
            n //= f * f
            k *= f
        if n % f == 0:
            n //= f
            m *= f
        f += 1
    return k, m * n


def parse_rational(text: str | int | Fraction) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(text.strip())


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class QuadScalar:
    """The real number ``a + b*sqrt(d)``.

    If ``d`` is the square of a rational the irrational part is folded into
    ``a`` at construction, so the representation is unique and structural
    equality is numeric equality.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0, d: int | Fraction = 0):
        a = Fraction(a)
        b = Fraction(b)
        d = Fraction(d)
        if d < 0:
            raise ExactError("radicand must be nonnegative")
        if b:
            root = rational_sqrt(d)
            if root is not None:
                a += b * root
                b = Fraction(0)
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: Fraction) -> QuadScalar:
        # Skips the collapse test; callers guarantee the invariant.
        obj = object.__new__(cls)
        obj.a = a
        obj.b = b
        obj.d = d
        return obj

    @staticmethod
    def coerce(x: Number, d: Fraction = Fraction(0)) -> QuadScalar:
        if isinstance(x, QuadScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadScalar._raw(Fraction(x), Fraction(0), Fraction(d))
        return NotImplemented

    def is_rational(self) -> bool:
        return not self.b

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadScalar._raw(Fraction(other), Fraction(0), self.d), self.d
        if not isinstance(other, QuadScalar):
            return None, None
        if self.b and other.b and self.d != other.d:
            raise RadicandMismatch(f"radicands {self.d} and {other.d} differ")
        d = self.d if self.b else other.d
        return other, d

    def __add__(self, other):
        o, d = self._pair(other)
        if o is None:
            return NotImplemented
        return QuadScalar._raw(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __sub__(self, other):
        o, d = self._pair(other)
        if o is None:
            return NotImplemented
        return QuadScalar._raw(self.a - o.a, self.b - o.b, d)

    def __rsub__(self, other):
        o, d = self._pair(other)
        if o is None:
            return NotImplemented
        return QuadScalar._raw(o.a - self.a, o.b - self.b, d)

    def __neg__(self):
        return QuadScalar._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o, d = self._pair(other)
        if o is None:
            return NotImplemented
        if not self.b:
            return QuadScalar._raw(self.a * o.a, self.a * o.b, d)
        if not o.b:
            return QuadScalar._raw(self.a * o.a, self.b * o.a, d)
        return QuadScalar._raw(
            self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a^2 - b^2 d``; zero only for zero."""
        return self.a * self.a - self.b * self.b * self.d

    def conjugate(self) -> QuadScalar:
        return QuadScalar._raw(self.a, -self.b, self.d)

    def inverse(self) -> QuadScalar:
        if not self.b:
            if not self.a:
                raise DivisionByZero("division by zero")
            return QuadScalar._raw(1 / self.a, Fraction(0), self.d)
        n = self.norm()
        return QuadScalar._raw(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o, d = self._pair(other)
        if o is None:
            return NotImplemented
        if not o.b:
            if not o.a:
                raise DivisionByZero("division by zero")
            return QuadScalar._raw(self.a / o.a, self.b / o.a, d)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o, _ = self._pair(other)
        if o is None:
            return NotImplemented
        return o / self

    def sign(self) -> int:
        return sign_of(self)

    def __abs__(self):
        return -self if sign_of(self) < 0 else self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        if isinstance(other, QuadScalar):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        return sign_of(self - other) < 0

    def __le__(self, other):
        return sign_of(self - other) <= 0

    def __gt__(self, other):
        return sign_of(self - other) > 0

    def __ge__(self, other):
        return sign_of(self - other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(float(self.d))

    def __repr__(self):
        if not self.b:
            return f"QuadScalar({format_rational(self.a)})"
        return (
            f"QuadScalar({format_rational(self.a)}, {format_rational(self.b)}, "
            f"d={format_rational(self.d)})"
        )

    def __str__(self):
        if not self.b:
            return format_rational(self.a)
        return f"{format_rational(self.a)}{'+' if self.b > 0 else '-'}{format_rational(abs(self.b))}√{format_rational(self.d)}"


def Q(a: int | Fraction | str = 0, b: int | Fraction | str = 0, d: int | Fraction | str = 0) -> QuadScalar:
    """Shorthand constructor accepting ``"num/den"`` strings."""
    return QuadScalar(parse_rational(a), parse_rational(b), parse_rational(d))


def sign_of(s: QuadScalar | int | Fraction) -> int:
    """Sign of ``a + b*sqrt(d)`` decided exactly."""
    if isinstance(s, (int, Fraction)):
        return (s > 0) - (s < 0)
    if not isinstance(s, QuadScalar):
        # other exact scalar types carry their own sign procedure
        return s.sign()
    a, b = s.a, s.b
    if not b:
        return (a > 0) - (a < 0)
    if not a:
        return 1 if b > 0 else -1
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    # opposite signs: the larger magnitude wins
    lhs = a * a
    rhs = b * b * s.d
    if a > 0:
        return 1 if lhs > rhs else -1
    return -1 if lhs > rhs else 1


def field_arithmetic(x: QuadScalar, y: QuadScalar, op: str) -> QuadScalar:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


class Point(NamedTuple):
    x: QuadScalar
    y: QuadScalar

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, k) -> Point:
        return Point(self.x * k, self.y * k)

    def __repr__(self):
        return f"({self.x}, {self.y})"


def P(x, y, d: int | Fraction = 0) -> Point:
    """Build a point from ints, Fractions, strings or QuadScalars."""

    def conv(v):
        if isinstance(v, QuadScalar):
            return v
        if isinstance(v, tuple):
            return QuadScalar(parse_rational(v[0]), parse_rational(v[1]), d)
        return QuadScalar(parse_rational(v), 0, d)

    return Point(conv(x), conv(y))


def lerp(p: Point, q: Point, t) -> Point:
    return Point(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t)


def cross(u: Point, v: Point) -> QuadScalar:
    return u.x * v.y - u.y * v.x


def dot(u: Point, v: Point) -> QuadScalar:
    return u.x * v.x + u.y * v.y


def norm2(u: Point) -> QuadScalar:
    return u.x * u.x + u.y * u.y


def triangle_area2(p1: Point, p2: Point, p3: Point) -> QuadScalar:
    """Twice the signed area of the triangle, positive when counterclockwise."""
    return (p2.x - p1.x) * (p3.y - p1.y) - (p2.y - p1.y) * (p3.x - p1.x)


@dataclass(frozen=True)
class AffineSimilarity:
    """``p -> M p + t`` with ``M`` a scaled orthogonal matrix."""

    m00: QuadScalar
    m01: QuadScalar
    m10: QuadScalar
    m11: QuadScalar
    tx: QuadScalar
    ty: QuadScalar

    @classmethod
    def identity(cls, d: int | Fraction = 0) -> AffineSimilarity:
        one, zero = QuadScalar(1, 0, d), QuadScalar(0, 0, d)
        return cls(one, zero, zero, one, zero, zero)

    def __call__(self, p: Point) -> Point:
        return Point(
            self.m00 * p.x + self.m01 * p.y + self.tx,
            self.m10 * p.x + self.m11 * p.y + self.ty,
        )

    def det(self) -> QuadScalar:
        return self.m00 * self.m11 - self.m01 * self.m10

    def is_direct(self) -> bool:
        return sign_of(self.det()) > 0

    def is_similarity(self) -> bool:
        return (
            self.m00 * self.m00 + self.m10 * self.m10 == self.m01 * self.m01 + self.m11 * self.m11
            and not (self.m00 * self.m01 + self.m10 * self.m11)
            and bool(self.det())
        )

    def compose(self, inner: AffineSimilarity) -> AffineSimilarity:
        """``self o inner``: apply ``inner`` first."""
        a = self
        b = inner
        return AffineSimilarity(
            a.m00 * b.m00 + a.m01 * b.m10,
            a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10,
            a.m10 * b.m01 + a.m11 * b.m11,
            a.m00 * b.tx + a.m01 * b.ty + a.tx,
            a.m10 * b.tx + a.m11 * b.ty + a.ty,
        )

    def entries(self) -> tuple[QuadScalar, ...]:
        return (self.m00, self.m01, self.m10, self.m11, self.tx, self.ty)


def affine_from_triangles(src, dst) -> AffineSimilarity:
    """The unique affine map sending ``src[i]`` to ``dst[i]`` (not checked)."""
    s0, s1, s2 = src
    d0, d1, d2 = dst
    ux, uy = s1.x - s0.x, s1.y - s0.y
    vx, vy = s2.x - s0.x, s2.y - s0.y
    det = ux * vy - uy * vx
    if not det:
        raise DegenerateSource("source triangle has zero area")
    px, py = d1.x - d0.x, d1.y - d0.y
    qx, qy = d2.x - d0.x, d2.y - d0.y
    inv = det.inverse()
    # M = D S^-1 with S^-1 = [[vy, -vx], [-uy, ux]] / det
    m00 = (px * vy - qx * uy) * inv
    m01 = (qx * ux - px * vx) * inv
    m10 = (py * vy - qy * uy) * inv
    m11 = (qy * ux - py * vx) * inv
    tx = d0.x - (m00 * s0.x + m01 * s0.y)
    ty = d0.y - (m10 * s0.x + m11 * s0.y)
    return AffineSimilarity(m00, m01, m10, m11, tx, ty)


def similarity_from_triangles(src, dst) -> AffineSimilarity:
    m = affine_from_triangles(src, dst)
    if not m.is_similarity():
        raise NotASimilarity("the affine map taking src to dst is not a similarity")
    return m


def scene_radicand(values) -> Fraction:
    """The single radicand used by the irrational values in ``values``."""
    d = None
    for v in values:
        if isinstance(v, QuadScalar) and v.b:
            if d is None:
                d = v.d
            elif d != v.d:
                raise RadicandMismatch(f"radicands {d} and {v.d} differ")
    return d if d is not None else Fraction(0)
