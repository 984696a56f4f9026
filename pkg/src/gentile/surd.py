"""Sums of square roots with rational coefficients.

Used by the enumerator, where rotating a tile onto an edge of a different
side type produces coordinates outside any single quadratic field.  Zero
tests are exact because square roots of distinct squarefree integers are
linearly independent over Q; signs of nonzero values are settled by
refining rational enclosures until they exclude zero.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .exact import ExactError, QuadScalar, squarefree_split


def _sqrt_bounds(m: int, bits: int) -> tuple[Fraction, Fraction]:
    scale = 1 << bits
    lo = math.isqrt(m * scale * scale)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


class Surd:
    """``sum(c * sqrt(m))`` over squarefree ``m``; ``m == 1`` is the rational part."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def of(cls, x) -> Surd:
        if isinstance(x, Surd):
            return x
        if isinstance(x, (int, Fraction)):
            return cls({1: Fraction(x)})
        if isinstance(x, QuadScalar):
            out = cls({1: x.a})
            if x.b:
                out = out + cls.sqrt(x.d) * x.b
            return out
        raise TypeError(f"cannot convert {type(x).__name__} to Surd")

    @classmethod
    def sqrt(cls, r) -> Surd:
        """Square root of a nonnegative rational."""
        r = Fraction(r)
        if r < 0:
            raise ExactError("square root of a negative number")
        k, m = squarefree_split(r.numerator * r.denominator)
        return cls({m: Fraction(k, r.denominator)})

    def is_rational(self) -> bool:
        return all(m == 1 for m in self.terms)

    def rational(self) -> Fraction:
        return self.terms.get(1, Fraction(0))

    def to_quad(self) -> QuadScalar:
        irr = [m for m in self.terms if m != 1]
        if len(irr) > 1:
            raise ExactError(f"value {self} does not lie in a single quadratic field")
        if not irr:
            return QuadScalar(self.rational())
        return QuadScalar(self.rational(), self.terms[irr[0]], irr[0])

    # arithmetic

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Surd(out)

    __radd__ = __add__

    def __neg__(self):
        return Surd({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Surd({m: c * other for m, c in self.terms.items()})
        other = _lift(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                g = math.gcd(m1, m2)
                m = (m1 // g) * (m2 // g)
                out[m] = out.get(m, 0) + c1 * c2 * g
        return Surd(out)

    __rmul__ = __mul__

    def _conjugate(self, p: int) -> Surd:
        return Surd({m: (-c if m % p == 0 else c) for m, c in self.terms.items()})

    def inverse(self) -> Surd:
        if not self.terms:
            raise ZeroDivisionError("division by zero")
        num = Surd({1: Fraction(1)})
        y = self
        while not y.is_rational():
            m = next(m for m in y.terms if m != 1)
            p = _smallest_prime(m)
            c = y._conjugate(p)
            num = num * c
            y = y * c
        return num * (1 / y.rational())

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _lift(other) * self.inverse()

    # order

    def sign(self) -> int:
        if not self.terms:
            return 0
        if self.is_rational():
            c = self.terms[1]
            return (c > 0) - (c < 0)
        bits = 16
        while True:
            lo = hi = Fraction(0)
            for m, c in self.terms.items():
                a, b = _sqrt_bounds(m, bits) if m != 1 else (Fraction(1), Fraction(1))
                if c > 0:
                    lo += c * a
                    hi += c * b
                else:
                    lo += c * b
                    hi += c * a
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational())
            else:
                self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(sum(float(c) * math.sqrt(m) for m, c in self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            parts.append(str(c) if m == 1 else f"{c}*sqrt({m})")
        return " + ".join(parts)


def _lift(x):
    if isinstance(x, Surd):
        return x
    if isinstance(x, (int, Fraction, QuadScalar)):
        return Surd.of(x)
    return NotImplemented


def _smallest_prime(m: int) -> int:
    p = 2
    while p * p <= m:
        if m % p == 0:
            return p
        p += 1
    return m
