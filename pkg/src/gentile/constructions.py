"""Generators for the reptilings and gentilings used throughout the package.

Every generator returns a :class:`~gentile.tiling.Tiling` whose tiles list
their vertices in the same angle order as the master (tile vertex ``i`` has
the angle of master vertex ``i``).  Correctness is certified by the
validators, not by the generators themselves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    P,
    Point,
    QuadScalar,
    affine_from_triangles,
    dot,
    lerp,
    norm2,
    sign_of,
    squarefree_split,
    triangle_area2,
)
from .tiling import Tiling


class ConstructionError(ValueError):
    pass


class RatioNotRational(ConstructionError):
    pass


class NTooSmall(ConstructionError):
    pass


class InvalidParams(ConstructionError):
    pass


class NotRightTriangle(ConstructionError):
    pass


# --- standard masters ----------------------------------------------------------


def equilateral() -> tuple[Point, Point, Point]:
    return (P(1, (0, 1), 3), P(2, 0), P(0, 0))


def scalene_acute() -> tuple[Point, Point, Point]:
    """An irrational acute scalene triangle (squared sides 16, 5, 13)."""
    return (P(0, 0), P(4, 0), P(1, 2))


def isosceles_acute() -> tuple[Point, Point, Point]:
    return (P(1, 2), P(2, 0), P(0, 0))


def right_isosceles() -> tuple[Point, Point, Point]:
    return (P(0, 0), P(2, 0), P(0, 2))


def right_triangle(leg_ca, leg_cb) -> tuple[Point, Point, Point]:
    """Right angle at C = origin, B on the positive x-axis, A on the y-axis."""
    return (P(0, leg_ca), P(leg_cb, 0), P(0, 0))


def rational_master(p: int, q: int) -> tuple[Point, Point, Point]:
    """Acute triangle with |CB| : |CA| = q : p and cos C = 5/13."""
    return (P(5 * p, 12 * p), P(13 * q, 0), P(0, 0))


# --- trivial tilings ------------------------------------------------------------


def _grid(master, n: int):
    a, b, c = master
    u = (b - a).scale(Fraction(1, n))
    v = (c - a).scale(Fraction(1, n))

    def at(i: int, j: int) -> Point:
        return Point(a.x + u.x * i + v.x * j, a.y + u.y * i + v.y * j)

    return at


def _up(at, i, j, k=1):
    return (at(i, j), at(i + k, j), at(i, j + k))


def _down(at, i, j, k=1):
    return (at(i + k, j + k), at(i, j + k), at(i + k, j))


def trivial_reptiling(master, n: int) -> Tiling:
    if n < 2:
        raise ConstructionError("n must be at least 2")
    master = tuple(master)
    at = _grid(master, n)
    tiles = []
    for i in range(n):
        for j in range(n - i):
            tiles.append(_up(at, i, j))
            if i + j <= n - 2:
                tiles.append(_down(at, i, j))
    return Tiling(master, tiles)


def _subdivide(tri, n: int):
    return list(trivial_reptiling(tri, n).tiles) if n > 1 else [tuple(tri)]


def trivial_gentiling(master, r: int) -> Tiling:
    """Grid-backed r-gentiling for r = 4 or r >= 6.

    Even r = 2n: the n-grid with the (n-1)-block at the first vertex merged.
    Odd r = 2n + 3: the same pattern drawn on the 2n-grid with one of the
    down cells of the strip split into its four grid cells.
    """
    master = tuple(master)
    if r in (2, 3, 5) or r < 2:
        raise ConstructionError(
            f"no trivial {r}-gentiling: no oblique triangle is a 2-, 3- or 5-gentile "
            "(use right_2gentiling for right triangles)"
        )
    if r == 4:
        return trivial_reptiling(master, 2)
    if r % 2 == 0:
        n = r // 2
        at = _grid(master, n)
        tiles = [_up(at, 0, 0, n - 1)]
        tiles += [_up(at, i, n - 1 - i) for i in range(n)]
        tiles += [_down(at, i, n - 2 - i) for i in range(n - 1)]
        return Tiling(master, tiles)
    n = (r - 3) // 2
    at = _grid(master, 2 * n)
    tiles = [_up(at, 0, 0, 2 * n - 2)]
    tiles += [_up(at, 2 * i, 2 * (n - 1 - i), 2) for i in range(n)]
    downs = [_down(at, 2 * i, 2 * (n - 2 - i), 2) for i in range(n - 1)]
    tiles += _subdivide(downs[0], 2) + downs[1:]
    return Tiling(master, tiles)


# --- rhombus flip ---------------------------------------------------------------


def rhombus_flip(master, p: int, q: int, n: int) -> Tiling:
    """Trivial n^2-reptiling with the sub-tiling of a grid rhombus mirrored.

    Needs two sides meeting at a corner V with ``p * |side1| = q * |side2|``;
    the rhombus spans p grid steps along side1 and q along side2 from V.
    """
    master = tuple(master)
    if not (p > q >= 1) or math.gcd(p, q) != 1:
        raise InvalidParams("need coprime p > q >= 1")
    choice = None
    for o in range(3):
        for o1, o2 in (((o + 1) % 3, (o + 2) % 3), ((o + 2) % 3, (o + 1) % 3)):
            s1 = norm2(master[o1] - master[o])
            s2 = norm2(master[o2] - master[o])
            if s1 * (p * p) == s2 * (q * q):
                choice = (o, o1, o2)
                break
        if choice:
            break
    if choice is None:
        raise RatioNotRational(f"no pair of sides in ratio {q}/{p}")
    if n < p + q:
        raise NTooSmall(f"n = {n} < p + q = {p + q}")
    o, o1, o2 = choice
    v = master[o]
    u = (master[o1] - v).scale(Fraction(p, n))
    w = (master[o2] - v).scale(Fraction(q, n))
    corner_u, corner_w = v + u, v + w
    flip = affine_from_triangles((v, corner_u, corner_w), (v, corner_w, corner_u))
    to_rhombus = affine_from_triangles((v, corner_u, corner_w), (P(0, 0), P(1, 0), P(0, 1)))

    def inside(pt: Point) -> bool:
        s = to_rhombus(pt)
        return all(0 <= c <= 1 for c in (s.x, s.y))

    tiles = []
    for tile in trivial_reptiling(master, n).tiles:
        if all(inside(pt) for pt in tile):
            tiles.append(tuple(flip(pt) for pt in tile))
        else:
            tiles.append(tile)
    return Tiling(master, tiles)


# --- corner splitting -------------------------------------------------------------


@dataclass(frozen=True)
class SplitParams:
    """Side ratio p : q : r of the triangle with angles a, 2a, pi - 3a.

    ``q`` is None when q^2 = p^2 + p r is not a perfect square.
    """

    p: int
    q: int | None
    r: int

    def __post_init__(self):
        p, r = self.p, self.r
        if not (0 < p < r < 3 * p):
            raise InvalidParams(f"need 0 < p < r < 3p, got p={p}, r={r}")
        q2 = p * p + p * r
        root = math.isqrt(q2)
        if self.q is not None and self.q * self.q != q2:
            raise InvalidParams(f"q^2 = {self.q * self.q} != p^2 + p r = {q2}")
        if self.q is None and root * root == q2:
            object.__setattr__(self, "q", root)

    @property
    def q2(self) -> int:
        return self.p * self.p + self.p * self.r

    @property
    def radicand(self) -> int:
        # sin of the angles lives in Q(sqrt((p + r)(3p - r)))
        return squarefree_split((self.p + self.r) * (3 * self.p - self.r))[1]

    @property
    def tile_count(self) -> int:
        return (2 * self.p + self.r) ** 2


def corner_split(params: SplitParams, refine: bool = False) -> Tiling:
    """2-splitting gentiling (or reptiling with ``refine``) of the a, 2a, pi-3a triangle.

    Seven scaled copies (4 at scale p, 2 at scale q, 1 at scale r) plus a
    parallelogram of 2p(r-p) unit tiles fill the copy at scale 2p + r.  The
    two q-copies meet at the 2a corner, which is therefore a fan of two.
    """
    p, r = params.p, params.r
    q2 = params.q2
    if refine and params.q is None:
        raise InvalidParams("refine needs integer p, q, r (cos a rational)")
    k, m = squarefree_split((p + r) * (3 * p - r))
    # sqrt((p + r)(3p - r)) = k sqrt(m)
    s = 2 * p + r
    half_root = QuadScalar(0, Fraction(k, 2), m)
    cos2 = Fraction(r - p, 2 * p)
    sin2 = half_root / p

    def proto(x, y) -> Point:
        # Y at the origin, Z on the positive x-axis; mirrored below
        x = QuadScalar.coerce(x, m)
        y = QuadScalar.coerce(y, m)
        return Point(s * p - x, y)

    Y = proto(0, 0)
    Z = proto(s * p, 0)
    X = proto(cos2 * (s * r), sin2 * (s * r))
    M1 = proto(q2, 0)
    M2 = proto(cos2 * q2, sin2 * q2)
    N = proto(Fraction(q2 * r, 2 * p), half_root * r)
    W1 = lerp(Z, X, Fraction(p, s))
    U = lerp(X, Y, Fraction(r, s))
    V = lerp(X, Z, Fraction(r, s))
    Qp = N + (U - M2)

    # (tile, scale) with vertices in (a, 2a, pi-3a) order
    scaled = [
        ((X, U, V), r),
        ((Y, N, M1), params.q),
        ((Y, N, M2), params.q),
        ((W1, M1, Z), p),
        ((M1, W1, N), p),
        ((V, N, W1), p),
        ((U, V, Qp), p),
    ]
    tiles = []
    for tri, scale in scaled:
        tiles += _subdivide(tri, scale) if refine else [tri]
    e1 = (U - M2).scale(Fraction(1, r - p))
    e2 = (N - M2).scale(Fraction(1, p))
    for i in range(r - p):
        for j in range(p):
            o = M2 + e1.scale(i) + e2.scale(j)
            tiles.append((o + e1 + e2, o, o + e1))
            tiles.append((o, o + e1 + e2, o + e2))
    return Tiling((X, Y, Z), tiles)


# --- right triangles and special shapes -------------------------------------------


def _right_corner(master) -> int:
    for i in range(3):
        a = master[i]
        if not dot(master[(i + 1) % 3] - a, master[(i + 2) % 3] - a):
            return i
    raise NotRightTriangle("master has no right angle")


def altitude_foot(master) -> Point:
    k = _right_corner(master)
    c = master[k]
    a, b = master[(k + 1) % 3], master[(k + 2) % 3]
    t = dot(c - a, b - a) / norm2(b - a)
    return lerp(a, b, t)


def right_2gentiling(master) -> Tiling:
    """Split a right triangle by the altitude onto its hypotenuse."""
    master = tuple(master)
    k = _right_corner(master)
    h = altitude_foot(master)
    # relabel so that the right angle is C
    i, j = (k + 1) % 3, (k + 2) % 3
    A, B, C = master[i], master[j], master[k]
    t1 = [None] * 3
    t2 = [None] * 3
    t1[i], t1[j], t1[k] = A, C, h
    t2[i], t2[j], t2[k] = C, B, h
    return Tiling(master, [tuple(t1), tuple(t2)])


def snover_reptiling(l: int, m: int) -> Tiling:
    """(l^2 + m^2)-reptiling of the right triangle with legs l and m."""
    if l < 1 or m < 1:
        raise InvalidParams("l and m must be positive")
    master = right_triangle(l, m)
    halves = right_2gentiling(master).tiles
    tiles = _subdivide(halves[0], l) + _subdivide(halves[1], m)
    return Tiling(master, tiles)


def sierpinski_2reptiling() -> Tiling:
    master = (P(0, 0), P(2, 0), P(1, 1))
    return Tiling(master, [(P(0, 0), P(1, 1), P(1, 0)), (P(1, 1), P(2, 0), P(1, 0))])


def double_median_4reptiling() -> Tiling:
    """Non-trivial 4-reptiling of the right isosceles triangle (0,0), (2,0), (0,2)."""
    master = right_isosceles()
    tiles = [
        (P(1, 0), P(0, 0), P(1, 1)),
        (P(1, 0), P(2, 0), P(1, 1)),
        (P(0, 1), P(1, 1), P(0, 0)),
        (P(0, 1), P(1, 1), P(0, 2)),
    ]
    return Tiling(master, tiles)


def kaiser_5gentiling() -> Tiling:
    """The 5-gentiling of the isosceles triangle with apex angle 2 pi / 3."""
    r3 = QuadScalar(0, 1, 3)
    apex = Point(QuadScalar(3), r3)
    b, c = P(6, 0), P(0, 0)
    l, rr = P(2, 0), P(4, 0)
    g = Point(QuadScalar(3), r3 / 3)
    tiles = [
        (l, apex, c),
        (rr, b, apex),
        (g, rr, l),
        (g, apex, rr),
        (g, l, apex),
    ]
    return Tiling((apex, b, c), tiles)


def rep3_306090() -> Tiling:
    """3-reptiling of the right triangle with angles pi/6 (A), pi/3 (B), pi/2 (C)."""
    r3 = QuadScalar(0, 1, 3)
    A = Point(QuadScalar(0), r3)
    B, C = P(1, 0), P(0, 0)
    D = Point(QuadScalar(0), r3 / 3)
    F = Point(QuadScalar(Fraction(1, 2)), r3 / 2)
    return Tiling((A, B, C), [(A, D, F), (B, D, F), (B, D, C)])


KINDS = ("trivial", "trivial-gentile", "rhombus-flip", "corner-split", "right2", "snover", "kaiser5", "rep3")


def construct(kind: str, n=None, p=None, q=None, r=None, l=None, m=None, refine=False, master=None) -> Tiling:
    """Dispatch used by the command line."""
    if kind == "trivial":
        return trivial_reptiling(master or scalene_acute(), n or 2)
    if kind == "trivial-gentile":
        return trivial_gentiling(master or scalene_acute(), r or 6)
    if kind == "rhombus-flip":
        p, q = p or 3, q or 2
        return rhombus_flip(master or rational_master(p, q), p, q, n or p + q)
    if kind == "corner-split":
        return corner_split(SplitParams(p or 4, q, r or 5), refine=refine)
    if kind == "right2":
        return right_2gentiling(master or right_triangle(l or 1, m or 2))
    if kind == "snover":
        return snover_reptiling(l or 1, m or 2)
    if kind == "kaiser5":
        return kaiser_5gentiling()
    if kind == "rep3":
        return rep3_306090()
    raise ConstructionError(f"unknown construction {kind!r}")


def is_right(master) -> bool:
    try:
        _right_corner(master)
    except NotRightTriangle:
        return False
    return True


def is_acute(master) -> bool:
    return all(
        sign_of(dot(master[(i + 1) % 3] - master[i], master[(i + 2) % 3] - master[i])) > 0
        for i in range(3)
    )


def master_area2(master) -> QuadScalar:
    return abs(triangle_area2(*master))
