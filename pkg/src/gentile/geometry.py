"""Exact predicates on points, segments, triangles and angles."""
from __future__ import annotations

from .exact import Point, QuadScalar, cross, dot, norm2, sign_of, triangle_area2


def orient(p: Point, q: Point, r: Point) -> int:
    return sign_of(triangle_area2(p, q, r))


def ccw(tri) -> tuple[Point, Point, Point]:
    """The triangle's vertices in counterclockwise order."""
    a, b, c = tri
    return (a, b, c) if orient(a, b, c) > 0 else (a, c, b)


def on_segment_interior(p: Point, a: Point, b: Point) -> bool:
    """True if ``p`` lies strictly between ``a`` and ``b`` on segment ab."""
    if orient(a, b, p) != 0:
        return False
    return sign_of(dot(p - a, b - a)) > 0 and sign_of(dot(p - b, a - b)) > 0


def on_segment_closed(p: Point, a: Point, b: Point) -> bool:
    return p == a or p == b or on_segment_interior(p, a, b)


def segments_share_length(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True if segments ab and cd overlap in a piece of positive length."""
    if orient(a, b, c) != 0 or orient(a, b, d) != 0:
        return False
    u = b - a
    # project onto u; a -> 0, b -> |u|^2
    t1 = dot(c - a, u)
    t2 = dot(d - a, u)
    lo, hi = (t1, t2) if t1 <= t2 else (t2, t1)
    top = norm2(u)
    zero = top - top
    start = lo if lo > zero else zero
    end = hi if hi < top else top
    return sign_of(end - start) > 0


def point_in_triangle(p: Point, tri, strict: bool = False) -> bool:
    a, b, c = ccw(tri)
    s = (orient(a, b, p), orient(b, c, p), orient(c, a, p))
    if strict:
        return all(x > 0 for x in s)
    return all(x >= 0 for x in s)


def interiors_disjoint(t1, t2) -> bool:
    """Separating-axis test: some edge line of either triangle weakly separates them."""
    for first, second in ((t1, t2), (t2, t1)):
        a, b, c = ccw(first)
        for p, q in ((a, b), (b, c), (c, a)):
            if all(orient(p, q, r) <= 0 for r in second):
                return True
    return False


def triangle_inside(tri, container) -> bool:
    return all(point_in_triangle(p, container) for p in tri)


def bbox(tri):
    xs = sorted(p.x for p in tri)
    ys = sorted(p.y for p in tri)
    return xs[0], xs[-1], ys[0], ys[-1]


def side_lengths2(tri) -> tuple[QuadScalar, QuadScalar, QuadScalar]:
    """Squared lengths of the sides opposite vertex 0, 1, 2."""
    a, b, c = tri
    return norm2(c - b), norm2(a - c), norm2(b - a)


def corner_cosine(tri, i: int) -> tuple[int, QuadScalar, QuadScalar]:
    """Exact handle on the angle at vertex ``i``.

    Returns ``(sign(cos), dot^2, |u|^2 |v|^2)``; cos^2 is the ratio of the
    last two entries.
    """
    p = tri[i]
    u = tri[(i + 1) % 3] - p
    v = tri[(i + 2) % 3] - p
    dt = dot(u, v)
    return sign_of(dt), dt * dt, norm2(u) * norm2(v)


def same_angle(c1, c2) -> bool:
    s1, d1, n1 = c1
    s2, d2, n2 = c2
    return s1 == s2 and d1 * n2 == d2 * n1


def angle_lt(c1, c2) -> bool:
    """Angle of handle c1 strictly smaller than angle of handle c2."""
    s1, d1, n1 = c1
    s2, d2, n2 = c2
    # smaller angle <=> larger cosine
    if s1 != s2:
        return s1 > s2
    if s1 == 0:
        return False
    lhs = d1 * n2
    rhs = d2 * n1
    if s1 > 0:
        return lhs > rhs
    return lhs < rhs


def angle_between(u: Point, v: Point):
    dt = dot(u, v)
    return sign_of(dt), dt * dt, norm2(u) * norm2(v)


def half(u: Point) -> int:
    """0 for directions in [0, pi), 1 for [pi, 2 pi)."""
    sy = sign_of(u.y)
    if sy > 0 or (sy == 0 and sign_of(u.x) > 0):
        return 0
    return 1


def direction_lt(u: Point, v: Point) -> bool:
    """Compare polar angles of two nonzero directions in [0, 2 pi)."""
    hu, hv = half(u), half(v)
    if hu != hv:
        return hu < hv
    return sign_of(cross(u, v)) > 0


def same_direction(u: Point, v: Point) -> bool:
    return sign_of(cross(u, v)) == 0 and sign_of(dot(u, v)) > 0


def point_key(p: Point):
    return (p.x, p.y)
