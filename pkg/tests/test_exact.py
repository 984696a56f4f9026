from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from gentile.exact import (
    AffineSimilarity,
    DegenerateSource,
    DivisionByZero,
    NotASimilarity,
    P,
    Q,
    QuadScalar,
    RadicandMismatch,
    affine_from_triangles,
    format_rational,
    norm2,
    parse_rational,
    scene_radicand,
    sign_of,
    similarity_from_triangles,
    squarefree_split,
)

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=40)
radicands = st.sampled_from([2, 3, 5, 6, 7, 15])


def quads(d):
    return st.builds(lambda a, b: QuadScalar(a, b, d), fracs, fracs)


@st.composite
def triples(draw):
    d = draw(radicands)
    return draw(quads(d)), draw(quads(d)), draw(quads(d))


def test_rational_radicand_collapses():
    assert Q(1, 1, 4) == Q(3)
    assert Q(0, 2, "9/4").is_rational()
    assert Q(1, 1, 4).b == 0


def test_basic_arithmetic():
    r3 = Q(0, 1, 3)
    assert r3 * r3 == 3
    assert (1 + r3) * (1 - r3) == -2
    assert 1 / (1 + r3) == Q("-1/2", "1/2", 3)


def test_mixed_radicands_rejected():
    with pytest.raises(RadicandMismatch):
        Q(0, 1, 2) + Q(0, 1, 3)


def test_rational_mixes_with_any_radicand():
    assert Q(0, 1, 2) + 1 == Q(1, 1, 2)
    assert Q(5) + Q(0, 1, 7) == Q(5, 1, 7)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Q(1, 1, 2) / Q(0)
    with pytest.raises(ZeroDivisionError):
        Q(1) / 0


@pytest.mark.parametrize(
    "a,b,d,expected",
    [(0, 0, 2, 0), (1, -1, 2, -1), (-1, 1, 2, 1), (3, -2, 2, 1), (-3, 2, 2, -1), (7, -5, 2, -1), ("7/5", -1, 2, -1)],
)
def test_sign_cases(a, b, d, expected):
    assert sign_of(Q(a, b, d)) == expected


def test_sign_near_cancellation():
    # 99/70 is a convergent of sqrt 2, so this is about -7e-5
    x = Q("99/70", -1, 2)
    assert sign_of(x) == 1
    assert sign_of(Q("140/99", -1, 2)) == -1


@given(triples())
def test_field_laws(t):
    x, y, z = t
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0
    if x:
        assert x * (1 / x) == 1


@given(radicands.flatmap(lambda d: st.tuples(quads(d), quads(d))))
def test_order_matches_floats(pair):
    x, y = pair
    fx, fy = float(x), float(y)
    if abs(fx - fy) > 1e-9:
        assert (x < y) == (fx < fy)
    assert sign_of(x - y) == -sign_of(y - x)


@given(radicands.flatmap(quads))
def test_hash_consistent_with_eq(x):
    y = QuadScalar(x.a, x.b, x.d)
    assert x == y and hash(x) == hash(y)


def test_rational_io():
    assert parse_rational(" 3/6 ") == Fraction(1, 2)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(ValueError):
        parse_rational("x")


@pytest.mark.parametrize("n,k,m", [(1, 1, 1), (12, 2, 3), (72, 6, 2), (105, 1, 105), (5 * 49, 7, 5)])
def test_squarefree_split(n, k, m):
    assert squarefree_split(n) == (k, m)


def test_scene_radicand():
    assert scene_radicand([Q(1), Q(1, 1, 3), Q(0, 2, 3)]) == 3
    assert scene_radicand([Q(1), Q(2)]) == 0
    with pytest.raises(RadicandMismatch):
        scene_radicand([Q(0, 1, 2), Q(0, 1, 3)])


def test_affine_from_triangles_maps_corners():
    src = (P(0, 0), P(1, 0), P(0, 1))
    dst = (P(2, 1), P(2, 3), P(0, 1))
    phi = affine_from_triangles(src, dst)
    assert [phi(p) for p in src] == list(dst)
    assert phi.is_similarity()
    assert phi.det() == 4


def test_similarity_rejects_shear_and_degenerate():
    src = (P(0, 0), P(1, 0), P(0, 1))
    with pytest.raises(NotASimilarity):
        similarity_from_triangles(src, (P(0, 0), P(2, 0), P(0, 1)))
    with pytest.raises(DegenerateSource):
        affine_from_triangles((P(0, 0), P(1, 1), P(2, 2)), src)


def test_compose_applies_inner_first():
    shift = AffineSimilarity(1, 0, 0, 1, 1, 0)
    dbl = AffineSimilarity(2, 0, 0, 2, 0, 0)
    p = P(1, 1)
    assert dbl.compose(shift)(p) == dbl(shift(p)) == P(4, 2)
    assert AffineSimilarity.identity()(p) == p


def test_sqrt3_geometry_exact():
    h = Q(0, 1, 3)
    a, b, c = P(1, h), P(2, 0), P(0, 0)
    sides = {norm2(u - v) for u, v in [(a, b), (b, c), (c, a)]}
    assert sides == {Q(4)}
    assert math.isclose(float(h), math.sqrt(3))
