import pytest

from gentile.constructions import (
    equilateral,
    isosceles_acute,
    kaiser_5gentiling,
    rational_master,
    rhombus_flip,
    right_2gentiling,
    right_triangle,
    scalene_acute,
    sierpinski_2reptiling,
    trivial_gentiling,
    trivial_reptiling,
)
from gentile.exact import P, Q
from gentile.geometry import interiors_disjoint, orient, point_in_triangle, segments_share_length
from gentile.tiling import (
    Tiling,
    audit_vertex_degrees,
    build_graph,
    check_euler,
    detect_caps_fans,
    is_trivial_tiling,
    side_ratio_rationality,
    validate_gentiling,
    validate_reptiling,
)


def kinds(report):
    return [v["kind"] for v in report.violations]


# --- predicates ----------------------------------------------------------------


def test_orient():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orient(P(0, 0), P(0, 1), P(1, 0)) == -1
    assert orient(P(0, 0), P(1, 1), P(3, 3)) == 0


def test_segment_overlap():
    a, b = P(0, 0), P(2, 0)
    assert segments_share_length(a, b, P(1, 0), P(3, 0))
    assert not segments_share_length(a, b, P(2, 0), P(3, 0))  # single point
    assert not segments_share_length(a, b, P(0, 0), P(0, 1))
    assert segments_share_length(a, b, P(2, 0), P(0, 0))


def test_irrational_collinearity():
    r3 = Q(0, 1, 3)
    a, b = P(0, 0), P(Q(3), r3 * 3)
    mid = P(Q(1), r3)
    assert orient(a, b, mid) == 0
    assert segments_share_length(a, b, mid, P(Q(2), r3 * 2))


def test_interiors():
    t1 = (P(0, 0), P(2, 0), P(0, 2))
    assert interiors_disjoint(t1, (P(2, 0), P(0, 2), P(2, 2)))
    assert not interiors_disjoint(t1, (P(1, 0), P(1, 1), P(0, 1)))
    assert point_in_triangle(P(1, 1), t1)
    assert not point_in_triangle(P(1, 1), t1, strict=True)


# --- validation -----------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 7))
def test_trivial_reptilings_validate(n):
    t = trivial_reptiling(scalene_acute(), n)
    assert t.r == n * n
    assert validate_reptiling(t).ok


def test_missing_tile_is_area_mismatch():
    t = trivial_reptiling(scalene_acute(), 2)
    bad = Tiling(t.master, t.tiles[1:])
    assert kinds(validate_gentiling(bad)) == ["AreaMismatch"]


def test_duplicate_tile_overlaps():
    t = trivial_reptiling(scalene_acute(), 2)
    bad = Tiling(t.master, t.tiles[:3] + (t.tiles[0],))
    assert "Overlap" in kinds(validate_gentiling(bad))


def test_dissimilar_tile():
    # a median splits the master into two triangles of the wrong shape
    m = scalene_acute()
    t = Tiling(m, [(P(0, 0), P(2, 0), P(1, 2)), (P(2, 0), P(4, 0), P(1, 2))])
    assert kinds(validate_gentiling(t)) == ["NotSimilar"]


def test_gentiling_that_is_not_a_reptiling():
    t = right_2gentiling(right_triangle(1, 2))
    assert validate_gentiling(t).ok
    assert "UnequalTileAreas" in kinds(validate_reptiling(t))


def test_degenerate_master():
    t = Tiling((P(0, 0), P(1, 1), P(2, 2)), [])
    assert kinds(validate_gentiling(t)) == ["DegenerateMaster"]


# --- graph ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "make,f,h,hanging",
    [
        (lambda: trivial_reptiling(scalene_acute(), 2), 0, 3, 0),
        (lambda: trivial_reptiling(scalene_acute(), 3), 1, 6, 0),
        (lambda: trivial_gentiling(scalene_acute(), 6), 0, 5, 1),
        (lambda: rhombus_flip(rational_master(3, 2), 3, 2, 5), 3, 18, 6),
        (lambda: kaiser_5gentiling(), 1, 2, 0),
    ],
)
def test_graph_counts(make, f, h, hanging):
    t = make()
    g = build_graph(t)
    assert (g.f, g.h, g.hanging) == (f, h, hanging)
    assert check_euler(g, t.r)


def test_euler_accepts_pairs():
    assert check_euler((1, 6), 9)
    assert not check_euler((1, 6), 10)


def test_zeta_degrees_sum_to_r():
    t = trivial_reptiling(scalene_acute(), 4)
    g = build_graph(t)
    for lab in set(g.labels):
        assert sum(v.zeta_degrees.get(lab, 0) for v in g.vertices) == t.r


def test_graph_vertex_order_is_deterministic():
    t = trivial_reptiling(isosceles_acute(), 3)
    shuffled = Tiling(t.master, list(reversed(t.tiles)))
    assert [v.point for v in build_graph(t).vertices] == [v.point for v in build_graph(shuffled).vertices]


# --- caps, fans, triviality -------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_trivial_has_neither(n):
    t = trivial_reptiling(scalene_acute(), n)
    assert [c["kind"] for c in detect_caps_fans(t)] == ["neither"] * 3


def test_cap_and_fans():
    assert [c["kind"] for c in detect_caps_fans(trivial_gentiling(scalene_acute(), 6))] == ["cap", "neither", "neither"]
    fans = [c for c in detect_caps_fans(kaiser_5gentiling()) if c["kind"] == "fan"]
    assert fans == [{"vertex": 0, "kind": "fan", "k": 4}]
    assert detect_caps_fans(sierpinski_2reptiling())[2] == {"vertex": 2, "kind": "fan", "k": 2}


@pytest.mark.parametrize("n", range(2, 9))
def test_is_trivial_on_grids(n):
    assert is_trivial_tiling(trivial_reptiling(scalene_acute(), n))


@pytest.mark.parametrize("r", [4, 6, 7, 8, 9])
def test_trivial_gentilings_are_trivial(r):
    assert is_trivial_tiling(trivial_gentiling(scalene_acute(), r))


def test_non_trivial():
    assert not is_trivial_tiling(rhombus_flip(rational_master(3, 2), 3, 2, 5))
    assert not is_trivial_tiling(kaiser_5gentiling())


# --- side ratios --------------------------------------------------------------------


def test_side_ratios_345():
    rep = side_ratio_rationality((P(0, 0), P(3, 0), P(0, 4)))
    assert rep["rational_triangle"]
    assert sorted(p["ratio"] for p in rep["pairs"]) == ["3/4", "3/5", "4/5"]


def test_side_ratios_irrational():
    rep = side_ratio_rationality(scalene_acute())
    assert not rep["rational_triangle"]
    assert not any(p["rational"] for p in rep["pairs"])


def test_equilateral_counts_as_irrational():
    rep = side_ratio_rationality(equilateral())
    assert all(p["ratio"] == "1" for p in rep["pairs"])
    assert not rep["rational_triangle"]


# --- degree audit -----------------------------------------------------------------


def test_audit_scalene_trivial():
    t = trivial_reptiling(scalene_acute(), 3)
    g = build_graph(t)
    rep = audit_vertex_degrees(t, g)
    assert rep["ok"] and rep["shape"] == "scalene"
    full = [v.zeta_degrees for v in g.vertices if v.classification == "full"]
    assert full == [{"alpha": 2, "beta": 2, "gamma": 2}]
    for v in g.vertices:
        if v.classification == "half":
            assert v.zeta_degrees == {"alpha": 1, "beta": 1, "gamma": 1}


def test_audit_isosceles_trivial():
    t = trivial_reptiling(isosceles_acute(), 3)
    g = build_graph(t)
    assert audit_vertex_degrees(t, g)["ok"]
    assert [v.zeta_degrees for v in g.vertices if v.classification == "full"] == [{"lambda": 4, "tau": 2}]


def test_audit_declines():
    rf = audit_vertex_degrees(rhombus_flip(rational_master(3, 2), 3, 2, 5))
    assert rf["declined"] and not rf["ok"]
    assert audit_vertex_degrees(sierpinski_2reptiling())["declined"]
    assert audit_vertex_degrees(kaiser_5gentiling())["declined"]


def test_audit_flags_tampered_degrees():
    t = trivial_reptiling(scalene_acute(), 3)
    g = build_graph(t)
    v = next(v for v in g.vertices if v.classification == "full")
    v.zeta_degrees["alpha"] += 1
    assert not audit_vertex_degrees(t, g)["ok"]
