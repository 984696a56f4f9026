"""Tilings of a triangle by similar triangles, their validation and the tiling graph."""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import (
    Point,
    QuadScalar,
    cross,
    dot,
    norm2,
    rational_sqrt,
    scene_radicand,
    sign_of,
    triangle_area2,
)
from .geometry import (
    bbox,
    corner_cosine,
    interiors_disjoint,
    on_segment_interior,
    same_angle,
    side_lengths2,
    triangle_inside,
)


@dataclass(frozen=True)
class Tiling:
    master: tuple[Point, Point, Point]
    tiles: tuple[tuple[Point, Point, Point], ...]

    def __post_init__(self):
        object.__setattr__(self, "master", tuple(self.master))
        object.__setattr__(self, "tiles", tuple(tuple(t) for t in self.tiles))

    @property
    def r(self) -> int:
        return len(self.tiles)

    @property
    def radicand(self) -> Fraction:
        return scene_radicand(
            c for tri in (self.master, *self.tiles) for p in tri for c in p
        )

    def canonical(self) -> Tiling:
        """Tiles sorted by their sorted vertex lists; vertex order inside tiles kept."""
        return Tiling(self.master, sorted(self.tiles, key=lambda t: sorted(t)))

    def same_tiles(self, other: Tiling) -> bool:
        return tile_set(self) == tile_set(other)


def tile_set(t: Tiling) -> frozenset:
    return frozenset(frozenset(tile) for tile in t.tiles)


@dataclass
class ValidationReport:
    ok: bool
    r: int
    violations: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "r": self.r, "violations": self.violations}


def _proportional(xs, ys) -> bool:
    return xs[0] * ys[1] == xs[1] * ys[0] and xs[0] * ys[2] == xs[2] * ys[0]


def is_similar(tri, master) -> bool:
    return _proportional(sorted(side_lengths2(tri)), sorted(side_lengths2(master)))


def overlapping_pairs(tiles) -> list[tuple[int, int]]:
    """All pairs of tiles whose interiors intersect (sweep over x extents)."""
    boxes = [bbox(t) for t in tiles]
    order = sorted(range(len(tiles)), key=lambda i: boxes[i][0])
    bad = []
    active: list[int] = []
    for i in order:
        xmin_i = boxes[i][0]
        active = [j for j in active if boxes[j][1] > xmin_i]
        for j in active:
            if boxes[j][3] <= boxes[i][2] or boxes[i][3] <= boxes[j][2]:
                continue
            if not interiors_disjoint(tiles[i], tiles[j]):
                bad.append((min(i, j), max(i, j)))
        active.append(i)
    return sorted(bad)


def validate_gentiling(t: Tiling) -> ValidationReport:
    """Check similarity, exact area sum, disjoint interiors and containment."""
    violations = []
    master_area = abs(triangle_area2(*t.master))
    if not master_area:
        violations.append({"kind": "DegenerateMaster"})
        return ValidationReport(False, t.r, violations)
    if t.r < 2:
        violations.append({"kind": "TooFewTiles", "r": t.r})
    total = QuadScalar(0)
    for i, tile in enumerate(t.tiles):
        area = triangle_area2(*tile)
        if not area:
            violations.append({"kind": "DegenerateTile", "tile": i})
            return ValidationReport(False, t.r, violations)
        total = total + abs(area)
    for i, tile in enumerate(t.tiles):
        if not is_similar(tile, t.master):
            violations.append({"kind": "NotSimilar", "tile": i})
            break
    for i, tile in enumerate(t.tiles):
        if not triangle_inside(tile, t.master):
            violations.append({"kind": "OutsideMaster", "tile": i})
            break
    if total != master_area:
        violations.append(
            {"kind": "AreaMismatch", "tiles": str(total), "master": str(master_area)}
        )
    bad = overlapping_pairs(t.tiles)
    if bad:
        violations.append({"kind": "Overlap", "tiles": list(bad[0]), "count": len(bad)})
    return ValidationReport(not violations, t.r, violations)


def validate_reptiling(t: Tiling) -> ValidationReport:
    report = validate_gentiling(t)
    if report.violations and report.violations[0]["kind"] in ("DegenerateMaster", "DegenerateTile"):
        return report
    areas = [abs(triangle_area2(*tile)) for tile in t.tiles]
    for i, a in enumerate(areas[1:], start=1):
        if a != areas[0]:
            report.violations.append({"kind": "UnequalTileAreas", "tiles": [0, i]})
            report.ok = False
            break
    return report


# --- angle classes -----------------------------------------------------------


def angle_labels(master) -> list[str]:
    """Angle-class label of each master corner.

    Scalene masters use alpha/beta/gamma for corners 0/1/2, isosceles ones
    lambda for the two equal corners and tau for the apex, and equilateral
    masters a single class.
    """
    cs = [corner_cosine(master, i) for i in range(3)]
    eq = [[same_angle(cs[i], cs[j]) for j in range(3)] for i in range(3)]
    if eq[0][1] and eq[1][2]:
        return ["alpha"] * 3
    for apex in range(3):
        j, k = (apex + 1) % 3, (apex + 2) % 3
        if eq[j][k]:
            labels = ["lambda"] * 3
            labels[apex] = "tau"
            return labels
    return ["alpha", "beta", "gamma"]


class AngleClassifier:
    def __init__(self, master):
        self.master = tuple(master)
        self.labels = angle_labels(master)
        self.cosines = [corner_cosine(master, i) for i in range(3)]

    def corner_class(self, tile, i: int) -> str:
        c = corner_cosine(tile, i)
        for lab, mc in zip(self.labels, self.cosines):
            if same_angle(c, mc):
                return lab
        raise ValueError("tile corner matches no master angle")

    def corner_index(self, tile, i: int) -> int:
        """Index of a master corner with the same angle as tile corner ``i``."""
        c = corner_cosine(tile, i)
        for j, mc in enumerate(self.cosines):
            if same_angle(c, mc):
                return j
        raise ValueError("tile corner matches no master angle")


# --- tiling graph --------------------------------------------------------------


@dataclass
class GraphVertex:
    point: Point
    classification: str  # master | half | full
    hanging: bool
    zeta_degrees: dict[str, int]
    edge_adjacency_count: int
    on_boundary: bool

    @property
    def degree(self) -> int:
        return sum(self.zeta_degrees.values())


@dataclass
class TilingGraph:
    vertices: list[GraphVertex]
    edges: list[tuple[int, int]]
    labels: list[str]
    corner_vertex: list[tuple[int, int, int]]  # graph vertex index of each tile corner

    @property
    def f(self) -> int:
        return sum(1 for v in self.vertices if v.classification == "full")

    @property
    def h(self) -> int:
        return sum(1 for v in self.vertices if v.classification == "half")

    @property
    def hanging(self) -> int:
        return sum(1 for v in self.vertices if v.hanging)

    def index(self, p: Point) -> int:
        for i, v in enumerate(self.vertices):
            if v.point == p:
                return i
        raise KeyError(p)

    def to_json(self) -> dict:
        return {
            "vertices": [
                {
                    "point": [str(v.point.x), str(v.point.y)],
                    "class": v.classification,
                    "hanging": v.hanging,
                    "zeta_degrees": v.zeta_degrees,
                    "edge_adjacency": v.edge_adjacency_count,
                }
                for v in self.vertices
            ],
            "edges": [list(e) for e in self.edges],
            "f": self.f,
            "h": self.h,
            "hanging": self.hanging,
        }


class _PointIndex:
    """Vertices sorted by (x, y) for range lookups along segments."""

    def __init__(self, points: list[Point]):
        self.points = points
        self.xs = [p.x for p in points]

    def in_x_range(self, lo, hi):
        i = bisect.bisect_left(self.xs, lo)
        j = bisect.bisect_right(self.xs, hi)
        return range(i, j)


def _interior_points(index: _PointIndex, a: Point, b: Point) -> list[int]:
    lo, hi = (a.x, b.x) if a.x <= b.x else (b.x, a.x)
    return [k for k in index.in_x_range(lo, hi) if on_segment_interior(index.points[k], a, b)]


def build_graph(t: Tiling) -> TilingGraph:
    """The tiling graph: tile corners as vertices, primitive boundary pieces as edges."""
    points = sorted({p for tile in t.tiles for p in tile} | set(t.master))
    where = {p: i for i, p in enumerate(points)}
    index = _PointIndex(points)
    classifier = AngleClassifier(t.master)
    labels = sorted(set(classifier.labels), key=classifier.labels.index)

    edge_adj = [0] * len(points)
    zeta = [dict.fromkeys(labels, 0) for _ in points]
    edges = set()
    corner_vertex = []
    for tile in t.tiles:
        corner_vertex.append(tuple(where[p] for p in tile))
        for i, p in enumerate(tile):
            zeta[where[p]][classifier.corner_class(tile, i)] += 1
        for i in range(3):
            a, b = tile[i], tile[(i + 1) % 3]
            inner = _interior_points(index, a, b)
            for k in inner:
                edge_adj[k] += 1
            d = b - a
            chain = sorted(inner, key=lambda k: (points[k].x - a.x) * d.x + (points[k].y - a.y) * d.y)
            seq = [where[a], *chain, where[b]]
            for u, v in zip(seq, seq[1:]):
                edges.add((min(u, v), max(u, v)))

    m = t.master
    boundary = set()
    for i in range(3):
        for k in _interior_points(index, m[i], m[(i + 1) % 3]):
            boundary.add(k)
    master_idx = {where[p] for p in m}

    vertices = []
    for k, p in enumerate(points):
        if k in master_idx:
            cls, hanging = "master", False
        elif k in boundary:
            cls, hanging = "half", False
        elif edge_adj[k] == 1:
            cls, hanging = "half", True
        elif edge_adj[k] == 0:
            cls, hanging = "full", False
        else:
            raise ValueError("vertex with several edge adjacencies: tiling is not valid")
        vertices.append(
            GraphVertex(p, cls, hanging, zeta[k], edge_adj[k], k in boundary or k in master_idx)
        )
    return TilingGraph(vertices, sorted(edges), labels, corner_vertex)


def check_euler(g: TilingGraph | tuple[int, int], r: int) -> bool:
    """``r == 2 f + h + 1``; ``g`` may also be an ``(f, h)`` pair."""
    f, h = (g.f, g.h) if isinstance(g, TilingGraph) else g
    return r == 2 * f + h + 1


# --- caps, fans and triviality --------------------------------------------------


def detect_caps_fans(t: Tiling, g: TilingGraph | None = None) -> list[dict]:
    g = g or build_graph(t)
    out = []
    for i, corner in enumerate(t.master):
        touching = [k for k, tile in enumerate(t.tiles) if corner in tile]
        if len(touching) >= 2:
            out.append({"vertex": i, "kind": "fan", "k": len(touching)})
            continue
        kind = "neither"
        if len(touching) == 1:
            tile = t.tiles[touching[0]]
            a, b = [p for p in tile if p != corner]
            if any(on_segment_interior(v.point, a, b) for v in g.vertices):
                kind = "cap"
        out.append({"vertex": i, "kind": kind, "k": len(touching)})
    return out


def _grid_coords(p: Point, master) -> tuple[QuadScalar, QuadScalar]:
    a, b, c = master
    den = cross(b - a, c - a)
    return cross(p - a, c - a) / den, cross(b - a, p - a) / den


def _homothety_ratio(tile, master):
    """Signed ratio ``s`` with tile = c + s * master (some vertex order), or None."""
    a, b, c = master
    u, v = b - a, c - a
    perms = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
    for i, j, k in perms:
        p, q, r = tile[i], tile[j], tile[k]
        du, dv = q - p, r - p
        # du = s u, dv = s v for a single scalar s
        if cross(du, u) or cross(dv, v):
            continue
        s = (du.x / u.x) if u.x else (du.y / u.y)
        if dv == v.scale(s):
            return s, p
    return None


def is_trivial_tiling(t: Tiling, max_multiple: int = 4) -> bool:
    """True if some regular grid of the master underlies every tile."""
    master_area = triangle_area2(*t.master)
    dens = []
    for tile in t.tiles:
        ratio = abs(triangle_area2(*tile)) / abs(master_area)
        if not ratio.is_rational():
            return False
        s = rational_sqrt(ratio.a)
        if s is None:
            return False
        dens.append(s.denominator)
    homs = [_homothety_ratio(tile, t.master) for tile in t.tiles]
    if any(h is None for h in homs):
        return False
    n0 = math.lcm(*dens)
    for mult in range(1, max_multiple + 1):
        n = n0 * mult
        good = True
        for s, anchor in homs:
            i, j = _grid_coords(anchor, t.master)
            if not (i.is_rational() and j.is_rational()):
                return False
            if (i.a * n).denominator != 1 or (j.a * n).denominator != 1:
                good = False
                break
            if (s.a * n).denominator != 1:
                good = False
                break
        if good:
            return True
    return False


def side_ratio_rationality(t: Tiling | tuple) -> dict:
    """Which pairs of master sides have a rational length ratio."""
    master = t.master if isinstance(t, Tiling) else tuple(t)
    sides = side_lengths2(master)
    pairs = []
    rational_triangle = False
    for i, j in ((0, 1), (0, 2), (1, 2)):
        lo, hi = (sides[i], sides[j]) if sides[i] <= sides[j] else (sides[j], sides[i])
        q = lo / hi
        root = rational_sqrt(q.a) if q.is_rational() else None
        entry = {"pair": [i, j], "rational": root is not None}
        if root is not None:
            entry["ratio"] = str(root.numerator) + ("" if root.denominator == 1 else f"/{root.denominator}")
            if root != 1:
                rational_triangle = True
        pairs.append(entry)
    return {"pairs": pairs, "rational_triangle": rational_triangle}


# --- vertex degree audit --------------------------------------------------------


def _expected_degrees(labels: list[str]):
    kinds = set(labels)
    if kinds == {"alpha", "beta", "gamma"}:
        return "scalene", {"alpha": 2, "beta": 2, "gamma": 2}, {"alpha": 1, "beta": 1, "gamma": 1}, {"alpha": 1, "beta": 1, "gamma": 1}
    if kinds == {"lambda", "tau"}:
        return "isosceles", {"lambda": 4, "tau": 2}, {"lambda": 2, "tau": 1}, {"lambda": 2, "tau": 1}
    return "equilateral", {"alpha": 6}, {"alpha": 3}, {"alpha": 3}


def audit_vertex_degrees(t: Tiling, g: TilingGraph | None = None) -> dict:
    """Check the per-vertex angle counts forced on reptilings without hanging vertices."""
    g = g or build_graph(t)
    a, b, c = t.master
    if any(not dot(q - p, r - p) for p, q, r in ((a, b, c), (b, c, a), (c, a, b))):
        # the identities are derived for oblique triangles only
        return {"ok": False, "declined": True, "reason": "right-angled master", "violations": []}
    if len({abs(triangle_area2(*tile)) for tile in t.tiles}) > 1:
        return {"ok": False, "declined": True, "reason": "tiles are not congruent", "violations": []}
    if g.hanging:
        return {
            "ok": False,
            "declined": True,
            "reason": f"{g.hanging} hanging vertices present",
            "violations": [],
        }
    shape, full, bnd, master_total = _expected_degrees(g.labels)
    violations = []
    totals = dict.fromkeys(master_total, 0)
    for k, v in enumerate(g.vertices):
        if v.classification == "master":
            for lab, n in v.zeta_degrees.items():
                totals[lab] += n
            continue
        want = full if v.classification == "full" else bnd
        if v.zeta_degrees != want:
            violations.append({"vertex": k, "class": v.classification, "degrees": v.zeta_degrees, "expected": want})
    if totals != master_total:
        violations.append({"vertex": "master", "degrees": totals, "expected": master_total})
    return {"ok": not violations, "declined": False, "shape": shape, "violations": violations}
