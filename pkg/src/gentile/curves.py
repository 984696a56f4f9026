"""Self-similar traversal orders (space-filling curves) over gentilings.

A rule lists the children of the master in traversal order.  Each child is a
similarity ``phi_i`` onto its tile plus a reversal flag.  The curve's entry
``E`` and exit ``X`` are the fixed points of the first and last child, and
child ``i`` runs from ``phi_i(E)`` to ``phi_i(X)`` (swapped when reversed).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import NamedTuple

from .constructions import kaiser_5gentiling, rep3_306090, right_2gentiling, right_triangle, sierpinski_2reptiling
from .dual import tiles_touch_along_segment
from .exact import (
    AffineSimilarity,
    ExactError,
    NotASimilarity,
    Point,
    QuadScalar,
    scene_radicand,
    similarity_from_triangles,
    triangle_area2,
)
from .tiling import Tiling, validate_gentiling


class SingularFixedPointSystem(ExactError):
    pass


class UnknownCurve(ValueError):
    pass


class Child(NamedTuple):
    map: AffineSimilarity
    reversed: bool = False


class EntryExit(NamedTuple):
    entry: Point
    exit: Point


@dataclass(frozen=True)
class CurveRule:
    master: tuple[Point, Point, Point]
    children: tuple[Child, ...]
    # explicit interval lengths; None means the area fractions |det(phi_i)|
    intervals: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "master", tuple(self.master))
        object.__setattr__(self, "children", tuple(Child(*c) for c in self.children))
        if self.intervals is not None:
            object.__setattr__(self, "intervals", tuple(self.intervals))

    @property
    def r(self) -> int:
        return len(self.children)

    @property
    def radicand(self) -> Fraction:
        vals = [c for p in self.master for c in p]
        for ch in self.children:
            vals.extend(ch.map.entries())
        return scene_radicand(vals)

    def tiles(self) -> list[tuple[Point, Point, Point]]:
        return [tuple(ch.map(p) for p in self.master) for ch in self.children]

    def tiling(self) -> Tiling:
        return Tiling(self.master, self.tiles())

    def lengths(self) -> list:
        if self.intervals is not None:
            return list(self.intervals)
        return [abs(ch.map.det()) for ch in self.children]

    def breakpoints(self) -> list:
        out = [QuadScalar(0)]
        for length in self.lengths():
            out.append(out[-1] + length)
        return out

    def reversed_rule(self) -> CurveRule:
        """The same curve run backwards: children in reverse order, flags unchanged.

        A child's flag is relative to the curve it copies, and that curve is
        reversed too, so the two reversals cancel.
        """
        kids = tuple(reversed(self.children))
        ints = None if self.intervals is None else tuple(reversed(self.intervals))
        return CurveRule(self.master, kids, ints)


# --- fixed points ----------------------------------------------------------------


def solve_linear(a: list[list], b: list) -> list:
    """Exact Gauss-Jordan elimination; raises on a singular matrix."""
    n = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise SingularFixedPointSystem("fixed-point system is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n] for row in m]


def _rows(phi: AffineSimilarity, src: int, dst: int):
    """Rows for ``v[dst] = phi(v[src])`` over unknowns (Ex, Ey, Xx, Xy)."""
    rows, rhs = [], []
    for k, (c0, c1, t) in enumerate(((phi.m00, phi.m01, phi.tx), (phi.m10, phi.m11, phi.ty))):
        row = [QuadScalar(0)] * 4
        row[2 * dst + k] = row[2 * dst + k] + 1
        row[2 * src] = row[2 * src] - c0
        row[2 * src + 1] = row[2 * src + 1] - c1
        rows.append(row)
        rhs.append(t)
    return rows, rhs


def solve_entry_exit(rule: CurveRule) -> EntryExit:
    if not rule.children:
        raise SingularFixedPointSystem("rule has no children")
    first, last = rule.children[0], rule.children[-1]
    # entry E is the entry of the first child, exit X the exit of the last
    r1, b1 = _rows(first.map, 1 if first.reversed else 0, 0)
    r2, b2 = _rows(last.map, 0 if last.reversed else 1, 1)
    sol = solve_linear(r1 + r2, b1 + b2)
    return EntryExit(Point(sol[0], sol[1]), Point(sol[2], sol[3]))


def child_endpoints(rule: CurveRule, ee: EntryExit | None = None) -> list[tuple[Point, Point]]:
    ee = ee or solve_entry_exit(rule)
    out = []
    for ch in rule.children:
        a, b = ch.map(ee.entry), ch.map(ee.exit)
        out.append((b, a) if ch.reversed else (a, b))
    return out


@dataclass
class ContinuityReport:
    ok: bool
    failing: list[int] = field(default_factory=list)  # 1-based junction numbers
    entry_exit: EntryExit | None = None

    def __bool__(self):
        return self.ok


def check_continuity(rule: CurveRule) -> ContinuityReport:
    try:
        ee = solve_entry_exit(rule)
    except SingularFixedPointSystem:
        return ContinuityReport(False, [0])
    ends = child_endpoints(rule, ee)
    bad = [i + 1 for i in range(len(ends) - 1) if ends[i][1] != ends[i + 1][0]]
    return ContinuityReport(not bad, bad, ee)


# --- expansion ------------------------------------------------------------------


def _effective(rule: CurveRule, rev: bool):
    """Children in traversal order for a node traversed forwards or backwards."""
    kids = list(zip(rule.children, rule.lengths()))
    if not rev:
        return [(c.map, c.reversed, ln) for c, ln in kids]
    return [(c.map, not c.reversed, ln) for c, ln in reversed(kids)]


def expand(rule: CurveRule, depth: int) -> list[tuple[AffineSimilarity, bool]]:
    """Depth-``depth`` leaves as (composed map, reversed) in traversal order."""
    d = scene_radicand([c for p in rule.master for c in p])
    level = [(AffineSimilarity.identity(d), False)]
    for _ in range(depth):
        nxt = []
        for phi, rev in level:
            for m, r, _ in _effective(rule, rev):
                nxt.append((phi.compose(m), r))
        level = nxt
    return level


def leaf_tiles(rule: CurveRule, depth: int) -> list[tuple[Point, Point, Point]]:
    return [tuple(phi(p) for p in rule.master) for phi, _ in expand(rule, depth)]


@dataclass
class FaceReport:
    ok: bool
    failure: tuple[int, int] | None = None  # (depth, index of the first tile of the pair)

    def __bool__(self):
        return self.ok


def check_face_continuity(rule: CurveRule, depth: int) -> FaceReport:
    for k in range(1, depth + 1):
        tiles = leaf_tiles(rule, k)
        for i in range(len(tiles) - 1):
            if not tiles_touch_along_segment(tiles[i], tiles[i + 1]):
                return FaceReport(False, (k, i))
    return FaceReport(True)


def evaluate(rule: CurveRule, t, depth: int):
    """Depth-``depth`` tile whose interval holds ``t`` and the curve point at the interval start."""
    t = Fraction(t) if not isinstance(t, QuadScalar) else t
    if not 0 <= t < 1:
        raise ValueError("t must lie in [0, 1)")
    ee = solve_entry_exit(rule)
    d = scene_radicand([c for p in rule.master for c in p])
    phi, rev = AffineSimilarity.identity(d), False
    for _ in range(depth):
        start = QuadScalar(0)
        kids = _effective(rule, rev)
        for idx, (m, r, ln) in enumerate(kids):
            if t < start + ln or idx == len(kids) - 1:
                t = (t - start) / ln
                phi, rev = phi.compose(m), r
                break
            start = start + ln
    tile = tuple(phi(p) for p in rule.master)
    return tile, phi(ee.exit if rev else ee.entry)


def check_measure(rule: CurveRule) -> bool:
    """Interval lengths equal exact area fractions and sum to one."""
    whole = abs(triangle_area2(*rule.master))
    lengths = rule.lengths()
    if len(lengths) != rule.r:
        return False
    for ln, tile in zip(lengths, rule.tiles()):
        if ln != abs(triangle_area2(*tile)) / whole:
            return False
    return sum(lengths, QuadScalar(0)) == 1


def polyline(rule: CurveRule, depth: int, unique: bool = False) -> list[Point]:
    """Entry of every depth-``depth`` tile followed by the final exit.

    With ``unique`` repeated points are dropped (first visit kept), giving
    the set of junction points in visiting order.
    """
    ee = solve_entry_exit(rule)
    pts = [phi(ee.exit if rev else ee.entry) for phi, rev in expand(rule, depth)]
    pts.append(ee.exit)
    if unique:
        seen, out = set(), []
        for p in pts:
            if p not in seen:
                seen.add(p)
                out.append(p)
        return out
    return pts


# --- rules from tilings -----------------------------------------------------------


def tile_maps(master, tile) -> list[tuple[tuple[int, int, int], AffineSimilarity]]:
    """Every similarity taking the master onto ``tile``, keyed by vertex permutation."""
    out = []
    for perm in permutations(range(3)):
        try:
            out.append((perm, similarity_from_triangles(master, tuple(tile[i] for i in perm))))
        except NotASimilarity:
            pass
    return out


def rule_from_spec(t: Tiling, spec) -> CurveRule:
    """``spec`` lists (tile index, vertex permutation, reversed) in traversal order."""
    kids = []
    for idx, perm, rev in spec:
        tile = t.tiles[idx]
        phi = similarity_from_triangles(t.master, tuple(tile[i] for i in perm))
        kids.append(Child(phi, rev))
    return CurveRule(t.master, kids)


def find_curve_rules(t: Tiling, depth: int = 2, limit: int | None = None) -> list[CurveRule]:
    """All orders, maps and reversal flags over ``t`` that are continuous,
    measure preserving and face-continuous to ``depth``.

    The first and last child fix E and X; the middle is filled by a
    depth-first search that keeps junctions exact.
    """
    maps = [tile_maps(t.master, tile) for tile in t.tiles]
    r = t.r
    found: list[CurveRule] = []
    options = [(i, perm, phi, rev) for i in range(r) for perm, phi in maps[i] for rev in (False, True)]

    def chain(ee, order, used, last):
        if len(order) == r - 1:
            kids = [Child(o[2], o[3]) for o in order] + [Child(last[2], last[3])]
            rule = CurveRule(t.master, kids)
            if check_continuity(rule) and check_measure(rule) and check_face_continuity(rule, depth):
                found.append(rule)
            return
        prev = order[-1]
        prev_exit = prev[2](ee.entry if prev[3] else ee.exit)
        for opt in options:
            i, _, phi, rev = opt
            if i in used or i == last[0]:
                continue
            start = phi(ee.exit if rev else ee.entry)
            if start != prev_exit:
                continue
            # consecutive tiles must share an edge already at depth 1
            if not tiles_touch_along_segment(t.tiles[prev[0]], t.tiles[i]):
                continue
            chain(ee, order + [opt], used | {i}, last)
            if limit and len(found) >= limit:
                return

    for first in options:
        for last in options:
            if last[0] == first[0]:
                continue
            probe = CurveRule(t.master, [Child(first[2], first[3]), Child(last[2], last[3])])
            try:
                ee = solve_entry_exit(probe)
            except SingularFixedPointSystem:
                continue
            chain(ee, [first], {first[0]}, last)
            if limit and len(found) >= limit:
                return found
    return found


# --- built-in curves -----------------------------------------------------------------

# (tile index, vertex permutation, reversed) over the constructions' tilings.
# Found with find_curve_rules and kept as fixed data.
REP3_SPEC = (
    (0, (0, 1, 2), False),
    (1, (0, 1, 2), True),
    (2, (0, 1, 2), False),
)
KAISER5_SPEC = (
    (0, (0, 1, 2), False),
    (4, (0, 1, 2), False),
    (2, (0, 1, 2), False),
    (3, (0, 1, 2), False),
    (1, (0, 1, 2), False),
)


def sierpinski() -> CurveRule:
    t = sierpinski_2reptiling()
    return rule_from_spec(t, [(0, (0, 1, 2), False), (1, (0, 1, 2), False)])


def polya(master=None) -> CurveRule:
    master = tuple(master) if master is not None else right_triangle(1, 2)
    t = right_2gentiling(master)
    return rule_from_spec(t, [(0, (0, 1, 2), False), (1, (0, 1, 2), False)])


def rep3() -> CurveRule:
    return rule_from_spec(rep3_306090(), REP3_SPEC)


def kaiser5() -> CurveRule:
    return rule_from_spec(kaiser_5gentiling(), KAISER5_SPEC)


BUILTINS = {"sierpinski": sierpinski, "rep3": rep3, "polya": polya, "kaiser5": kaiser5}


def builtin_curve(name: str, master=None) -> CurveRule:
    if name not in BUILTINS:
        raise UnknownCurve(f"unknown curve {name!r}; choose from {', '.join(BUILTINS)}")
    if name == "polya":
        return polya(master)
    return BUILTINS[name]()


def validate_rule(rule: CurveRule) -> bool:
    return validate_gentiling(rule.tiling()).ok
