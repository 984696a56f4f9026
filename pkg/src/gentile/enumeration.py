"""Exhaustive backtracking enumeration of n^2-reptilings of a triangle.

The search always works at the lowest (then leftmost) point of the region
still to be covered.  The first uncovered angular sector there is bounded on
its clockwise side by an existing edge, so any completion has a tile with a
corner at that point and one side along that edge: three corners times two
orientations give the only six candidates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key

from .budget import BudgetExhausted, NodeCounter, SearchBudget, _Stop
from .exact import ExactError, Point, cross, dot, norm2
from .geometry import (
    angle_between,
    angle_lt,
    corner_cosine,
    direction_lt,
    interiors_disjoint,
    on_segment_interior,
    point_in_triangle,
    same_direction,
)
from .surd import Surd
from .tiling import Tiling, validate_reptiling

__all__ = ["EnumerationResult", "SearchBudget", "BudgetExhausted", "enumerate_reptilings"]


@dataclass
class EnumerationResult:
    tilings: list[Tiling]
    exhaustive: bool
    nodes_explored: int
    skipped: int = 0  # completed tilings whose coordinates leave the scene field
    notes: list[str] = field(default_factory=list)

    def __len__(self):
        return len(self.tilings)


def _sp(p: Point) -> Point:
    return Point(Surd.of(p.x), Surd.of(p.y))


def _perp(u: Point) -> Point:
    return Point(-u.y, u.x)


def _dir_cmp(u, v):
    if direction_lt(u, v):
        return -1
    if direction_lt(v, u):
        return 1
    return 0


def _incidence(v: Point, tri):
    """Where ``v`` sits relative to ``tri``: corner index, edge, inside or None."""
    for i, p in enumerate(tri):
        if p == v:
            return ("corner", i)
    for i in range(3):
        a, b = tri[(i + 1) % 3], tri[(i + 2) % 3]
        if on_segment_interior(v, a, b):
            return ("edge", i)
    if point_in_triangle(v, tri, strict=True):
        return ("inside", None)
    return None


def _directions(v, tri, inc):
    kind, i = inc
    if kind == "corner":
        return [tri[(i + 1) % 3] - tri[i], tri[(i + 2) % 3] - tri[i]]
    if kind == "edge":
        a, b = tri[(i + 1) % 3], tri[(i + 2) % 3]
        return [b - a, a - b]
    return []


def _covers(v, tri, inc, p) -> bool:
    """Does ``tri`` cover the directions just around ``p`` at ``v``?"""
    kind, i = inc
    if kind == "inside":
        return True
    if kind == "corner":
        u = tri[(i + 1) % 3] - v
        w = tri[(i + 2) % 3] - v
        if cross(u, w).sign() < 0:
            u, w = w, u
        return cross(u, p).sign() > 0 and cross(p, w).sign() > 0
    a, b, c = tri[(i + 1) % 3], tri[(i + 2) % 3], tri[i]
    e = b - a
    return cross(e, p).sign() == cross(e, c - a).sign()


class _Search:
    def __init__(self, master, n: int, budget: SearchBudget):
        self.master = tuple(_sp(p) for p in master)
        self.n = n
        self.count = n * n
        self.counter = NodeCounter(budget)
        self.budget = budget
        self.found: dict[frozenset, tuple] = {}
        self.full = False
        m = self.master
        for i in range(3):
            if not norm2(m[(i + 1) % 3] - m[i]).is_rational():
                raise ExactError("enumeration needs a master with rational squared side lengths")
        self.min_angle = corner_cosine(m, 0)
        for i in (1, 2):
            h = corner_cosine(m, i)
            if angle_lt(h, self.min_angle):
                self.min_angle = h
        # (corner, edge-neighbour, other) with the other vertex as a e + b perp(e)
        self.shapes = []
        for i in range(3):
            for j, k in (((i + 1) % 3, (i + 2) % 3), ((i + 2) % 3, (i + 1) % 3)):
                e = m[j] - m[i]
                f = m[k] - m[i]
                e2 = norm2(e)
                a = dot(f, e) / e2
                b = abs(cross(e, f) / e2)
                self.shapes.append((i, j, k, e2.rational() / (n * n), a, b))

    def frontier(self, tiles, closed):
        pts = {p for p in self.master}
        for t in tiles:
            pts.update(t)
        for v in sorted(pts - closed, key=lambda p: (p.y, p.x)):
            sector = self.sector(v, tiles)
            if sector is not None:
                return v, sector, closed
            closed = closed | {v}
        raise ExactError("no uncovered point left before the tile count was reached")

    def sector(self, v, tiles):
        incs = []
        mi = _incidence(v, self.master)
        if mi is None:
            return None
        incs.append((self.master, mi, True))
        for t in tiles:
            inc = _incidence(v, t)
            if inc is not None:
                if inc[0] == "inside":
                    return None
                incs.append((t, inc, False))
        dirs = []
        for tri, inc, _ in incs:
            for d in _directions(v, tri, inc):
                if not any(same_direction(d, x) for x in dirs):
                    dirs.append(d)
        dirs.sort(key=cmp_to_key(_dir_cmp))
        k = len(dirs)
        gaps = []
        for idx in range(k):
            a, b = dirs[idx], dirs[(idx + 1) % k]
            c = cross(a, b).sign()
            probe = a + b if c > 0 else _perp(a)
            open_ = True
            for tri, inc, is_master in incs:
                cov = _covers(v, tri, inc, probe)
                if is_master and not cov:
                    open_ = False
                    break
                if not is_master and cov:
                    open_ = False
                    break
            gaps.append(open_)
        if not any(gaps):
            return None
        starts = [g for g in range(k) if gaps[g] and not gaps[g - 1]]
        g = starts[0]
        end = g
        while gaps[(end + 1) % k] and (end + 1) % k != g:
            end = (end + 1) % k
        d0, d1 = dirs[g], dirs[(end + 1) % k]
        if cross(d0, d1).sign() <= 0:
            raise ExactError("uncovered sector at the lowest point spans pi or more")
        return d0, d1

    def placements(self, v, d0):
        dl2 = norm2(d0).rational()
        for i, j, k, e2, a, b in self.shapes:
            e = d0.scale(Surd.sqrt(e2 / dl2))
            f = e.scale(a) + _perp(e).scale(b)
            tile = [None, None, None]
            tile[i], tile[j], tile[k] = v, v + e, v + f
            yield tuple(tile), f

    def run(self, tiles, closed):
        self.counter.tick()
        if len(tiles) == self.count:
            key = frozenset(frozenset(t) for t in tiles)
            if key not in self.found:
                self.found[key] = tuple(tiles)
                if len(self.found) >= self.budget.max_tilings:
                    self.full = True
                    raise _Stop
            return
        v, (d0, d1), closed = self.frontier(tiles, closed)
        seen = set()
        for tile, f in self.placements(v, d0):
            # symmetric masters produce the same triangle from several corners
            key = frozenset(tile)
            if key in seen:
                continue
            seen.add(key)
            if not same_direction(f, d1):
                if not (cross(d0, f).sign() > 0 and cross(f, d1).sign() > 0):
                    continue
                if angle_lt(angle_between(f, d1), self.min_angle):
                    continue
            if not all(point_in_triangle(p, self.master) for p in tile):
                continue
            if not all(interiors_disjoint(tile, t) for t in tiles):
                continue
            self.run(tiles + [tile], closed)


def _to_tiling(master, tiles) -> Tiling:
    conv = [tuple(Point(p.x.to_quad(), p.y.to_quad()) for p in t) for t in tiles]
    return Tiling(tuple(master), conv)


def enumerate_reptilings(master, n: int, budget: SearchBudget | None = None, strict: bool = False) -> EnumerationResult:
    """All n^2-reptilings of ``master`` by congruent copies at scale 1/n.

    Symmetric duplicates are kept as distinct tilings.  With ``strict`` a
    budget overrun raises :class:`BudgetExhausted` carrying the partial result.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    budget = budget or SearchBudget()
    s = _Search(master, n, budget)
    try:
        s.run([], frozenset())
    except _Stop:
        pass
    tilings, skipped = [], 0
    for tiles in s.found.values():
        try:
            t = _to_tiling(master, tiles)
        except ExactError:
            skipped += 1
            continue
        report = validate_reptiling(t)
        if not report.ok:
            raise ExactError(f"enumerator produced an invalid tiling: {report.violations}")
        tilings.append(t.canonical())
    tilings.sort(key=lambda t: t.tiles)
    exhaustive = not s.counter.exhausted and not s.full
    result = EnumerationResult(tilings, exhaustive, s.counter.nodes, skipped)
    if s.counter.exhausted:
        result.notes.append(f"node budget of {budget.max_nodes} exhausted")
        if strict:
            raise BudgetExhausted(result.notes[-1], result)
    if s.full:
        result.notes.append(f"stopped after {budget.max_tilings} tilings")
    return result
