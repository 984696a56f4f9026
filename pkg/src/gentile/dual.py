"""Dual graphs of tilings and (conforming) Hamiltonian path search."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .budget import BudgetExhausted, NodeCounter, SearchBudget, _Stop
from .exact import NotASimilarity, similarity_from_triangles
from .geometry import bbox, segments_share_length
from .tiling import Tiling


class MismatchedTileCounts(ValueError):
    pass


@dataclass(frozen=True)
class DualGraph:
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j]

    def adjacent(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    def to_json(self) -> dict:
        return {"nodes": self.n, "adjacency": [list(a) for a in self.adjacency]}


def tiles_touch_along_segment(t1, t2) -> bool:
    for i in range(3):
        a, b = t1[i], t1[(i + 1) % 3]
        for j in range(3):
            if segments_share_length(a, b, t2[j], t2[(j + 1) % 3]):
                return True
    return False


def build_dual(t: Tiling) -> DualGraph:
    tiles = t.tiles
    boxes = [bbox(tile) for tile in tiles]
    order = sorted(range(len(tiles)), key=lambda i: boxes[i][0])
    adj: list[set[int]] = [set() for _ in tiles]
    active: list[int] = []
    for i in order:
        xmin = boxes[i][0]
        active = [j for j in active if boxes[j][1] >= xmin]
        for j in active:
            # closed boxes: touching tiles have overlapping boxes
            if boxes[j][3] < boxes[i][2] or boxes[i][3] < boxes[j][2]:
                continue
            if tiles_touch_along_segment(tiles[i], tiles[j]):
                adj[i].add(j)
                adj[j].add(i)
        active.append(i)
    return DualGraph(tuple(tuple(sorted(a)) for a in adj))


@dataclass
class PathResult:
    """Outcome of a path search.

    ``exhaustive`` is true when the verdict is certain: a witness was found,
    or the whole search tree was explored without finding one.
    """

    found: bool
    order: list[int] | None
    exhaustive: bool
    nodes_explored: int
    notes: list[str] = field(default_factory=list)

    def verify(self, g: DualGraph) -> bool:
        if not self.found:
            return True
        o = self.order
        if sorted(o) != list(range(g.n)):
            return False
        return all(g.adjacent(a, b) for a, b in zip(o, o[1:]))

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "order": self.order,
            "exhaustive": self.exhaustive,
            "nodes_explored": self.nodes_explored,
            "notes": list(self.notes),
        }


def _connected(adj, nodes: set[int]) -> bool:
    if not nodes:
        return True
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in nodes and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(nodes)


def _paths_from(adj, start: int, nodes: set[int], counter: NodeCounter, end: int | None = None):
    """Yield Hamiltonian paths of the subgraph on ``nodes`` starting at ``start``.

    Iterative so that long paths do not hit the recursion limit.
    """
    path = [start]
    unvisited = set(nodes) - {start}
    stack = [iter(sorted(w for w in adj[start] if w in unvisited))]
    if not unvisited:
        if end is None or end == start:
            yield list(path)
        return
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            unvisited.add(path.pop())
            continue
        if nxt not in unvisited:
            continue
        counter.tick()
        path.append(nxt)
        unvisited.discard(nxt)
        if not unvisited:
            if end is None or nxt == end:
                yield list(path)
            unvisited.add(path.pop())
            continue
        if (end is not None and end not in unvisited) or not _viable(adj, nxt, unvisited, end):
            unvisited.add(path.pop())
            continue
        stack.append(iter(sorted(w for w in adj[nxt] if w in unvisited)))


def _viable(adj, cur: int, unvisited: set[int], end: int | None) -> bool:
    if not any(w in unvisited for w in adj[cur]):
        return False
    # vertices with a single way in must be the final vertex; at most one of them
    dead = 0
    for u in unvisited:
        deg = sum(1 for w in adj[u] if w in unvisited or w == cur)
        if deg == 0:
            return False
        if deg == 1:
            if end is not None and u != end:
                return False
            dead += 1
            if dead > 1:
                return False
    return _connected(adj, unvisited)


def hamiltonian_path(g: DualGraph, budget: SearchBudget | None = None, strict: bool = False) -> PathResult:
    budget = budget or SearchBudget()
    counter = NodeCounter(budget)
    nodes = set(range(g.n))
    result = None
    try:
        if _connected(g.adjacency, nodes):
            for s in range(g.n):
                counter.tick()
                for path in _paths_from(g.adjacency, s, nodes, counter):
                    result = PathResult(True, path, True, counter.nodes)
                    break
                if result:
                    break
    except _Stop:
        pass
    if result is None:
        result = PathResult(False, None, not counter.exhausted, counter.nodes)
        if counter.exhausted:
            result.notes.append(f"node budget of {budget.max_nodes} exhausted")
            if strict:
                raise BudgetExhausted(result.notes[-1], result)
    result.nodes_explored = counter.nodes
    return result


# --- two-level reptilings ---------------------------------------------------------


@dataclass
class TwoLevelTiling:
    outer: Tiling
    inner: list[Tiling]  # one per outer tile, already placed on that tile
    atoms: Tiling
    membership: list[int]  # outer tile index of each atom

    @property
    def r(self) -> int:
        return self.outer.r

    def groups(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.outer.tiles]
        for a, m in enumerate(self.membership):
            out[m].append(a)
        return out


def _place_rule(rule: Tiling, tile) -> Tiling:
    """Map a shared rule onto ``tile``; the identity vertex order is tried first."""
    for perm in permutations(range(3)):
        target = tuple(tile[i] for i in perm)
        try:
            phi = similarity_from_triangles(rule.master, target)
        except NotASimilarity:
            continue
        return Tiling(target, [tuple(phi(p) for p in t) for t in rule.tiles])
    raise NotASimilarity("rule master is not similar to the tile")


def two_level(outer: Tiling, inner) -> TwoLevelTiling:
    """Refine every outer tile by ``inner``: a single shared rule or one tiling per tile."""
    if isinstance(inner, Tiling):
        placed = [_place_rule(inner, tile) for tile in outer.tiles]
    else:
        placed = list(inner)
        if len(placed) != outer.r:
            raise MismatchedTileCounts(f"{len(placed)} inner tilings for {outer.r} outer tiles")
        for tile, sub in zip(outer.tiles, placed):
            if set(sub.master) != set(tile):
                raise ValueError("inner tiling master does not match its outer tile")
    counts = {sub.r for sub in placed}
    if len(counts) != 1:
        raise MismatchedTileCounts(f"inner tile counts differ: {sorted(counts)}")
    atoms, membership = [], []
    for idx, sub in enumerate(placed):
        atoms.extend(sub.tiles)
        membership.extend([idx] * sub.r)
    return TwoLevelTiling(outer, placed, Tiling(outer.master, atoms), membership)


def _endpoint_table(adj, group: list[int], counter: NodeCounter) -> dict[tuple[int, int], list[int]]:
    """First internal Hamiltonian path found for each feasible (entry, exit) pair."""
    nodes = set(group)
    table: dict[tuple[int, int], list[int]] = {}
    for s in sorted(group):
        for path in _paths_from(adj, s, nodes, counter):
            table.setdefault((path[0], path[-1]), path)
    return table


def conforming_hamiltonian_path(t2: TwoLevelTiling, budget: SearchBudget | None = None, strict: bool = False) -> PathResult:
    """Hamiltonian path of the atom dual that keeps each outer tile's atoms consecutive."""
    budget = budget or SearchBudget()
    counter = NodeCounter(budget)
    g = build_dual(t2.atoms)
    adj = g.adjacency
    groups = t2.groups()
    result = None
    try:
        tables = [_endpoint_table(adj, grp, counter) for grp in groups]
        failed: set[tuple[frozenset, int]] = set()

        def extend(visited: frozenset, exit_atom: int, chosen: list):
            counter.tick()
            if len(visited) == len(groups):
                return chosen
            key = (visited, exit_atom)
            if key in failed:
                return None
            for j in range(len(groups)):
                if j in visited:
                    continue
                for (entry, ex), path in sorted(tables[j].items()):
                    if g.adjacent(exit_atom, entry):
                        got = extend(visited | {j}, ex, chosen + [path])
                        if got:
                            return got
            failed.add(key)
            return None

        for i in range(len(groups)):
            for (entry, ex), path in sorted(tables[i].items()):
                got = extend(frozenset([i]), ex, [path])
                if got:
                    order = [a for p in got for a in p]
                    result = PathResult(True, order, True, counter.nodes)
                    break
            if result:
                break
    except _Stop:
        pass
    if result is None:
        result = PathResult(False, None, not counter.exhausted, counter.nodes)
        if counter.exhausted:
            result.notes.append(f"node budget of {budget.max_nodes} exhausted")
            if strict:
                raise BudgetExhausted(result.notes[-1], result)
    result.nodes_explored = counter.nodes
    return result
