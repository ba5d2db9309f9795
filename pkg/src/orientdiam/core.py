"""OrientedCore: a two-way oriented subgraph grown around a chosen edge ``pq``.

Every vertex ``v`` sits in a cell ``S[i, j]`` with ``i = d(v, p)`` and
``j = d(v, q)``; its level is ``j - i`` (one of 1, 0, -1) and its width is
``max(i, j)``.  The core orients

1. every shortest ``p``-``u`` path, vertical edge ``uv`` and shortest ``v``-``q``
   path, for vertical edges leaving level 1;
2. one trimmed shortest path through each level 0 -> level -1 vertical edge
   that stage 1 left unoriented;
3. the edge ``pq`` itself, from ``q`` to ``p``.

All distance and domination guarantees of the construction are checked at
runtime by :func:`verify_core_distances` and :func:`domination_report`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .errors import GraphError, PreconditionError, VerificationError
from .graph import (
    INF,
    PartialOrientation,
    UndirectedGraph,
    bfs_distances,
    diameter,
    directed_distances,
    require_two_edge_connected,
    shortest_cycle_through_edge,
    subgraph_diameter,
)

VERTICAL = "vertical"
HORIZONTAL = "horizontal"
INTRA_CELL = "intra-cell"


@dataclass(frozen=True)
class EdgeLevelPartition:
    graph: UndirectedGraph
    p: int
    q: int
    k: int
    dist_p: tuple
    dist_q: tuple

    @property
    def h(self) -> int:
        return self.k // 2

    def cell(self, v: int) -> tuple[int, int]:
        return (self.dist_p[v], self.dist_q[v])

    def level(self, v: int) -> int:
        return self.dist_q[v] - self.dist_p[v]

    def width(self, v: int) -> int:
        return max(self.dist_p[v], self.dist_q[v])

    def edge_class(self, u: int, v: int) -> str:
        if self.cell(u) == self.cell(v):
            return INTRA_CELL
        if self.level(u) != self.level(v):
            return VERTICAL
        return HORIZONTAL

    def canonical(self, u: int, v: int) -> tuple[int, int]:
        """Order an inter-cell edge downward (higher level first) or rightward."""
        lu, lv = self.level(u), self.level(v)
        if lu > lv or (lu == lv and self.width(u) < self.width(v)):
            return (u, v)
        return (v, u)

    def level_vertices(self, lvl: int) -> list[int]:
        return [v for v in self.graph.vertices() if self.level(v) == lvl]

    def cells(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = {}
        for v in self.graph.vertices():
            out.setdefault(self.cell(v), []).append(v)
        return out

    def vertical_edges(self) -> list[tuple[int, int]]:
        return [
            self.canonical(u, v)
            for u, v in self.graph.edges
            if self.edge_class(u, v) == VERTICAL
        ]


def level_partition(g: UndirectedGraph, p: int, q: int) -> EdgeLevelPartition:
    if not g.has_edge(p, q):
        raise GraphError(f"({p}, {q}) is not an edge")
    k = shortest_cycle_through_edge(g, p, q)
    dp = bfs_distances(g, p)
    dq = bfs_distances(g, q)
    if INF in dp:
        raise GraphError("graph is disconnected")
    return EdgeLevelPartition(g, p, q, k, tuple(dp), tuple(dq))


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


class _CoreBuilder:
    """Orients edges while enforcing the per-stage direction rules."""

    def __init__(self, part: EdgeLevelPartition):
        self.part = part
        self.H = PartialOrientation(part.graph)
        self.captured: set[int] = {part.p, part.q}
        self.H.anchor(part.p)
        self.H.anchor(part.q)

    def orient(self, tail: int, head: int, stage: int) -> None:
        part = self.part
        cls = part.edge_class(tail, head)
        lt, lh = part.level(tail), part.level(head)
        wt, wh = part.width(tail), part.width(head)
        if stage == 3:
            ok = (tail, head) == (part.q, part.p)
        elif cls == INTRA_CELL:
            ok = False
        elif cls == VERTICAL:
            ok = lt > lh
        elif lt == 1:
            ok = stage == 1 and wt < wh
        elif lt == 0:
            ok = wt > wh if stage == 1 else wt < wh
        else:
            ok = wt > wh
        if not ok:
            raise VerificationError(
                f"stage {stage} would orient {cls} edge {tail}->{head} "
                f"({part.cell(tail)} -> {part.cell(head)}) against the stage rules"
            )
        self.H.orient(tail, head)
        self.captured.add(tail)
        self.captured.add(head)


def _tight_closure(builder: _CoreBuilder, seeds, dist, toward_root: bool, stage: int) -> None:
    """Orient every edge of every shortest root-seed path (root = vertex at distance 0).

    Edges go away from the root when ``toward_root`` is False (paths p -> u),
    toward it otherwise (paths v -> q).
    """
    adj = builder.part.graph.adj
    seen = set(seeds)
    stack = sorted(seen)
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if dist[y] == dist[x] - 1:
                if toward_root:
                    builder.orient(x, y, stage)
                else:
                    builder.orient(y, x, stage)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)


def _descend(adj, dist, start: int) -> list[int]:
    """Shortest path from ``start`` down to the root of ``dist``, smallest id at each step."""
    path = [start]
    x = start
    while dist[x] > 0:
        x = min(y for y in adj[x] if dist[y] == dist[x] - 1)
        path.append(x)
    return path


def oriented_core(
    g: UndirectedGraph,
    p: int,
    q: int,
    *,
    d: int | None = None,
    verify: bool = True,
) -> tuple[PartialOrientation, EdgeLevelPartition]:
    """Build the oriented core around edge ``pq``.

    With ``verify`` set (the default) every guarantee in this module is
    machine-checked before returning and a failure raises
    :class:`VerificationError`.
    """
    require_two_edge_connected(g)
    part = level_partition(g, p, q)
    builder = _CoreBuilder(part)
    adj = g.adj
    dp, dq = part.dist_p, part.dist_q

    verticals = part.vertical_edges()
    stage1 = [(u, v) for u, v in verticals if part.level(u) == 1 and (u, v) != (p, q)]
    for u, v in stage1:
        builder.orient(u, v, 1)
    _tight_closure(builder, {u for u, _ in stage1}, dp, toward_root=False, stage=1)
    _tight_closure(builder, {v for _, v in stage1}, dq, toward_root=True, stage=1)
    stage1_captured = set(builder.captured)

    stage2 = sorted(
        ((u, v) for u, v in verticals if part.level(u) == 0 and part.level(v) == -1
         and not builder.H.is_oriented(u, v)),
        key=lambda e: (part.width(e[0]), e[0], e[1]),
    )
    for u, v in stage2:
        if builder.H.is_oriented(u, v):
            continue
        pu = _descend(adj, dp, u)[::-1]
        pv = _descend(adj, dq, v)
        x = max(i for i, w in enumerate(pu) if w in builder.captured)
        y = min(i for i, w in enumerate(pv) if w in builder.captured)
        path = pu[x:] + pv[: y + 1]
        for a, b in zip(path, path[1:]):
            builder.orient(a, b, 2)

    builder.orient(q, p, 3)
    H = builder.H

    if verify:
        if d is None:
            d = diameter(g)
        _check_stage1(part, stage1, d)
        h = part.h
        for w in builder.captured - stage1_captured:
            if part.level(w) == 1 or part.cell(w) == (h, h):
                raise VerificationError(f"stage 2 captured {w} in {part.cell(w)}")
        verify_core_distances(H, part, d).raise_on_failure()
        domination_report(g, H, part, d=d, strict=True)
        if part.k >= 4:
            bound = core_diameter_bound(part, d)
            achieved = subgraph_diameter(H, H.captured)
            if achieved > bound:
                raise VerificationError(f"core diameter {achieved} exceeds bound {bound}")
    return H, part


def _check_stage1(part: EdgeLevelPartition, stage1, d: int) -> None:
    h = part.h
    short_into = set()
    for u, v in stage1:
        length = part.dist_p[u] + 1 + part.dist_q[v]
        if length > 2 * d:
            raise VerificationError(
                f"stage 1 path through {u}->{v} has length {length} > {2 * d}"
            )
        if length == 2 * h:
            short_into.add(v)
    # each S[h,h] vertex is the head of a vertical edge on a p-q path of length 2h
    for w in part.cells().get((h, h), ()):
        if w not in short_into:
            raise VerificationError(f"S[{h},{h}] vertex {w} lies on no stage 1 path of length {2 * h}")


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    """Outcome of a runtime verifier; ``witnesses`` lists every violated bound."""

    name: str
    witnesses: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.witnesses

    def fail(self, line: str) -> None:
        self.witnesses.append(line)

    def raise_on_failure(self) -> None:
        if self.witnesses:
            shown = "; ".join(self.witnesses[:5])
            raise VerificationError(f"{self.name}: {len(self.witnesses)} violation(s): {shown}")


def core_distance_bounds(cell: tuple[int, int], h: int, d: int) -> tuple[int, int]:
    """Upper bounds ``(d(p, w), d(w, q))`` for a captured vertex in ``cell``.

    Rows for ``S[i, i]`` (i > h) and ``S[i+1, i]`` take the max of the stage-1
    and stage-2 bounds so that they remain valid when ``h == d``.
    """
    a, b = cell
    if b == a + 1:
        i = a
        return i, 2 * d - i
    if a == b:
        i = a
        if i == h:
            return h, h
        if i > h:
            return max(2 * d - 2 * h - 2 + i, 2 * d - i), 2 * d - i
        raise VerificationError(f"S[{i},{i}] with i < h={h} should be empty")
    if a == b + 1:
        i = b
        return max(4 * d - 2 * h - 2 - i, 2 * d - i), i
    raise VerificationError(f"impossible cell {cell}")


def verify_core_distances(H: PartialOrientation, part: EdgeLevelPartition, d: int) -> CheckResult:
    res = CheckResult("core distances")
    p, q, h = part.p, part.q, part.h
    from_p = directed_distances(H, p)
    to_q = directed_distances(H, q, reverse=True)
    for w in sorted(H.captured):
        cell = part.cell(w)
        try:
            bp, bq = core_distance_bounds(cell, h, d)
        except VerificationError as exc:
            res.fail(f"({w}, {cell}, -, {exc})")
            continue
        if from_p[w] > bp:
            res.fail(f"({w}, {cell}, d(p,w)<={bp}, {from_p[w]})")
        if to_q[w] > bq:
            res.fail(f"({w}, {cell}, d(w,q)<={bq}, {to_q[w]})")
    if directed_distances(H, q)[p] != 1:
        res.fail(f"({p}, q->p, 1, {directed_distances(H, q)[p]})")
    if from_p[q] > part.k - 1:
        res.fail(f"({q}, p->q, {part.k - 1}, {from_p[q]})")
    return res


def core_diameter_bound(part: EdgeLevelPartition, d: int) -> int:
    """Diameter ceiling of the core: ``6d - 2h - 3``, or ``4d - 1`` when ``h == d``."""
    if part.k < 4:
        raise PreconditionError(f"core diameter bound needs k >= 4, got k={part.k}")
    h = part.h
    if h < d:
        return 6 * d - 2 * h - 3
    return 4 * d - 1


@dataclass
class DominationReport:
    d1: float
    d0: float
    dm1: float
    t: int
    captured_per_level: dict[int, tuple[frozenset, frozenset]]

    def radius(self, lvl: int) -> float:
        return {1: self.d1, 0: self.d0, -1: self.dm1}[lvl]

    def check(self, part: EdgeLevelPartition, d: int, captured) -> CheckResult:
        res = CheckResult("core domination")
        k, h = part.k, part.h
        radii = {1: self.d1, 0: self.d0, -1: self.dm1}
        if part.level_vertices(0) and self.d0 > d - h:
            res.fail(f"d0={self.d0} > d - floor(k/2) = {d - h}")
        for lvl in (1, -1):
            if radii[lvl] > d - self.t:
                res.fail(f"d{lvl}={radii[lvl]} > d - ceil(k/4) = {d - self.t}")
        for a, b in ((1, 0), (1, -1), (0, -1)):
            if radii[a] + radii[b] > d - 1:
                res.fail(f"d{a} + d{b} = {radii[a] + radii[b]} > d - 1 = {d - 1}")
        for u, v in part.vertical_edges():
            for w in (u, v):
                if w not in captured:
                    res.fail(f"vertical-edge endpoint {w} in {part.cell(w)} uncaptured")
        for w in part.cells().get((h, h), ()):
            if w not in captured:
                res.fail(f"S[{h},{h}] vertex {w} uncaptured")
        for (i, j), ws in part.cells().items():
            if i == j and i < h:
                res.fail(f"S[{i},{i}] nonempty with h={h}")
        return res


def domination_report(
    g: UndirectedGraph,
    H: PartialOrientation,
    part: EdgeLevelPartition,
    *,
    d: int | None = None,
    strict: bool = True,
) -> DominationReport:
    """Per-level domination radii of the captured set.

    ``d_i`` is the largest distance, inside the level-``i`` induced subgraph,
    from an uncaptured level-``i`` vertex to the captured ones (0 when all are
    captured).  With ``strict`` every inequality is checked and a violation
    raises :class:`VerificationError`.
    """
    captured = H.captured
    levels = {}
    radii = {}
    for lvl in (1, 0, -1):
        members = set(part.level_vertices(lvl))
        cap = members & captured
        unc = members - captured
        levels[lvl] = (frozenset(cap), frozenset(unc))
        dist = {v: 0 for v in cap}
        queue = deque(sorted(cap))
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if y in members and y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        radii[lvl] = max((dist.get(v, INF) for v in unc), default=0)
    report = DominationReport(
        d1=radii[1], d0=radii[0], dm1=radii[-1], t=math.ceil(part.k / 4),
        captured_per_level=levels,
    )
    if strict:
        if d is None:
            d = diameter(g)
        report.check(part, d, captured).raise_on_failure()
    return report
