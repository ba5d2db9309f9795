"""Exact oriented diameter for small graphs, and an independent verifier.

Nothing here reuses the directed-distance code of :mod:`orientdiam.graph`;
distances are recomputed from scratch so the oracle can serve as a second
opinion on every pipeline result.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .errors import BudgetExceeded, GraphError
from .graph import INF, PartialOrientation, UndirectedGraph

EXHAUSTIVE_LIMIT = 14
BRANCH_AND_BOUND_LIMIT = 26


@dataclass
class OracleResult:
    optimum: int | None  # None: no strong orientation exists
    certificate: PartialOrientation | None
    nodes_explored: int
    method: str

    @property
    def strong(self) -> bool:
        return self.optimum is not None


def verify_orientation(g: UndirectedGraph, o: PartialOrientation) -> tuple[bool, float]:
    """``(strong, diameter)`` by BFS from every vertex; diameter is ``inf`` when not strong."""
    if o.host != g:
        raise GraphError("orientation belongs to a different graph")
    out = [[] for _ in range(g.n)]
    for u, v in g.edges:
        a = o.arc(u, v)
        if a is None:
            raise GraphError(f"edge ({u}, {v}) is unoriented")
        out[a[0]].append(a[1])
    worst = 0
    for s in range(g.n):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in out[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if len(dist) < g.n:
            return False, INF
        worst = max(worst, max(dist.values()))
    return True, worst


def _undirected_diameter(n: int, adj_mask: list[int]) -> float:
    return _mask_diameter(n, adj_mask, INF)


def _mask_diameter(n: int, out: list[int], cap) -> float:
    """Diameter of the digraph given by out-neighbour bitmasks.

    Stops early and returns ``cap`` once some eccentricity reaches ``cap``;
    returns ``inf`` when some vertex cannot reach everything.
    """
    full = (1 << n) - 1
    worst = 0
    for s in range(n):
        seen = frontier = 1 << s
        dist = 0
        while seen != full:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= out[low.bit_length() - 1]
                f ^= low
            nxt &= ~seen
            if not nxt:
                return INF
            dist += 1
            if dist >= cap:
                return cap
            seen |= nxt
            frontier = nxt
        if dist > worst:
            worst = dist
    return worst


def _certificate(g: UndirectedGraph, arcs) -> PartialOrientation:
    o = PartialOrientation(g)
    for a, b in arcs:
        o.orient(a, b)
    return o.freeze()


def _edgeless(g: UndirectedGraph, method: str) -> OracleResult:
    if g.n == 1:
        return OracleResult(0, PartialOrientation(g).freeze(), 0, method)
    return OracleResult(None, None, 0, method)


def exhaustive_oriented_diameter(g: UndirectedGraph) -> OracleResult:
    """Enumerate all orientations with the first edge fixed (reversal symmetry)."""
    m = g.m
    if m > EXHAUSTIVE_LIMIT:
        raise BudgetExceeded(f"exhaustive search refuses m={m} > {EXHAUSTIVE_LIMIT}")
    if m == 0:
        return _edgeless(g, "exhaustive")
    best, best_bits, count = INF, None, 0
    for bits in itertools.product((0, 1), repeat=m - 1):
        bits = (0,) + bits
        out = [0] * g.n
        for (u, v), b in zip(g.edges, bits):
            if b:
                u, v = v, u
            out[u] |= 1 << v
        count += 1
        diam = _mask_diameter(g.n, out, best)
        if diam < best:
            best, best_bits = diam, bits
    if best == INF:
        return OracleResult(None, None, count, "exhaustive")
    arcs = [(v, u) if b else (u, v) for (u, v), b in zip(g.edges, best_bits)]
    return OracleResult(int(best), _certificate(g, arcs), count, "exhaustive")


def branch_and_bound_oriented_diameter(
    g: UndirectedGraph, budget: int = BRANCH_AND_BOUND_LIMIT
) -> OracleResult:
    """Depth-first search over edge directions with two prunings.

    (a) a vertex whose remaining possible in- or out-edges drop to zero;
    (b) the diameter of the mixed graph (unprocessed edges usable both ways),
        a lower bound for every completion, reaching the incumbent.
    """
    n, m = g.n, g.m
    if m > budget:
        raise BudgetExceeded(f"branch-and-bound refuses m={m} > {budget}")
    if m == 0:
        return _edgeless(g, "branch-and-bound")
    deg = [len(g.adj[v]) for v in range(n)]
    order = sorted(g.edges, key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))
    out = [0] * n
    for u, v in g.edges:
        out[u] |= 1 << v
        out[v] |= 1 << u
    can_in = deg[:]
    can_out = deg[:]
    floor = _undirected_diameter(n, out)
    state = {"best": INF, "arcs": None, "nodes": 0}
    chosen: list[tuple[int, int]] = []

    # infeasibility probe: an edge that kills strong connectivity both ways
    for u, v in order:
        dead = 0
        for a, b in ((u, v), (v, u)):
            out[b] &= ~(1 << a)
            if _mask_diameter(n, out, INF) == INF:
                dead += 1
            out[b] |= 1 << a
        if dead == 2:
            return OracleResult(None, None, 1, "branch-and-bound")

    def place(a: int, b: int) -> bool:
        out[b] &= ~(1 << a)
        can_in[a] -= 1
        can_out[b] -= 1
        return can_in[a] > 0 and can_out[b] > 0

    def unplace(a: int, b: int) -> None:
        out[b] |= 1 << a
        can_in[a] += 1
        can_out[b] += 1

    def search(idx: int) -> None:
        state["nodes"] += 1
        bound = _mask_diameter(n, out, state["best"])
        if bound >= state["best"]:
            return
        if idx == m:
            state["best"] = bound
            state["arcs"] = list(chosen)
            return
        u, v = order[idx]
        directions = ((u, v),) if idx == 0 else ((u, v), (v, u))
        for a, b in directions:
            if place(a, b):
                chosen.append((a, b))
                search(idx + 1)
                chosen.pop()
            unplace(a, b)
            if state["best"] == floor:
                return

    search(0)
    if state["best"] == INF:
        return OracleResult(None, None, state["nodes"], "branch-and-bound")
    return OracleResult(int(state["best"]), _certificate(g, state["arcs"]), state["nodes"], "branch-and-bound")


def exact_oriented_diameter(
    g: UndirectedGraph, budget: int | None = None, *, method: str = "auto"
) -> OracleResult:
    """Minimum diameter over all orientations of ``g``.

    ``method`` is ``"exhaustive"``, ``"branch-and-bound"`` or ``"auto"``
    (branch-and-bound).  Instances with more than ``budget`` edges are refused
    with :class:`BudgetExceeded` rather than answered approximately.
    """
    if method == "exhaustive":
        if budget is not None and g.m > budget:
            raise BudgetExceeded(f"m={g.m} exceeds budget {budget}")
        return exhaustive_oriented_diameter(g)
    if method not in ("auto", "branch-and-bound"):
        raise ValueError(f"unknown oracle method {method!r}")
    return branch_and_bound_oriented_diameter(
        g, BRANCH_AND_BOUND_LIMIT if budget is None else budget
    )
