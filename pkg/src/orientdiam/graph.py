"""Undirected graphs, partial orientations, BFS distances and contraction.

Vertices are always the integers ``0..n-1``.  Neighbour lists are stored
sorted so every traversal in the package is deterministic.  Unreachable
vertices get the distance :data:`INF`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    GraphError,
    NotConnectedError,
    NotTwoEdgeConnectedError,
    OrientationConflict,
)

INF = math.inf

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class UndirectedGraph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj", "_index")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        index: dict[Edge, int] = {}
        normed = []
        for raw in edges:
            u, v = int(raw[0]), int(raw[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            e = _norm(u, v)
            if e in index:
                raise GraphError(f"parallel edge {e}")
            index[e] = -1
            normed.append(e)
        normed.sort()
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(normed):
            index[(u, v)] = i
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(normed)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in nbrs)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self._index

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._index[_norm(u, v)]
        except KeyError:
            raise GraphError(f"({u}, {v}) is not an edge") from None

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise GraphError(f"invalid vertex {v!r} for a graph on {self.n} vertices")

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[UndirectedGraph, list[int]]:
        """Return ``(sub, original)`` where ``original[i]`` is the host id of sub-vertex ``i``."""
        original = sorted(set(vertices))
        local = {v: i for i, v in enumerate(original)}
        sub_edges = [
            (local[u], local[v]) for u, v in self.edges if u in local and v in local
        ]
        return UndirectedGraph(len(original), sub_edges), original

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# undirected distances
# ---------------------------------------------------------------------------


def _bfs(adj, sources: Iterable[int], n: int, skip: Edge | None = None, absorbing=None) -> list:
    """Multi-source BFS.  ``skip`` is one edge to ignore; ``absorbing`` vertices
    are reached but never expanded (unless they are sources)."""
    dist = [INF] * n
    queue = deque()
    for s in sources:
        if dist[s] != 0:
            dist[s] = 0
            queue.append(s)
    while queue:
        x = queue.popleft()
        if absorbing is not None and dist[x] > 0 and x in absorbing:
            continue
        dx = dist[x] + 1
        for y in adj[x]:
            if dist[y] == INF:
                if skip is not None and _norm(x, y) == skip:
                    continue
                dist[y] = dx
                queue.append(y)
    return dist


def bfs_distances(g: UndirectedGraph, source: int) -> list:
    """Hop distances from ``source``; unreachable vertices get :data:`INF`."""
    g.check_vertex(source)
    return _bfs(g.adj, (source,), g.n)


def set_distances(g: UndirectedGraph, sources: Iterable[int]) -> list:
    """Distance from every vertex to the nearest vertex of ``sources``."""
    sources = list(sources)
    for s in sources:
        g.check_vertex(s)
    return _bfs(g.adj, sources, g.n)


def distance_matrix(g: UndirectedGraph) -> list[list]:
    return [_bfs(g.adj, (s,), g.n) for s in range(g.n)]


def eccentricity(g: UndirectedGraph, v: int) -> int:
    ecc = max(bfs_distances(g, v))
    if ecc == INF:
        raise NotConnectedError("eccentricity of a vertex in a disconnected graph")
    return ecc


def _eccentricities(g: UndirectedGraph) -> list[int]:
    if g.n == 0:
        raise GraphError("empty graph has no eccentricities")
    eccs = [max(row) for row in distance_matrix(g)]
    if INF in eccs:
        raise NotConnectedError("graph is disconnected")
    return eccs


def diameter(g: UndirectedGraph) -> int:
    return max(_eccentricities(g))


def radius(g: UndirectedGraph) -> int:
    return min(_eccentricities(g))


def center(g: UndirectedGraph) -> int:
    """Smallest-id vertex of minimum eccentricity."""
    eccs = _eccentricities(g)
    return eccs.index(min(eccs))


def is_connected(g: UndirectedGraph) -> bool:
    if g.n == 0:
        return True
    return INF not in _bfs(g.adj, (0,), g.n)


def domination_radius(g: UndirectedGraph, dominators: Iterable[int]) -> float:
    """Smallest ``k`` such that ``dominators`` is a k-step dominating set."""
    dominators = list(dominators)
    if not dominators:
        return INF
    return max(set_distances(g, dominators))


# ---------------------------------------------------------------------------
# bridges and 2-edge-connectivity
# ---------------------------------------------------------------------------


def multigraph_bridges(n: int, edge_list: Sequence[Edge]) -> list[int]:
    """Indices of bridges of a multigraph given as a list of endpoint pairs.

    Parallel edges are honoured (two copies of an edge are never bridges);
    self-loops are ignored.  Iterative low-link DFS.
    """
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edge_list):
        if u == v:
            continue
        inc[u].append((v, i))
        inc[v].append((u, i))
    disc = [-1] * n
    low = [0] * n
    found: list[int] = []
    counter = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(inc[root]))]
        while stack:
            v, parent_edge, it = stack[-1]
            advanced = False
            for w, ei in it:
                if ei == parent_edge:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, ei, iter(inc[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] > disc[u]:
                    found.append(parent_edge)
    return sorted(found)


def bridges(g: UndirectedGraph) -> list[Edge]:
    return [g.edges[i] for i in multigraph_bridges(g.n, g.edges)]


def is_two_edge_connected(g: UndirectedGraph) -> bool:
    """True iff ``g`` is connected and bridgeless (strongly orientable, by Robbins)."""
    if g.n == 0:
        return False
    return is_connected(g) and not multigraph_bridges(g.n, g.edges)


def require_two_edge_connected(g: UndirectedGraph) -> None:
    if not is_two_edge_connected(g):
        raise NotTwoEdgeConnectedError("graph is not 2-edge connected")


def shortest_cycle_through_edge(g: UndirectedGraph, p: int, q: int) -> int:
    """Length of a shortest cycle containing the edge ``pq``."""
    e = _norm(p, q)
    if e not in g._index:
        raise GraphError(f"({p}, {q}) is not an edge")
    d = _bfs(g.adj, (p,), g.n, skip=e)[q]
    if d == INF:
        raise NotTwoEdgeConnectedError(f"({p}, {q}) is a bridge")
    return d + 1


def eta(g: UndirectedGraph) -> tuple[int, Edge]:
    """Smallest ``eta`` with every edge on a cycle of length <= eta, plus an edge attaining it.

    The witness is the smallest edge (by sorted endpoint pair) attaining the maximum.
    """
    require_two_edge_connected(g)
    best, witness = -1, None
    for p, q in g.edges:
        k = shortest_cycle_through_edge(g, p, q)
        if k > best:
            best, witness = k, (p, q)
    return best, witness


# ---------------------------------------------------------------------------
# partial orientations
# ---------------------------------------------------------------------------


class PartialOrientation:
    """Per-edge direction over a host graph.

    Each edge is unoriented or carries one arc.  Re-orienting an edge the same
    way is a no-op; the opposite way raises :class:`OrientationConflict`.
    ``captured`` is the set of endpoints of oriented edges plus any explicitly
    anchored vertices.
    """

    def __init__(self, host: UndirectedGraph):
        self.host = host
        self._dir = [0] * host.m
        self._anchors: set[int] = set()
        self._frozen = False
        self._adj_cache = None

    # construction ---------------------------------------------------------

    def orient(self, tail: int, head: int) -> None:
        if self._frozen:
            raise OrientationConflict("orientation is frozen")
        i = self.host.edge_id(tail, head)
        want = 1 if tail < head else -1
        have = self._dir[i]
        if have == want:
            return
        if have != 0:
            raise OrientationConflict(
                f"edge {self.host.edges[i]} already oriented {head}->{tail}, asked {tail}->{head}"
            )
        self._dir[i] = want
        self._adj_cache = None

    def orient_path(self, path: Sequence[int]) -> None:
        for a, b in zip(path, path[1:]):
            self.orient(a, b)

    def anchor(self, v: int) -> None:
        self.host.check_vertex(v)
        if self._frozen:
            raise OrientationConflict("orientation is frozen")
        self._anchors.add(v)

    def freeze(self) -> PartialOrientation:
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    def copy(self) -> PartialOrientation:
        o = PartialOrientation(self.host)
        o._dir = list(self._dir)
        o._anchors = set(self._anchors)
        return o

    def update(self, other: PartialOrientation) -> None:
        """Add every arc and anchor of ``other`` (same host) to this orientation."""
        if other.host is not self.host and other.host != self.host:
            raise GraphError("orientations over different hosts")
        for tail, head in other.arcs():
            self.orient(tail, head)
        for v in other._anchors:
            self.anchor(v)

    # queries --------------------------------------------------------------

    def arc(self, u: int, v: int) -> Edge | None:
        """The arc on edge ``uv`` as ``(tail, head)``, or None when unoriented."""
        i = self.host.edge_id(u, v)
        a, b = self.host.edges[i]
        d = self._dir[i]
        if d == 0:
            return None
        return (a, b) if d == 1 else (b, a)

    def is_oriented(self, u: int, v: int) -> bool:
        return self._dir[self.host.edge_id(u, v)] != 0

    def arcs(self) -> Iterator[Edge]:
        for (a, b), d in zip(self.host.edges, self._dir):
            if d == 1:
                yield (a, b)
            elif d == -1:
                yield (b, a)

    def unoriented_edges(self) -> Iterator[Edge]:
        for e, d in zip(self.host.edges, self._dir):
            if d == 0:
                yield e

    @property
    def oriented_count(self) -> int:
        return sum(1 for d in self._dir if d)

    def is_total(self) -> bool:
        return all(self._dir)

    @property
    def captured(self) -> set[int]:
        out = set(self._anchors)
        for (a, b), d in zip(self.host.edges, self._dir):
            if d:
                out.add(a)
                out.add(b)
        return out

    def adjacency(self) -> tuple[list[list[int]], list[list[int]]]:
        """``(out, in)`` neighbour lists following arcs only, sorted by id."""
        if self._adj_cache is None:
            n = self.host.n
            out: list[list[int]] = [[] for _ in range(n)]
            inn: list[list[int]] = [[] for _ in range(n)]
            for tail, head in self.arcs():
                out[tail].append(head)
                inn[head].append(tail)
            for lst in out:
                lst.sort()
            for lst in inn:
                lst.sort()
            self._adj_cache = (out, inn)
        return self._adj_cache

    def reversed(self) -> PartialOrientation:
        o = PartialOrientation(self.host)
        o._dir = [-d for d in self._dir]
        o._anchors = set(self._anchors)
        return o

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialOrientation):
            return NotImplemented
        return self.host == other.host and self._dir == other._dir

    def __repr__(self) -> str:
        return (
            f"PartialOrientation(n={self.host.n}, oriented={self.oriented_count}/{self.host.m})"
        )


def directed_distances(o: PartialOrientation, source: int, reverse: bool = False) -> list:
    """Distances from ``source`` along arcs (``reverse=True``: distances *to* source)."""
    o.host.check_vertex(source)
    out, inn = o.adjacency()
    return _bfs(inn if reverse else out, (source,), o.host.n)


def directed_set_distances(o: PartialOrientation, sources: Iterable[int], reverse: bool = False) -> list:
    """``d(S, v)`` for every v, or ``d(v, S)`` when ``reverse`` is set."""
    sources = list(sources)
    for s in sources:
        o.host.check_vertex(s)
    out, inn = o.adjacency()
    return _bfs(inn if reverse else out, sources, o.host.n)


def directed_distance_matrix(o: PartialOrientation, vertices: Iterable[int] | None = None) -> list[list]:
    """Rows of directed distances from every vertex in ``vertices`` (default: all)."""
    out, _ = o.adjacency()
    n = o.host.n
    vs = range(n) if vertices is None else vertices
    return [_bfs(out, (s,), n) for s in vs]


def subgraph_diameter(o: PartialOrientation, vertices: Iterable[int]) -> float:
    """Directed diameter of the digraph of ``o`` measured between ``vertices``."""
    vs = sorted(set(vertices))
    worst = 0
    for row in directed_distance_matrix(o, vs):
        for v in vs:
            if row[v] > worst:
                worst = row[v]
    return worst


def oriented_diameter_of(o: PartialOrientation) -> float:
    """Directed diameter of a total orientation; :data:`INF` signals "not strong"."""
    if not o.is_total():
        raise GraphError("orientation is partial")
    if o.host.n <= 1:
        return 0
    worst = 0
    for row in directed_distance_matrix(o):
        r = max(row)
        if r == INF:
            return INF
        worst = max(worst, r)
    return worst


def directed_radius(o: PartialOrientation) -> float:
    """Minimum over vertices of max(out-eccentricity, in-eccentricity)."""
    n = o.host.n
    rows = directed_distance_matrix(o)
    best = INF
    for v in range(n):
        ecc = max(max(rows[v]), max(rows[u][v] for u in range(n)))
        best = min(best, ecc)
    return best


# ---------------------------------------------------------------------------
# contraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """Result of contracting a vertex set to one vertex.

    ``quotient`` is simple: parallel edges are collapsed, but every host edge
    behind a quotient edge is kept in ``preimages``.  Host edges inside the
    contracted set vanish.  The contracted class is quotient vertex 0 and the
    remaining vertices keep their relative order.
    """

    host: UndirectedGraph
    quotient: UndirectedGraph
    image: tuple[int, ...]
    contracted_class: int
    preimages: dict

    def preimage(self, a: int, b: int) -> tuple[Edge, ...]:
        return self.preimages[_norm(a, b)]

    def multiplicity(self, a: int, b: int) -> int:
        return len(self.preimage(a, b))

    def is_two_edge_connected(self) -> bool:
        """2-edge-connectivity of the contracted *multigraph*.

        A collapsed quotient edge with two or more preimages can never be a
        bridge, so the simple quotient alone would under-report.
        """
        if self.quotient.n == 0 or not is_connected(self.quotient):
            return False
        multi = []
        for qe, pre in self.preimages.items():
            multi.extend([qe] * len(pre))
        return not multigraph_bridges(self.quotient.n, multi)

    def lift(self, quotient_orientation: PartialOrientation) -> PartialOrientation:
        """Orient, for every quotient arc, its smallest preimage edge the same way."""
        lifted = PartialOrientation(self.host)
        for a, b in quotient_orientation.arcs():
            for x, y in self.preimage(a, b):
                if self.image[x] == a:
                    lifted.orient(x, y)
                else:
                    lifted.orient(y, x)
                break
        return lifted


def contract(g: UndirectedGraph, s: Iterable[int]) -> QuotientMap:
    s = set(s)
    if not s:
        raise GraphError("cannot contract an empty vertex set")
    for v in s:
        g.check_vertex(v)
    image = [0] * g.n
    nxt = 1
    for v in range(g.n):
        if v not in s:
            image[v] = nxt
            nxt += 1
    preimages: dict[Edge, list[Edge]] = {}
    for u, v in g.edges:
        a, b = image[u], image[v]
        if a == b:
            continue
        preimages.setdefault(_norm(a, b), []).append((u, v))
    quotient = UndirectedGraph(nxt, preimages.keys())
    return QuotientMap(
        host=g,
        quotient=quotient,
        image=tuple(image),
        contracted_class=0,
        preimages={k: tuple(v) for k, v in preimages.items()},
    )
