"""Deterministic graph families for tests and sweeps."""

from __future__ import annotations

import random

from .errors import PreconditionError
from .graph import UndirectedGraph, bridges, diameter

MAX_TRIES = 10_000


def cycle(n: int) -> UndirectedGraph:
    if n < 3:
        raise PreconditionError("a cycle needs at least 3 vertices")
    return UndirectedGraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def theta(*lengths: int) -> UndirectedGraph:
    """Two hubs (0 and 1) joined by internally disjoint paths of the given lengths."""
    if len(lengths) < 2 or min(lengths) < 1 or sorted(lengths)[1] < 2:
        raise PreconditionError(f"bad theta path lengths {lengths}")
    edges = []
    n = 2
    for length in lengths:
        path = [0] + list(range(n, n + length - 1)) + [1]
        n += length - 1
        edges.extend(zip(path, path[1:]))
    return UndirectedGraph(n, edges)


def petersen() -> UndirectedGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return UndirectedGraph(10, outer + spokes + inner)


def torus_grid(rows: int, cols: int) -> UndirectedGraph:
    if rows < 3 or cols < 3:
        raise PreconditionError("torus grid needs at least 3 rows and 3 columns")
    edges = set()
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            edges.add(tuple(sorted((v, r * cols + (c + 1) % cols))))
            edges.add(tuple(sorted((v, ((r + 1) % rows) * cols + c))))
    return UndirectedGraph(rows * cols, sorted(edges))


def _side(n: int, edges: set, bridge) -> set[int]:
    """Vertices reachable from ``bridge[0]`` without crossing the bridge."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        if (u, v) != bridge:
            adj[u].append(v)
            adj[v].append(u)
    seen = {bridge[0]}
    stack = [bridge[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _random_2ec_once(n: int, m: int, rng: random.Random, base: str, depth: int) -> UndirectedGraph:
    edges: set[tuple[int, int]] = set()
    if base == "cycle":
        perm = list(range(n))
        rng.shuffle(perm)
        for i in range(n):
            u, v = perm[i], perm[(i + 1) % n]
            edges.add((min(u, v), max(u, v)))
    elif base == "tree":
        # random tree of bounded height rooted at 0
        level = [0] * n
        for v in range(1, n):
            parent = rng.choice([u for u in range(v) if level[u] < depth])
            level[v] = level[parent] + 1
            edges.add((parent, v))
    else:
        raise PreconditionError(f"unknown base {base!r}")
    max_m = n * (n - 1) // 2
    target = min(m, max_m)
    while len(edges) < target:
        u, v = rng.sample(range(n), 2)
        edges.add((min(u, v), max(u, v)))
    while True:
        g = UndirectedGraph(n, sorted(edges))
        bs = bridges(g)
        if not bs:
            return g
        b = bs[rng.randrange(len(bs))]
        side = _side(n, edges, b)
        other = [v for v in range(n) if v not in side]
        options = [
            (min(x, y), max(x, y)) for x in sorted(side) for y in other
            if (min(x, y), max(x, y)) not in edges
        ]
        edges.add(options[rng.randrange(len(options))])


def random_2ec(
    n: int,
    m: int,
    seed: int = 0,
    *,
    base: str = "cycle",
    depth: int = 2,
    diameter_filter: int | None = None,
    max_tries: int = MAX_TRIES,
) -> UndirectedGraph:
    """Random 2-edge-connected graph on ``n`` vertices with at least ``m`` edges.

    ``base="cycle"`` starts from a random Hamiltonian cycle; ``base="tree"``
    starts from a random tree of height at most ``depth`` and patches bridges
    with random edges across them.  With ``diameter_filter`` samples are
    redrawn (up to ``max_tries`` times) until the diameter matches.
    """
    if n < 3:
        raise PreconditionError("need at least 3 vertices")
    rng = random.Random(seed)
    for _ in range(max_tries):
        g = _random_2ec_once(n, m, rng, base, depth)
        if diameter_filter is None or diameter(g) == diameter_filter:
            return g
    raise PreconditionError(
        f"no graph with diameter {diameter_filter} after {max_tries} tries (n={n}, m={m})"
    )


FAMILIES = ("cycle", "complete", "theta", "petersen", "torus_grid", "random_2ec")


def generate(family: str, params: dict | None = None, seed: int = 0) -> UndirectedGraph:
    params = dict(params or {})
    if family == "cycle":
        return cycle(int(params.get("n", 5)))
    if family == "complete":
        return complete(int(params.get("n", 4)))
    if family == "theta":
        lengths = params.get("lengths", (2, 3, 4))
        if isinstance(lengths, str):
            lengths = [int(x) for x in lengths.split(",")]
        return theta(*lengths)
    if family == "petersen":
        return petersen()
    if family == "torus_grid":
        return torus_grid(int(params.get("rows", 3)), int(params.get("cols", 3)))
    if family == "random_2ec":
        dfilt = params.get("diameter")
        return random_2ec(
            int(params.get("n", 20)),
            int(params.get("m", 30)),
            seed,
            base=params.get("base", "cycle"),
            depth=int(params.get("depth", 2)),
            diameter_filter=None if dfilt is None else int(dfilt),
            max_tries=int(params.get("max_tries", MAX_TRIES)),
        )
    raise PreconditionError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
