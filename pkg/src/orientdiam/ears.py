"""Ear-growing orientations around a base vertex set.

:func:`act_ears` grows oriented ears that start in an anchor set ``A`` and
end in a base set ``B`` (``A`` a subset of ``B``) until every neighbour of
``A`` outside ``B`` is captured.  With ``A == B`` this is :func:`ct_ears`, and
repeating it with shrinking domination radius from a single central vertex
orients the whole graph (:func:`ct_orient_from_center`).

Contraction of ``B`` is handled implicitly: ears are searched in the host
graph with every vertex of ``B`` acting as one absorbing target, which keeps
the parallel edges that an explicit simple quotient would merge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import CheckResult
from .errors import PreconditionError, VerificationError
from .graph import (
    INF,
    PartialOrientation,
    UndirectedGraph,
    _bfs,
    _norm,
    contract,
    directed_set_distances,
    domination_radius,
    require_two_edge_connected,
)


@dataclass(frozen=True)
class Ear:
    vertices: tuple[int, ...]  # in arc order, source first
    a_end: int  # the anchor u in A whose edge uv triggered the ear
    b_end: int  # the endpoint reached in B by the shortest-path search
    trigger: tuple[int, int]
    shared_with: int | None = None  # index of the earlier ear whose arm was reused
    shared: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def source(self) -> int:
        return self.vertices[0]

    @property
    def sink(self) -> int:
        return self.vertices[-1]


@dataclass
class EarSystem:
    host: UndirectedGraph
    A: frozenset
    B: frozenset
    k: int
    ears: list[Ear] = field(default_factory=list)
    orientation: PartialOrientation | None = None

    @property
    def captured(self) -> set[int]:
        """``V(H)``: every vertex on some ear, including ear endpoints in ``B``."""
        out: set[int] = set()
        for ear in self.ears:
            out.update(ear.vertices)
        return out


def neighbourhood(g: UndirectedGraph, vs) -> set[int]:
    out: set[int] = set()
    for v in vs:
        out.update(g.adj[v])
    return out


def check_act_preconditions(g: UndirectedGraph, A, B, k: int) -> None:
    if k < 1:
        raise PreconditionError(f"k must be positive, got {k}")
    if not A:
        raise PreconditionError("anchor set A is empty")
    if not A <= B:
        raise PreconditionError("A must be a subset of B")
    for v in B:
        g.check_vertex(v)
    reach = domination_radius(g, B)
    if reach > k:
        raise PreconditionError(f"B is only {reach}-step dominating, need {k}")
    if not contract(g, B).is_two_edge_connected():
        raise PreconditionError("G/B is not 2-edge connected")
    reach = domination_radius(g, neighbourhood(g, A) | B)
    if reach > k - 1:
        raise PreconditionError(f"N(A) u B is only {reach}-step dominating, need {k - 1}")


def act_ears(g: UndirectedGraph, A, B, k: int, *, verify: bool = True) -> EarSystem:
    """Grow oriented A-B ears until ``N(A) \\ B`` is captured.

    Returns the ear system; its orientation satisfies, for every captured v,
    ``d(A, v) <= 2k`` and either ``d(v, A) <= 2k`` or ``d(v, B \\ A) <= 2k - 1``.
    Preconditions are enforced and, with ``verify``, every conclusion is
    checked before returning.
    """
    A, B = frozenset(A), frozenset(B)
    check_act_preconditions(g, A, B, k)
    H = PartialOrientation(g)
    system = EarSystem(g, A, B, k, orientation=H)
    targets = neighbourhood(g, A) - B
    captured: set[int] = set()
    # for each captured non-B vertex: list of (ear index, position on that ear)
    positions: dict[int, list[tuple[int, int]]] = {}

    while True:
        pending = sorted(targets - captured)
        if not pending:
            break
        v = pending[0]
        u = min(a for a in g.adj[v] if a in A)
        ear = _next_ear(g, A, B, system.ears, captured, positions, u, v)
        if verify:
            _check_ear(g, A, B, k, ear)
        H.orient_path(ear.vertices)
        idx = len(system.ears)
        system.ears.append(ear)
        for pos, w in enumerate(ear.vertices):
            captured.add(w)
            if w not in B:
                positions.setdefault(w, []).append((idx, pos))

    if verify:
        check_act_conclusions(system).raise_on_failure()
    return system


def _next_ear(g, A, B, ears, captured, positions, u: int, v: int) -> Ear:
    n = g.n
    skip = _norm(u, v)
    absorbing = B | captured
    dist = [INF] * n
    parent = [-1] * n
    dist[v] = 0
    order = [v]
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        if x != v and x in absorbing:
            continue
        for y in g.adj[x]:
            if dist[y] == INF and _norm(x, y) != skip:
                dist[y] = dist[x] + 1
                parent[y] = x
                order.append(y)

    best = None
    for x in order:
        if x == v:
            continue
        if x in B:
            cand = (dist[x], 0 if x in A else 1, x, -1, 0)
        elif x in captured:
            cand = None
            for idx, pos in positions[x]:
                ear = ears[idx]
                fwd = (dist[x] + ear.length - pos, 0 if ear.sink in A else 1, x, idx, 0)
                back = (dist[x] + pos, 0, x, idx, 1)
                for c in (fwd, back):
                    if cand is None or c < cand:
                        cand = c
        else:
            continue
        if best is None or cand < best:
            best = cand
    if best is None:
        raise VerificationError(f"no ear through {u}-{v}: G/B is not 2-edge connected")

    _, _, x, idx, backward = best
    prefix = [x]
    while prefix[-1] != v:
        prefix.append(parent[prefix[-1]])
    prefix.reverse()  # v ... x
    if idx == -1:
        return Ear(tuple([u] + prefix), a_end=u, b_end=x, trigger=(u, v))
    old = ears[idx]
    pos = next(p for i, p in positions[x] if i == idx)
    if not backward:
        verts = [u] + prefix + list(old.vertices[pos + 1:])
        return Ear(tuple(verts), a_end=u, b_end=old.sink, trigger=(u, v),
                   shared_with=idx, shared=old.vertices[pos:])
    verts = list(old.vertices[:pos]) + prefix[::-1] + [u]
    return Ear(tuple(verts), a_end=u, b_end=old.source, trigger=(u, v),
               shared_with=idx, shared=old.vertices[: pos + 1])


def _check_ear(g, A, B, k: int, ear: Ear) -> None:
    u, v = ear.trigger
    vs = ear.vertices
    inner = vs[1:-1]
    if len(set(inner)) != len(inner) or vs[0] in inner or vs[-1] in inner:
        raise VerificationError(f"ear {vs} repeats a vertex")
    if ear.source not in A:
        raise VerificationError(f"ear {vs} has source outside A")
    if any(w in B for w in vs[1:-1]):
        raise VerificationError(f"ear {vs} passes through B")
    # independent check: the ear minus uv is a shortest v-B path in (G/B) - uv
    dist = _bfs(g.adj, (v,), g.n, skip=_norm(u, v), absorbing=B)
    shortest = min(dist[b] for b in B)
    if ear.length - 1 != shortest:
        raise VerificationError(
            f"ear {vs}: path part has length {ear.length - 1}, shortest v-B is {shortest}"
        )
    if ear.length > 2 * k + 1:
        raise VerificationError(f"ear {vs} longer than 2k+1 = {2 * k + 1}")
    if ear.b_end not in A and ear.length > 2 * k:
        raise VerificationError(f"ear {vs} into B\\A longer than 2k = {2 * k}")


def check_act_conclusions(system: EarSystem) -> CheckResult:
    g, A, B, k, H = system.host, system.A, system.B, system.k, system.orientation
    res = CheckResult("anchored ear conclusions")
    captured = system.captured
    missing = (neighbourhood(g, A) - B) - captured
    if missing:
        res.fail(f"N(A)\\B not captured: {sorted(missing)[:10]}")
    for a, b in H.arcs():
        if a in B and b in B:
            res.fail(f"arc {a}->{b} inside G[B]")
    reach = domination_radius(g, captured | B)
    if reach > k - 1:
        res.fail(f"V(H) u B is {reach}-step dominating, need {k - 1}")
    from_a = directed_set_distances(H, A)
    to_a = directed_set_distances(H, A, reverse=True)
    rest = B - A
    to_rest = directed_set_distances(H, rest, reverse=True) if rest else [INF] * g.n
    for w in sorted(captured):
        if from_a[w] > 2 * k:
            res.fail(f"({w}, d(A,w)<={2 * k}, {from_a[w]})")
        if to_a[w] > 2 * k and to_rest[w] > 2 * k - 1:
            res.fail(f"({w}, d(w,A)<={2 * k} or d(w,B\\A)<={2 * k - 1}, {to_a[w]}/{to_rest[w]})")
    for ear in system.ears:
        if ear.length > 2 * k + 1 or (ear.b_end not in A and ear.length > 2 * k):
            res.fail(f"ear {ear.vertices} too long")
    return res


def ct_ears(g: UndirectedGraph, B, k: int, *, verify: bool = True) -> EarSystem:
    """Symmetric case ``A == B``: captured vertices are within ``2k`` of ``B`` both ways."""
    B = frozenset(B)
    system = act_ears(g, B, B, k, verify=verify)
    if verify:
        H = system.orientation
        from_b = directed_set_distances(H, B)
        to_b = directed_set_distances(H, B, reverse=True)
        for w in system.captured:
            if from_b[w] > 2 * k or to_b[w] > 2 * k:
                raise VerificationError(
                    f"ct ears: vertex {w} has d(B,w)={from_b[w]}, d(w,B)={to_b[w]} > {2 * k}"
                )
    return system


def reverse(o: PartialOrientation) -> PartialOrientation:
    """Flip every arc; directed distances transpose."""
    return o.reversed()


def orient_remaining(g: UndirectedGraph, partial: PartialOrientation) -> PartialOrientation:
    """Complete ``partial`` by orienting every unoriented edge from lower to higher id."""
    out = partial.copy()
    for u, v in g.edges:
        if not out.is_oriented(u, v):
            out.orient(u, v)
    return out


def ct_grow(g: UndirectedGraph, base, *, verify: bool = True) -> tuple[PartialOrientation, int]:
    """Apply :func:`ct_ears` with ``k = r, r-1, ..., 1`` starting from ``base``.

    Returns the union of the ear orientations (no edge inside ``base`` is
    touched) and ``r``, the domination radius of ``base``.  Every vertex ends
    within ``r(r+1)`` of ``base`` in both directions.
    """
    base = frozenset(base)
    if not base:
        raise PreconditionError("empty base set")
    r = domination_radius(g, base)
    if r == INF:
        raise PreconditionError("graph is disconnected")
    total = PartialOrientation(g)
    B = set(base)
    for k in range(r, 0, -1):
        system = ct_ears(g, B, k, verify=verify)
        total.update(system.orientation)
        B |= system.captured
    if verify:
        if len(B) != g.n:
            raise VerificationError("ear rounds left vertices uncaptured")
        bound = r * (r + 1)
        from_b = directed_set_distances(total, base)
        to_b = directed_set_distances(total, base, reverse=True)
        worst = max(max(from_b), max(to_b))
        if worst > bound:
            raise VerificationError(f"distance {worst} to/from base exceeds r(r+1) = {bound}")
    return total, r


def ct_orient_from_center(g: UndirectedGraph, base, *, verify: bool = True) -> PartialOrientation:
    """Total orientation built by repeated ear rounds from ``base``.

    With ``base = {c}`` for a central vertex ``c`` of radius ``r`` the result
    has radius at most ``r^2 + r``.
    """
    require_two_edge_connected(g)
    grown, _ = ct_grow(g, base, verify=verify)
    return orient_remaining(g, grown)

