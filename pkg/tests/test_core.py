import dataclasses
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orientdiam.core import (
    core_diameter_bound,
    core_distance_bounds,
    domination_report,
    level_partition,
    oriented_core,
    verify_core_distances,
)
from orientdiam.errors import NotTwoEdgeConnectedError, PreconditionError, VerificationError
from orientdiam.generators import complete, cycle, petersen, random_2ec
from orientdiam.graph import (
    PartialOrientation,
    UndirectedGraph,
    diameter,
    directed_distances,
    shortest_cycle_through_edge,
    subgraph_diameter,
)
from orientdiam.pipelines import CORE_CELL_BOUNDS, check_table

from conftest import two_ec_graphs


def test_c5_partition():
    part = level_partition(cycle(5), 0, 1)  # p=0, q=1, a=2, b=3, c=4
    assert (part.k, part.h) == (5, 2)
    assert [part.cell(v) for v in range(5)] == [(0, 1), (1, 0), (2, 1), (2, 2), (1, 2)]
    assert [part.level(v) for v in (4, 3, 2)] == [1, 0, -1]


def test_k4_partition():
    part = level_partition(complete(4), 0, 1)
    assert part.k == 3
    assert part.cell(2) == part.cell(3) == (1, 1)


def test_petersen_partition():
    part = level_partition(petersen(), 0, 1)
    assert part.k == 5
    cells = part.cells()
    assert {c for c in cells if c not in ((0, 1), (1, 0))} == {(1, 2), (2, 1), (2, 2)}


def test_c5_core_is_directed_cycle():
    H, part = oriented_core(cycle(5), 0, 1)
    assert sorted(H.arcs()) == [(0, 4), (1, 0), (2, 1), (3, 2), (4, 3)]
    assert directed_distances(H, 0)[1] == 4 == part.k - 1
    assert directed_distances(H, 0)[3] == 2 == part.h
    rep = domination_report(cycle(5), H, part)
    assert (rep.d1, rep.d0, rep.dm1) == (0, 0, 0)


def test_petersen_core():
    g = petersen()
    for p, q in g.edges:
        H, part = oriented_core(g, p, q)
        assert H.captured == set(range(10))
        assert subgraph_diameter(H, range(10)) <= 7
        from_p = directed_distances(H, p)
        for y in part.cells()[(2, 1)]:
            assert from_p[y] <= 3


def test_bridge_rejected():
    with pytest.raises(NotTwoEdgeConnectedError):
        oriented_core(UndirectedGraph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]), 0, 1)


def test_core_diameter_bound_values():
    part = level_partition(cycle(9), 0, 1)
    assert core_diameter_bound(dataclasses.replace(part, k=5), 4) == 17
    assert core_diameter_bound(part, 4) == 15  # k = 9, h = d
    assert core_diameter_bound(level_partition(petersen(), 0, 1), 2) == 7
    with pytest.raises(PreconditionError):
        core_diameter_bound(level_partition(complete(4), 0, 1), 1)


def test_distance_bound_rows():
    # h < d: stage-2 rows dominate; h = d: stage-1 rows dominate
    assert core_distance_bounds((1, 2), 2, 4) == (1, 7)
    assert core_distance_bounds((2, 2), 2, 4) == (2, 2)
    assert core_distance_bounds((3, 3), 2, 4) == (5, 5)
    assert core_distance_bounds((2, 1), 2, 4) == (9, 1)
    assert core_distance_bounds((2, 1), 2, 2) == (3, 1)
    with pytest.raises(VerificationError):
        core_distance_bounds((1, 1), 2, 4)


def test_verifier_reports_witness():
    g = cycle(5)
    H, part = oriented_core(g, 0, 1)
    bad = PartialOrientation(g)
    for a, b in H.arcs():
        if (a, b) != (1, 0):
            bad.orient(b, a)
    bad.orient(1, 0)
    res = verify_core_distances(bad, part, 2)
    assert not res.ok
    assert any("d(p,w)" in w for w in res.witnesses)


def _check_stage_rules(H, part):
    for a, b in H.arcs():
        if (a, b) == (part.q, part.p):
            continue
        cls = part.edge_class(a, b)
        assert cls != "intra-cell"
        if cls == "vertical":
            assert part.level(a) > part.level(b)
        elif part.level(a) == 1:
            assert part.width(a) < part.width(b)
        elif part.level(a) == -1:
            assert part.width(a) > part.width(b)


@given(two_ec_graphs(max_n=50), st.integers(0, 2**16))
def test_core_contract(g, seed):
    rng = random.Random(seed)
    d = diameter(g)
    for p, q in rng.sample(list(g.edges), min(3, g.m)):
        if rng.random() < 0.5:
            p, q = q, p
        H, part = oriented_core(g, p, q, d=d)  # verifies every bound internally
        assert verify_core_distances(H, part, d).ok
        assert {p, q} <= H.captured
        assert H.arc(p, q) == (q, p)
        _check_stage_rules(H, part)
        rep = domination_report(g, H, part, d=d)
        assert rep.check(part, d, H.captured).ok
        if part.k >= 4:
            cells = part.cells()
            assert cells.get((1, 2)) and cells.get((2, 1))
            assert subgraph_diameter(H, H.captured) <= core_diameter_bound(part, d)


@given(st.integers(0, 400))
def test_core_table_on_diameter4(seed):
    rng = random.Random(seed)
    n = rng.randint(12, 60)
    g = random_2ec(n, n + rng.randint(0, n // 2), seed, base="tree", depth=2,
                   diameter_filter=4, max_tries=200)
    for p, q in g.edges:
        if shortest_cycle_through_edge(g, p, q) >= 5:
            H, part = oriented_core(g, p, q, d=4)
            assert check_table(H, part, CORE_CELL_BOUNDS, "core").ok
            rep = domination_report(g, H, part, d=4)
            assert max(rep.d1, rep.d0, rep.dm1) <= 2
            if part.k == 6:
                assert rep.d0 <= 1
            break
