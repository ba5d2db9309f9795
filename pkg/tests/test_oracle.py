import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orientdiam.errors import BudgetExceeded, GraphError
from orientdiam.generators import complete, cycle, petersen, theta
from orientdiam.graph import INF, PartialOrientation, UndirectedGraph, is_two_edge_connected
from orientdiam.oracle import (
    branch_and_bound_oriented_diameter,
    exact_oriented_diameter,
    exhaustive_oriented_diameter,
    verify_orientation,
)
from orientdiam.pipelines import orient_general

from conftest import two_ec_graphs


@pytest.mark.parametrize("n", range(3, 11))
def test_cycles(n):
    res = exact_oriented_diameter(cycle(n))
    assert res.optimum == n - 1
    assert verify_orientation(cycle(n), res.certificate) == (True, n - 1)


def test_k4_both_methods():
    assert exhaustive_oriented_diameter(complete(4)).optimum == 3
    assert exact_oriented_diameter(complete(4)).optimum == 3


def test_petersen():
    res = exact_oriented_diameter(petersen())
    assert res.optimum == 6
    assert verify_orientation(petersen(), res.certificate) == (True, 6)


def test_bridge_means_no_orientation():
    g = UndirectedGraph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert exact_oriented_diameter(g).optimum is None
    assert exhaustive_oriented_diameter(g).optimum is None


def test_budget():
    with pytest.raises(BudgetExceeded):
        exhaustive_oriented_diameter(petersen())
    with pytest.raises(BudgetExceeded):
        exact_oriented_diameter(complete(8))
    with pytest.raises(BudgetExceeded):
        exact_oriented_diameter(cycle(6), 5)


def test_verify_examples():
    g = cycle(5)
    o = PartialOrientation(g)
    o.orient_path([0, 1, 2, 3, 4, 0])
    assert verify_orientation(g, o) == (True, 4)
    k4 = complete(4)
    t = PartialOrientation(k4)
    for u, v in k4.edges:
        t.orient(u, v)  # vertex 3 is a sink
    assert verify_orientation(k4, t) == (False, INF)
    with pytest.raises(GraphError):
        verify_orientation(k4, PartialOrientation(k4))


@given(st.integers(3, 7), st.integers(0, 2**16), st.floats(0.3, 0.9))
def test_bnb_matches_exhaustive(n, seed, p):
    G = nx.gnp_random_graph(n, p, seed=seed)
    g = UndirectedGraph(n, list(G.edges()))
    if g.m > 12 or not nx.is_connected(G):
        return
    a = exhaustive_oriented_diameter(g)
    b = branch_and_bound_oriented_diameter(g)
    assert a.optimum == b.optimum
    assert (a.optimum is not None) == is_two_edge_connected(g)
    if b.certificate is not None:
        assert verify_orientation(g, b.certificate) == (True, b.optimum)


@given(two_ec_graphs(max_n=12))
def test_oracle_below_pipeline(g):
    if g.m > 14:
        return
    _, rep = orient_general(g)
    assert exact_oriented_diameter(g).optimum <= rep.achieved


def test_theta_values():
    # both results cross-checked by exhaustive enumeration
    assert exhaustive_oriented_diameter(theta(2, 2, 2)).optimum == 4
    assert exhaustive_oriented_diameter(theta(2, 3, 4)).optimum == 7
    assert exact_oriented_diameter(theta(2, 3, 4)).optimum == 7
