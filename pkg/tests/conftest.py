import networkx as nx
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from orientdiam.generators import random_2ec

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def two_ec_graphs(draw, min_n=4, max_n=40):
    n = draw(st.integers(min_n, max_n))
    extra = draw(st.integers(0, n))
    seed = draw(st.integers(0, 2**20))
    base = draw(st.sampled_from(["cycle", "tree"]))
    depth = draw(st.integers(1, 4))
    return random_2ec(n, n + extra, seed, base=base, depth=depth)


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def to_nx_digraph(o):
    D = nx.DiGraph()
    D.add_nodes_from(range(o.host.n))
    D.add_edges_from(o.arcs())
    return D
