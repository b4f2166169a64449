import random

import networkx as nx
import pytest

from madtree.generators import gen_random_connected
from madtree.graph import Graph


def from_nx(h) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph(len(mapping), [(mapping[u], mapping[v]) for u, v in h.edges()])


def connected_atlas(max_n: int):
    """Every connected graph on 1..max_n vertices, one per isomorphism class."""
    out = []
    for h in nx.graph_atlas_g():
        if 0 < h.number_of_nodes() <= max_n and nx.is_connected(h):
            out.append(from_nx(h))
    return out


def random_graphs(count: int, max_n: int, seed: int = 0, min_n: int = 2):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(min_n, max_n)
        p = rng.choice([0.3, 0.5, 0.7])
        out.append(gen_random_connected(n, p, seed=rng.randrange(10**9)))
    return out


def complete_multipartite(parts) -> Graph:
    return from_nx(nx.complete_multipartite_graph(*parts))


@pytest.fixture(scope="session")
def atlas6():
    return connected_atlas(6)


@pytest.fixture(scope="session")
def atlas7():
    return connected_atlas(7)


@pytest.fixture(scope="session")
def random8():
    return random_graphs(100, 8, seed=2024)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
