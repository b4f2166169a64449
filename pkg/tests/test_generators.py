import itertools

import pytest

from madtree.errors import InfeasibleParameters, InvalidX3C
from madtree.generators import (
    X3CInstance,
    gen_cograph,
    gen_cograph_with_cotree,
    gen_partial_ktree,
    gen_random_connected,
    gen_split,
    gen_star_of_cliques,
    gen_x3c,
    reduce_x3c,
    x3c_bruteforce,
)
from madtree.graph import Graph, SpanningTree, wiener_graph, wiener_tree
from madtree.modular import modular_partition
from madtree.oracle import mad_tree_bruteforce
from madtree.treewidth import heuristic_tree_decomposition
from madtree.vertex_integrity import vi_witness


def test_reduction_single_set():
    red = reduce_x3c(X3CInstance(3, ((0, 1, 2),)))
    assert red.graph == Graph(4, [(0, 3), (1, 3), (2, 3)])
    assert red.budget == 9
    assert wiener_tree(SpanningTree(red.graph, red.graph.edges())) == 9


def test_reduction_two_equal_sets():
    red = reduce_x3c(X3CInstance(3, ((0, 1, 2), (0, 1, 2))))
    assert red.budget == 16
    assert (red.provenance["D_CC"], red.provenance["D_CX"], red.provenance["D_XX"]) == (1, 9, 6)
    assert mad_tree_bruteforce(red.graph)[1] <= 16


def test_reduction_disjoint_cover_meets_budget_exactly():
    red = reduce_x3c(X3CInstance(6, ((0, 1, 2), (3, 4, 5))))
    assert mad_tree_bruteforce(red.graph)[1] == red.budget == 58


def test_reduction_rejects_uncovered_elements():
    with pytest.raises(InvalidX3C):
        reduce_x3c(X3CInstance(6, ((0, 1, 2),)))


def test_x3c_validation():
    with pytest.raises(InvalidX3C):
        X3CInstance(4, ())
    with pytest.raises(InvalidX3C):
        X3CInstance(3, ((0, 0, 1),))
    with pytest.raises(InvalidX3C):
        X3CInstance(3, ((0, 1, 3),))


def test_planted_instances_have_covers():
    x = gen_x3c(2, 3, seed=4)
    covers = [p for p in itertools.combinations(x.sets, 2) if len(set(p[0]) | set(p[1])) == 6]
    assert covers and x3c_bruteforce(x)
    assert gen_x3c(1, 1, seed=9).sets == ((0, 1, 2),)
    assert gen_x3c(3, 5, seed=1) == gen_x3c(3, 5, seed=1)
    with pytest.raises(InfeasibleParameters):
        gen_x3c(3, 2)


def _is_split(g, clique, independent):
    return all(g.has_edge(u, v) for u, v in itertools.combinations(clique, 2)) and not any(
        g.has_edge(u, v) for u, v in itertools.combinations(independent, 2)
    )


@pytest.mark.parametrize("seed", range(10))
def test_reduced_graphs_are_split(seed):
    x = gen_x3c(2, 4, seed=seed, planted=seed % 2 == 0)
    try:
        red = reduce_x3c(x)
    except InvalidX3C:
        pytest.skip("random instance leaves an element uncovered")
    assert _is_split(red.graph, range(6, 10), range(6))


def test_small_generators():
    assert gen_cograph(1) == Graph(1)
    t = gen_partial_ktree(12, 1, 0, seed=3)
    assert t.m == 11 and t.is_connected()
    assert gen_random_connected(5, 1.0) == Graph.complete(5)
    assert gen_random_connected(7, 0.0, seed=2).is_connected()


@pytest.mark.parametrize("seed", range(15))
def test_generated_families(seed):
    g = gen_random_connected(10, 0.2, seed)
    assert g.is_connected() and g == gen_random_connected(10, 0.2, seed)
    k = gen_partial_ktree(15, 3, 5, seed)
    assert k.is_connected() and heuristic_tree_decomposition(k).width <= 3
    s = gen_split(4, 5, 0.4, seed)
    assert s.is_connected() and _is_split(s, range(4), range(4, 9))
    c, cotree = gen_cograph_with_cotree(9, seed)
    assert c.is_connected() and cotree[0] == "series"
    assert modular_partition(c).k == 2


def test_star_of_cliques():
    g = gen_star_of_cliques(3, 2)
    assert g.n == 7 and g.m == 3 + 6
    assert vi_witness(g).k == 3
    assert wiener_graph(gen_star_of_cliques(1, 1)) == 1
    with pytest.raises(InfeasibleParameters):
        gen_star_of_cliques(2, 2, hub_links=3)
