import random

import pytest

from madtree.errors import InvalidDecomposition
from madtree.generators import gen_partial_ktree
from madtree.graph import Graph
from madtree.oracle import count_spanning_trees, mad_tree_bruteforce
from madtree.treewidth import (
    DPIndex,
    TreeDecomposition,
    heuristic_tree_decomposition,
    process_forget,
    process_introduce,
    process_join,
    process_leaf,
    run_dp,
    solve_treewidth,
    to_nice,
    trivial_decomposition,
)
from madtree.treewidth.decomposition import FORGET, INTRODUCE, JOIN, LEAF

from conftest import random_graphs


def test_heuristic_width_examples():
    assert heuristic_tree_decomposition(Graph.path(6)).width == 1
    assert heuristic_tree_decomposition(Graph.cycle(7)).width == 2
    assert heuristic_tree_decomposition(Graph.complete(5)).width == 4


def test_violations_are_reported():
    g = Graph.path(3)
    bad = TreeDecomposition((frozenset({0, 1}), frozenset({2})), ((0, 1),))
    assert any("edge (2, 3)" in p for p in bad.violations(g))
    split = TreeDecomposition((frozenset({0, 1}), frozenset({1, 2}), frozenset({0})), ((0, 1), (1, 2)))
    assert any("vertex 1" in p for p in split.violations(g))
    with pytest.raises(InvalidDecomposition):
        split.validate(g)


def test_nice_single_bag():
    nice = to_nice(TreeDecomposition((frozenset({0}),), ()), Graph(1))
    assert [nd.kind for nd in nice.nodes] == [LEAF]


def test_nice_single_edge():
    g = Graph.path(2)
    nice = to_nice(trivial_decomposition(g), g)
    assert [nd.kind for nd in nice.nodes] == [LEAF, INTRODUCE, FORGET]
    assert nice.nodes[-1].bag == (0,)


def test_nice_path_of_bags_has_no_join():
    g = Graph.path(4)
    td = TreeDecomposition((frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3})), ((0, 1), (1, 2)))
    nice = to_nice(td, g)
    kinds = [nd.kind for nd in nice.nodes]
    assert JOIN not in kinds and kinds.count(LEAF) == 1
    assert INTRODUCE in kinds and FORGET in kinds
    nice.validate(g)


@pytest.mark.parametrize("g", random_graphs(20, 9, seed=31), ids=lambda g: f"n{g.n}m{g.m}")
def test_nice_conversion_validates(g):
    for method in ("min_fill", "min_degree"):
        td = heuristic_tree_decomposition(g, method)
        nice = to_nice(td, g)
        nice.validate(g)
        assert nice.width == td.width


def test_leaf_table():
    assert process_leaf((0,), 1) == {DPIndex((), (), (0,), (0,)): 0}
    assert process_leaf((2,), 4) == {DPIndex((), (), (3,), (0,)): 0}


def test_introduce_isolated_copies():
    g = Graph(2, [(0, 1)])
    child = {DPIndex((), (), (1,), (0,)): 0}
    table = process_introduce((0, 1), 1, child, Graph(2), 2)
    assert table == {DPIndex((), (), (1, 1), (0, 0)): 0}
    table = process_introduce((0, 1), 1, child, g, 2)
    assert DPIndex((), (), (1, 1), (0, 0)) in table
    assert DPIndex(((0, 1),), (), (0, 0), (0, 0)) in table


def test_introduce_moves_mass_of_the_new_side():
    # with 20 vertices, u joins v and its side of uv holds 14 vertices
    n = 20
    g = Graph(n, [(0, 1)])
    child = {DPIndex((), (), (n - 1,), (0,)): 0}
    table = process_introduce((0, 1), 1, child, g, n)
    hits = [idx for idx in table if idx.F == ((0, 1),) and idx.abov[1] == 13]
    assert len(hits) == 1
    assert child and list(child)[0].abov[0] == hits[0].abov[0] + 14
    assert all(idx.below[1] == 0 for idx in table)


def test_join_with_trivial_child_is_identity():
    n = 5
    left = {DPIndex((), (), (1,), (3,)): 7, DPIndex((), (), (4,), (0,)): 0, DPIndex((), (), (0,), (4,)): 9}
    right = process_leaf((3,), n)
    assert process_join((3,), left, right, n) == left


def test_forget_single_edge_costs_n_minus_one():
    n = 6
    child = {DPIndex(((0, 1),), (), (0, n - 2), (0, 0)): 0}
    table = process_forget((1,), 0, child, Graph.path(2), n)
    assert table == {DPIndex((), (), (n - 2,), (1,)): n - 1}


def test_forget_with_two_vertices_below():
    n = 9
    child = {DPIndex(((0, 1),), (), (0, n - 4), (2, 0)): 5}
    table = process_forget((1,), 0, child, Graph.path(2), n)
    assert table == {DPIndex((), (), (n - 4,), (3,)): 5 + 3 * (n - 3)}


def test_forget_merges_groups_with_f_neighbours():
    # u=0 has F-neighbours y=4, z=5 and below connections {u,v,w} and {u,x}
    n = 20
    bag = (0, 1, 2, 3, 4, 5)
    idx = DPIndex(((0, 4), (0, 5)), ((0, 1, 2), (0, 3)), (0, 2, 2, 2, 2, 2), (1, 1, 1, 1, 1, 1))
    table = process_forget(bag[1:], 0, {idx: 0}, Graph(6), n)
    (key,) = table
    assert key.C == ((1, 2, 3, 4, 5),)
    assert key.F == ()


def test_forget_requires_nothing_above():
    child = {DPIndex(((0, 1),), (), (1, 1), (0, 0)): 0}
    assert process_forget((1,), 0, child, Graph.path(2), 3) == {}


def test_forget_drops_dangling_pair():
    child = {DPIndex((), ((0, 1),), (0, 1), (1, 0)): 4}
    assert process_forget((1,), 0, child, Graph(2), 3) == {DPIndex((), (), (1,), (0,)): 4}


def test_solve_examples():
    assert solve_treewidth(Graph.cycle(4))[1] == 10
    assert solve_treewidth(Graph.path(5))[1] == 20
    assert solve_treewidth(Graph.complete(4))[1] == 9
    assert solve_treewidth(Graph.complete(4), b=8)[0] is False
    assert solve_treewidth(Graph(1))[1] == 0


def _partial_ktrees(count, k, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(k + 1, 10)
        g = gen_partial_ktree(n, k, rng.randint(0, n), seed=rng.randrange(10**6))
        if count_spanning_trees(g) <= 60_000:
            out.append(g)
    return out


@pytest.mark.parametrize("g", _partial_ktrees(50, 2, 32) + _partial_ktrees(50, 3, 33), ids=lambda g: f"n{g.n}m{g.m}")
def test_matches_oracle_on_partial_ktrees(g):
    w = mad_tree_bruteforce(g)[1]
    assert solve_treewidth(g)[1] == w
    assert solve_treewidth(g, upper_bound=w, check=True)[1] == w


@pytest.mark.parametrize("g", random_graphs(25, 6, seed=34), ids=lambda g: f"n{g.n}m{g.m}")
def test_unpruned_tables_satisfy_necessary_conditions(g):
    w = mad_tree_bruteforce(g)[1]
    assert solve_treewidth(g, upper_bound=None, check=True)[1] == w


@pytest.mark.parametrize("g", random_graphs(25, 7, seed=35), ids=lambda g: f"n{g.n}m{g.m}")
def test_every_entry_bounded_by_optimum(g):
    # with the optimum as upper bound every stored partial cost stays below it
    w = mad_tree_bruteforce(g)[1]
    tables = run_dp(g, to_nice(heuristic_tree_decomposition(g), g), upper_bound=w, check=True)
    assert tables[-1] == {DPIndex((), (), (0,), (g.n - 1,)): w}


@pytest.mark.parametrize("g", random_graphs(20, 8, seed=36), ids=lambda g: f"n{g.n}m{g.m}")
def test_decomposition_independence(g):
    a = solve_treewidth(g, heuristic_tree_decomposition(g, "min_fill"))[1]
    b = solve_treewidth(g, heuristic_tree_decomposition(g, "min_degree"))[1]
    c = solve_treewidth(g, trivial_decomposition(g))[1]
    assert a == b == c


def test_decomposition_with_empty_bag_is_handled():
    g = Graph.path(3)
    td = TreeDecomposition((frozenset({0, 1}), frozenset(), frozenset({1, 2})), ((0, 1), (1, 2)))
    assert solve_treewidth(g, td.without_empty_bags())[1] == 4
