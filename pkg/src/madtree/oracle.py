"""Exhaustive ground truth for small graphs.

Spanning trees are enumerated by include/exclude recursion over the sorted
edge list; an edge is only excluded when the remaining edges still connect
the graph, so every branch ends in exactly one tree.
"""

from __future__ import annotations

import os
from typing import Iterable, Iterator

from .errors import TooLarge
from .graph import Graph, SpanningTree

MAX_ORACLE_N = 16
ENV_MAX_ORACLE_N = "MADST_MAX_ORACLE_N"


def oracle_limit(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(ENV_MAX_ORACLE_N)
    return int(env) if env else MAX_ORACLE_N


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _connected_without(parent, edges, start, u, v) -> bool:
    """Whether ``u`` and ``v`` stay connected using only ``edges[start:]``."""
    p = parent[:]
    for a, b in edges[start:]:
        ra, rb = _find(p, a), _find(p, b)
        if ra != rb:
            p[ra] = rb
    return _find(p, u) == _find(p, v)


def iter_tree_edges(
    g: Graph, forced: Iterable[tuple[int, int]] = ()
) -> Iterator[tuple[tuple[int, int], ...]]:
    """Yield the sorted edge tuple of every spanning tree containing ``forced``.

    Trees come out in lexicographic order of their sorted edge lists.
    """
    g.require_connected()
    n = g.n
    parent = list(range(n))
    forced = sorted({(min(e), max(e)) for e in forced})
    for u, v in forced:
        ru, rv = _find(parent, u), _find(parent, v)
        if ru == rv:
            return
        parent[ru] = rv
    fset = set(forced)
    edges = [e for e in g.edges() if e not in fset]
    need = n - 1 - len(forced)
    m = len(edges)

    def rec(i, parent, chosen, need):
        if need == 0:
            yield tuple(sorted(forced + chosen))
            return
        while i < m:
            u, v = edges[i]
            ru, rv = _find(parent, u), _find(parent, v)
            if ru != rv:
                break
            i += 1
        else:
            return
        if m - i < need:
            return
        p2 = parent[:]
        p2[ru] = rv
        chosen.append(edges[i])
        yield from rec(i + 1, p2, chosen, need - 1)
        chosen.pop()
        if _connected_without(parent, edges, i + 1, ru, rv):
            yield from rec(i + 1, parent, chosen, need)

    if n <= 1:
        yield ()
        return
    yield from rec(0, parent, [], need)


def _guard(g: Graph, max_n: int | None) -> None:
    limit = oracle_limit(max_n)
    if g.n > limit:
        raise TooLarge(f"oracle refuses n={g.n} > {limit} (set {ENV_MAX_ORACLE_N} to override)")


def enumerate_spanning_trees(g: Graph, max_n: int | None = None) -> Iterator[SpanningTree]:
    _guard(g, max_n)
    for edges in iter_tree_edges(g):
        yield SpanningTree(g, edges)


def _bareiss_det(a: list[list[int]]) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    a = [row[:] for row in a]
    k = len(a)
    if k == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(k - 1):
        if a[i][i] == 0:
            for r in range(i + 1, k):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
        prev = a[i][i]
    return sign * a[k - 1][k - 1]


def count_spanning_trees(g: Graph, max_n: int | None = None) -> int:
    """Kirchhoff count: determinant of the Laplacian with row/column 0 removed."""
    _guard(g, max_n)
    g.require_connected()
    n = g.n
    lap = [[0] * n for _ in range(n)]
    for u, v in g.edges():
        lap[u][v] = lap[v][u] = -1
        lap[u][u] += 1
        lap[v][v] += 1
    return _bareiss_det([row[1:] for row in lap[1:]])


def wiener_of_edges(n: int, edges) -> int:
    """Wiener index of the tree given by ``edges`` (no validation)."""
    if n <= 1:
        return 0
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    parent = [-1] * n
    parent[0] = 0
    order = [0]
    for x in order:
        for y in adj[x]:
            if parent[y] == -1:
                parent[y] = x
                order.append(y)
    size = [1] * n
    total = 0
    for x in reversed(order[1:]):
        s = size[x]
        size[parent[x]] += s
        total += s * (n - s)
    return total


def mad_tree_bruteforce(g: Graph, max_n: int | None = None) -> tuple[SpanningTree, int]:
    """Minimum-Wiener spanning tree by exhaustive enumeration.

    Ties go to the lexicographically smallest sorted edge list, which is the
    first optimum in enumeration order.
    """
    _guard(g, max_n)
    best = None
    best_w = None
    for edges in iter_tree_edges(g):
        w = wiener_of_edges(g.n, edges)
        if best_w is None or w < best_w:
            best, best_w = edges, w
    return SpanningTree(g, best), best_w


def all_mad_trees(g: Graph, max_n: int | None = None) -> tuple[list[SpanningTree], int]:
    """Every optimal tree; used by the structural property tests."""
    _guard(g, max_n)
    trees = []
    best_w = None
    for edges in iter_tree_edges(g):
        w = wiener_of_edges(g.n, edges)
        if best_w is None or w < best_w:
            trees, best_w = [edges], w
        elif w == best_w:
            trees.append(edges)
    return [SpanningTree(g, e) for e in trees], best_w
