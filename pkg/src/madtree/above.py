"""Decide ``W(T) <= b`` by branching on the edges of a shortest cycle.

With ``k = b - W(G)``: deleting a cycle edge ``uv`` raises the Wiener index
by at least ``d_{G-uv}(u, v) - 1 >= L - 2`` for a cycle of length ``L``, so
a shortest cycle of length ``k + 3`` or more means no spanning tree fits the
budget.  Otherwise one of its edges is missing from every good tree and we
branch on it.  Each deletion strictly increases ``W``, bounding the depth by
the root's ``k``.

The same argument prunes harder: every one of the ``m - n + 1`` edges a
spanning tree must drop has its endpoints at distance at least ``L - 1``
afterwards, so ``W(T) - W(G) >= (m - n + 1)(L - 2)``.
"""

from __future__ import annotations

from .graph import Graph, SpanningTree, shortest_cycle, wiener_graph


def solve_above(g: Graph, b: int, stats: dict | None = None):
    """Return ``(answer, witness)``; ``witness`` is a tree with ``W <= b`` when yes.

    ``stats``, if given, receives ``nodes``, ``max_depth`` and ``root_k``.
    """
    g.require_connected()
    w0 = wiener_graph(g)
    info = {"nodes": 0, "max_depth": 0, "root_k": b - w0}
    if stats is not None:
        stats.update(info)
    if b < w0:
        return False, None
    failed: set = set()

    def rec(cur: Graph, depth: int):
        info["nodes"] += 1
        info["max_depth"] = max(info["max_depth"], depth)
        key = tuple(cur.edges())
        if key in failed:
            return None
        k = b - wiener_graph(cur)
        if k < 0:
            failed.add(key)
            return None
        if cur.m == cur.n - 1:
            return cur
        length, cycle = shortest_cycle(cur)
        if length >= k + 3 or (cur.m - cur.n + 1) * (length - 2) > k:
            failed.add(key)
            return None
        for u, v in zip(cycle, cycle[1:] + cycle[:1]):
            found = rec(cur.without_edge(u, v), depth + 1)
            if found is not None:
                return found
        failed.add(key)
        return None

    found = rec(g, 0)
    if stats is not None:
        stats.update(info)
    assert info["max_depth"] <= max(info["root_k"], 0), "branching deeper than the budget slack"
    if found is None:
        return False, None
    return True, SpanningTree(g, found.edges())
