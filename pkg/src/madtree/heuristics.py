"""Quick spanning trees that give valid upper bounds on the optimum."""

from __future__ import annotations

from collections import deque

from .graph import Graph, SpanningTree, norm_edge
from .oracle import wiener_of_edges


def bfs_tree_edges(g: Graph, root: int) -> list[tuple[int, int]]:
    seen = [False] * g.n
    seen[root] = True
    edges = []
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if not seen[y]:
                seen[y] = True
                edges.append(norm_edge(x, y))
                queue.append(y)
    return edges


def _improve(g: Graph, edges: set, w: int) -> tuple[set, int]:
    """First-improvement edge swaps until no single swap helps."""
    n = g.n
    improved = True
    while improved:
        improved = False
        for e in g.edges():
            if e in edges:
                continue
            adj: dict[int, list[int]] = {v: [] for v in range(n)}
            for x, y in edges:
                adj[x].append(y)
                adj[y].append(x)
            u, v = e
            parent = {u: None}
            queue = deque([u])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in parent:
                        parent[y] = x
                        queue.append(y)
            path = []
            x = v
            while parent[x] is not None:
                path.append(norm_edge(x, parent[x]))
                x = parent[x]
            for f in path:
                cand = (edges - {f}) | {e}
                cw = wiener_of_edges(n, cand)
                if cw < w:
                    edges, w = cand, cw
                    improved = True
                    break
    return edges, w


def heuristic_upper_bound(g: Graph, local_search: bool = True) -> tuple[SpanningTree, int]:
    """Best BFS tree over all roots, then optionally polished by edge swaps."""
    g.require_connected()
    best = None
    for r in range(g.n):
        edges = bfs_tree_edges(g, r)
        w = wiener_of_edges(g.n, edges)
        if best is None or w < best[1]:
            best = (set(edges), w)
    edges, w = best
    if local_search and g.n > 2:
        edges, w = _improve(g, edges, w)
    return SpanningTree(g, edges), w
