"""Graph and spanning-tree types plus the distance machinery every solver uses.

Vertices are dense ids ``0..n-1``.  Wiener values are exact integers; the
bound ``W <= n**3`` keeps them far below the 64-bit range we guard against.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DisconnectedGraph,
    EdgeNotInTree,
    InvalidGraph,
    InvalidTree,
    NotAPath,
)

UNREACHABLE = math.inf
WIENER_LIMIT = 2**64


def _checked(value: int) -> int:
    if value >= WIENER_LIMIT:
        raise OverflowError(f"Wiener value {value} exceeds 64-bit range")
    return value


def norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph with immutable adjacency.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``; ``nbrs[v]`` is the
    same set as a frozenset for O(1) membership tests.
    """

    __slots__ = ("n", "m", "adj", "nbrs", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidGraph("negative vertex count")
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidGraph(f"self-loop at {u}")
            sets[u].add(v)
            sets[v].add(u)
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in sets)
        self.nbrs = tuple(frozenset(s) for s in sets)
        self.m = sum(len(s) for s in sets) // 2
        self._edges = None

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise InvalidGraph("cycles need at least 3 vertices")
        return cls(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def star(cls, leaves: int) -> Graph:
        return cls(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        if self._edges is None:
            self._edges = tuple((u, v) for u in range(self.n) for v in self.adj[u] if u < v)
        return list(self._edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbrs[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def require_connected(self) -> None:
        if not self.is_connected():
            raise DisconnectedGraph(f"graph with n={self.n}, m={self.m} is not connected")

    def induced(self, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled to ``0..k-1``; also returns new->old ids."""
        order = sorted(vertices)
        index = {v: i for i, v in enumerate(order)}
        edges = [
            (index[u], index[v]) for u in order for v in self.adj[u] if v in index and u < v
        ]
        return Graph(len(order), edges), order

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def without_edge(self, u: int, v: int) -> Graph:
        e = norm_edge(u, v)
        return Graph(self.n, (f for f in self.edges() if f != e))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class SpanningTree:
    """A spanning tree of ``host``; construction validates every invariant."""

    __slots__ = ("host", "edges", "adj")

    def __init__(self, host: Graph, edges: Iterable[tuple[int, int]]):
        edge_list = sorted({norm_edge(u, v) for u, v in edges})
        n = host.n
        if len(edge_list) != max(n - 1, 0):
            raise InvalidTree(f"expected {max(n - 1, 0)} edges, got {len(edge_list)}")
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edge_list:
            if not host.has_edge(u, v):
                raise InvalidTree(f"edge ({u}, {v}) is not in the host graph")
            adj[u].append(v)
            adj[v].append(u)
        if n > 0:
            seen = [False] * n
            seen[0] = True
            stack = [0]
            count = 1
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        count += 1
                        stack.append(y)
            if count != n:
                raise InvalidTree("edges do not connect all vertices")
        self.host = host
        self.edges = tuple(edge_list)
        self.adj = tuple(tuple(sorted(a)) for a in adj)

    @property
    def n(self) -> int:
        return self.host.n

    def as_graph(self) -> Graph:
        return Graph(self.host.n, self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def subtree_sizes(self, root: int = 0) -> tuple[list[int], list[int]]:
        """Parent array and subtree sizes for the tree rooted at ``root``."""
        n = self.n
        parent = [-1] * n
        order = [root]
        parent[root] = root
        for x in order:
            for y in self.adj[x]:
                if parent[y] == -1:
                    parent[y] = x
                    order.append(y)
        size = [1] * n
        for x in reversed(order[1:]):
            size[parent[x]] += size[x]
        parent[root] = -1
        return parent, size

    def path(self, u: int, v: int) -> list[int]:
        parent, _ = self.subtree_sizes(u)
        out = [v]
        while out[-1] != u:
            out.append(parent[out[-1]])
        out.reverse()
        return out

    def __eq__(self, other):
        return isinstance(other, SpanningTree) and self.edges == other.edges and self.host == other.host

    def __hash__(self):
        return hash(self.edges)

    def __repr__(self):
        return f"SpanningTree(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class DistanceProfile:
    source: int
    dist: tuple

    def __getitem__(self, v):
        return self.dist[v]

    def total(self) -> int:
        if any(d == UNREACHABLE for d in self.dist):
            raise DisconnectedGraph(f"vertex {self.source} does not reach every vertex")
        return sum(self.dist)


def bfs_distances(g: Graph, v: int) -> DistanceProfile:
    dist = [UNREACHABLE] * g.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for y in g.adj[x]:
            if dist[y] == UNREACHABLE:
                dist[y] = dx
                queue.append(y)
    return DistanceProfile(v, tuple(dist))


def wiener_graph(g: Graph) -> int:
    """Sum of distances over unordered vertex pairs (all-pairs BFS)."""
    g.require_connected()
    total = sum(bfs_distances(g, v).total() for v in range(g.n))
    return _checked(total // 2)


def wiener_tree(t: SpanningTree) -> int:
    """Wiener index of a tree from edge contributions, in linear time."""
    if not isinstance(t, SpanningTree):
        raise InvalidTree("expected a SpanningTree")
    n = t.n
    if n <= 1:
        return 0
    _, size = t.subtree_sizes(0)
    return _checked(sum(size[v] * (n - size[v]) for v in range(1, n)))


def edge_contribution(t: SpanningTree, e: tuple[int, int]) -> int:
    """``|T_uv^u| * |T_uv^v|`` for the tree edge ``e = uv``."""
    u, v = norm_edge(*e)
    if (u, v) not in t.edges:
        raise EdgeNotInTree(f"({u}, {v}) is not an edge of the tree")
    parent, size = t.subtree_sizes(u)
    s = size[v]
    return s * (t.n - s)


def median_vertices(g: Graph) -> set[int]:
    g.require_connected()
    totals = [bfs_distances(g, v).total() for v in range(g.n)]
    best = min(totals)
    return {v for v, s in enumerate(totals) if s == best}


def tree_median_vertices(t: SpanningTree) -> set[int]:
    return median_vertices(t.as_graph())


def is_induced_path(g: Graph, path: Sequence[int]) -> bool:
    if len(set(path)) != len(path):
        raise NotAPath("path repeats a vertex")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise NotAPath(f"consecutive vertices {a}, {b} are not adjacent")
    for i in range(len(path)):
        for j in range(i + 2, len(path)):
            if g.has_edge(path[i], path[j]):
                return False
    return True


def shortest_cycle(g: Graph) -> tuple[int, list[int]] | None:
    """Girth and a cycle attaining it, or ``None`` for forests.

    BFS from every root; the first strictly shorter closing edge wins, so
    ties resolve towards the smallest root and lexicographically smallest
    closing edge.
    """
    best = None
    for r in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[r] = 0
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if dist[y] == -1:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
        for x, y in g.edges():
            if dist[x] < 0 or parent[y] == x or parent[x] == y:
                continue
            length = dist[x] + dist[y] + 1
            if best is None or length < best[0]:
                left = [x]
                while left[-1] != r:
                    left.append(parent[left[-1]])
                right = [y]
                while right[-1] != r:
                    right.append(parent[right[-1]])
                if len(set(left[:-1]) | set(right[:-1])) + 1 != length:
                    continue
                best = (length, list(reversed(left)) + right[:-1])
    return best
