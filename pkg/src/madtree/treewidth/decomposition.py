"""Tree decompositions: validation, heuristics and conversion to nice form."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_degree, treewidth_min_fill_in

from ..errors import InvalidDecomposition
from ..graph import Graph

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def violations(self, g: Graph) -> list[str]:
        """Every broken decomposition condition, as readable messages."""
        nb = len(self.bags)
        if nb == 0:
            return ["no bags"] if g.n else []
        out = []
        if len(self.edges) != nb - 1:
            out.append(f"decomposition tree has {len(self.edges)} edges, expected {nb - 1}")
        adj: list[list[int]] = [[] for _ in range(nb)]
        for a, b in self.edges:
            if not (0 <= a < nb and 0 <= b < nb) or a == b:
                out.append(f"bad tree edge ({a + 1}, {b + 1})")
                continue
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != nb:
            out.append("decomposition tree is not connected")
        for i, bag in enumerate(self.bags):
            if any(not 0 <= v < g.n for v in bag):
                out.append(f"bag {i + 1} mentions a vertex outside 1..{g.n}")
        for v in range(g.n):
            holders = {i for i, bag in enumerate(self.bags) if v in bag}
            if not holders:
                out.append(f"vertex {v + 1} is in no bag")
                continue
            start = min(holders)
            reach = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y in holders and y not in reach:
                        reach.add(y)
                        stack.append(y)
            if reach != holders:
                out.append(f"bags containing vertex {v + 1} are not connected")
        for u, v in g.edges():
            if not any(u in bag and v in bag for bag in self.bags):
                out.append(f"edge ({u + 1}, {v + 1}) is in no bag")
        return out

    def validate(self, g: Graph) -> None:
        problems = self.violations(g)
        if problems:
            raise InvalidDecomposition("; ".join(problems))

    def without_empty_bags(self) -> TreeDecomposition:
        """Drop empty bags, chaining their tree neighbours together."""
        bags = list(self.bags)
        adj = {i: set() for i in range(len(bags))}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        for i in range(len(bags)):
            if bags[i]:
                continue
            nbrs = sorted(adj.pop(i))
            for j in nbrs:
                adj[j].discard(i)
            for x, y in zip(nbrs, nbrs[1:]):
                adj[x].add(y)
                adj[y].add(x)
        keep = sorted(adj)
        index = {old: new for new, old in enumerate(keep)}
        edges = {tuple(sorted((index[a], index[b]))) for a in keep for b in adj[a]}
        return TreeDecomposition(tuple(bags[i] for i in keep), tuple(sorted(edges)))


def _from_nx(decomp: nx.Graph) -> TreeDecomposition:
    bags = list(decomp.nodes())
    index = {b: i for i, b in enumerate(bags)}
    edges = tuple(sorted(tuple(sorted((index[a], index[b]))) for a, b in decomp.edges()))
    return TreeDecomposition(tuple(frozenset(b) for b in bags), edges)


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def heuristic_tree_decomposition(g: Graph, method: str = "min_fill") -> TreeDecomposition:
    """Valid decomposition from a greedy elimination ordering (width not optimal)."""
    if g.n == 0:
        return TreeDecomposition((), ())
    heuristic = {"min_fill": treewidth_min_fill_in, "min_degree": treewidth_min_degree}[method]
    _, decomp = heuristic(_to_nx(g))
    td = _from_nx(decomp)
    td.validate(g)
    return td


def trivial_decomposition(g: Graph) -> TreeDecomposition:
    """A single bag holding every vertex."""
    return TreeDecomposition((frozenset(range(g.n)),), ())


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: tuple[int, ...]
    vertex: int | None
    children: tuple[int, ...]


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Nodes in bottom-up order: every child precedes its parent; root is last."""

    nodes: tuple[NiceNode, ...]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(len(nd.bag) for nd in self.nodes) - 1

    def subtree_sizes(self) -> list[int]:
        """``|Y_t|`` for every node: vertices seen in the subtree rooted at ``t``."""
        seen: list[frozenset] = []
        for nd in self.nodes:
            if nd.kind == LEAF:
                seen.append(frozenset(nd.bag))
            elif nd.kind == JOIN:
                seen.append(seen[nd.children[0]] | seen[nd.children[1]])
            else:
                seen.append(seen[nd.children[0]] | frozenset(nd.bag))
        return [len(s) for s in seen]

    def validate(self, g: Graph) -> None:
        nodes = self.nodes
        if not nodes:
            raise InvalidDecomposition("empty nice decomposition")
        parents = [0] * len(nodes)
        for t, nd in enumerate(nodes):
            if list(nd.bag) != sorted(set(nd.bag)):
                raise InvalidDecomposition(f"node {t}: bag must be sorted and duplicate-free")
            for c in nd.children:
                if not 0 <= c < t:
                    raise InvalidDecomposition(f"node {t}: child {c} out of order")
                parents[c] += 1
            kids = [nodes[c] for c in nd.children]
            if nd.kind == LEAF:
                ok = not kids and len(nd.bag) == 1
            elif nd.kind == JOIN:
                ok = len(kids) == 2 and all(k.bag == nd.bag for k in kids)
            elif nd.kind == INTRODUCE:
                ok = (
                    len(kids) == 1
                    and nd.vertex in nd.bag
                    and set(kids[0].bag) == set(nd.bag) - {nd.vertex}
                )
            elif nd.kind == FORGET:
                ok = (
                    len(kids) == 1
                    and nd.vertex not in nd.bag
                    and set(nd.bag) == set(kids[0].bag) - {nd.vertex}
                )
            else:
                ok = False
            if not ok:
                raise InvalidDecomposition(f"node {t} violates the {nd.kind} node conditions")
        if len(nodes[-1].bag) != 1:
            raise InvalidDecomposition("root bag must hold exactly one vertex")
        if any(parents[t] != 1 for t in range(len(nodes) - 1)) or parents[-1]:
            raise InvalidDecomposition("nodes do not form a single rooted tree")
        bags = tuple(frozenset(nd.bag) for nd in nodes)
        edges = tuple((c, t) for t, nd in enumerate(nodes) for c in nd.children)
        TreeDecomposition(bags, edges).validate(g)


def to_nice(td: TreeDecomposition, g: Graph | None = None) -> NiceTreeDecomposition:
    """Expand ``td`` into leaf/introduce/forget/join nodes of the same width."""
    if g is not None:
        td.validate(g)
    td = td.without_empty_bags()
    if not td.bags:
        raise InvalidDecomposition("cannot build a nice decomposition without vertices")
    nb = len(td.bags)
    adj: list[list[int]] = [[] for _ in range(nb)]
    for a, b in td.edges:
        adj[a].append(b)
        adj[b].append(a)
    nodes: list[NiceNode] = []

    def add(kind, bag, vertex, children):
        nodes.append(NiceNode(kind, tuple(sorted(bag)), vertex, tuple(children)))
        return len(nodes) - 1

    def morph(node: int, target: frozenset) -> int:
        bag = set(nodes[node].bag)
        if not bag & target and target:
            # keep one vertex alive so the chain never passes through an empty bag
            keep = min(bag)
            for v in sorted(bag - {keep}):
                bag.discard(v)
                node = add(FORGET, bag, v, [node])
            for v in sorted(target):
                bag.add(v)
                node = add(INTRODUCE, bag, v, [node])
            bag.discard(keep)
            return add(FORGET, bag, keep, [node])
        for v in sorted(bag - target):
            bag.discard(v)
            node = add(FORGET, bag, v, [node])
        for v in sorted(target - bag):
            bag.add(v)
            node = add(INTRODUCE, bag, v, [node])
        return node

    order = []
    parent = {0: None}
    stack = [0]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in sorted(adj[x], reverse=True):
            if y not in parent:
                parent[y] = x
                stack.append(y)
    built: dict[int, int] = {}
    for x in reversed(order):
        bag = td.bags[x]
        kids = [y for y in adj[x] if parent.get(y) == x]
        if not kids:
            first = min(bag)
            node = add(LEAF, {first}, None, [])
            built[x] = morph(node, bag)
            continue
        subs = [morph(built[y], bag) for y in sorted(kids)]
        node = subs[0]
        for other in subs[1:]:
            node = add(JOIN, bag, None, [node, other])
        built[x] = node
    root = built[0]
    bag = set(nodes[root].bag)
    keep = min(bag)
    for v in sorted(bag - {keep}):
        bag.discard(v)
        root = add(FORGET, bag, v, [root])
    nice = NiceTreeDecomposition(tuple(nodes))
    if g is not None:
        nice.validate(g)
    return nice
