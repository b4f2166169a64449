"""MAD trees via a minimum modular partition and poly-star construction.

For every root module and every spanning tree of the quotient graph that
keeps the root module's full quotient star, a single poly-star is built and
evaluated; the cheapest one is optimal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import HypothesisViolated, InvalidPartition, InvalidPlan, TooSmall
from .graph import Graph, SpanningTree, norm_edge, wiener_tree
from .oracle import iter_tree_edges


@dataclass(frozen=True)
class ModularPartition:
    modules: tuple[tuple[int, ...], ...]
    module_of: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.modules)

    @classmethod
    def from_modules(cls, n: int, modules) -> ModularPartition:
        mods = tuple(sorted(tuple(sorted(m)) for m in modules))
        module_of = [-1] * n
        for idx, mod in enumerate(mods):
            if not mod:
                raise InvalidPartition("empty module")
            for v in mod:
                if not 0 <= v < n or module_of[v] != -1:
                    raise InvalidPartition(f"vertex {v} is out of range or in two modules")
                module_of[v] = idx
        if -1 in module_of:
            raise InvalidPartition("modules do not cover every vertex")
        return cls(mods, tuple(module_of))


@dataclass(frozen=True)
class PolyStarPlan:
    root_module: int
    root: int
    designated: tuple[int, ...]
    quotient_tree: tuple[tuple[int, int], ...]
    attach: dict = field(hash=False, compare=False)


def _mask(vertices) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


def is_module(g: Graph, vertices) -> bool:
    members = set(vertices)
    m = _mask(members)
    masks = [_mask(g.adj[x]) for x in range(g.n)]
    return all(masks[x] & m in (0, m) for x in range(g.n) if x not in members)


def _module_closure(masks: list[int], n: int, start: int) -> int:
    """Smallest module containing the vertex set encoded by ``start``."""
    mod = start
    changed = True
    while changed:
        changed = False
        for x in range(n):
            if not (mod >> x) & 1:
                hit = masks[x] & mod
                if hit and hit != mod:
                    mod |= 1 << x
                    changed = True
    return mod


def _components_of_masks(n: int, masks: list[int]) -> list[list[int]]:
    unseen = (1 << n) - 1
    comps = []
    while unseen:
        low = unseen & -unseen
        comp = low
        frontier = low
        while frontier:
            v = frontier.bit_length() - 1
            frontier &= ~(1 << v)
            new = masks[v] & unseen & ~comp
            comp |= new
            frontier |= new
        unseen &= ~comp
        comps.append([v for v in range(n) if (comp >> v) & 1])
    return comps


def modular_partition(g: Graph) -> ModularPartition:
    """Modular partition with the fewest modules (always at least two).

    Parallel and series roots collapse to two modules (any union of
    (co-)components is a module); a prime root yields its maximal strong
    modules, found by pairwise module closure.
    """
    n = g.n
    if n < 2:
        raise TooSmall("a modular partition needs at least two vertices")
    masks = [_mask(g.adj[v]) for v in range(n)]
    full = (1 << n) - 1
    comps = _components_of_masks(n, masks)
    if len(comps) == 1:
        co_masks = [full & ~masks[v] & ~(1 << v) for v in range(n)]
        comps = _components_of_masks(n, co_masks)
    if len(comps) > 1:
        first = comps[0]
        rest = [v for c in comps[1:] for v in c]
        return ModularPartition.from_modules(n, [first, rest])
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(n):
        for v in range(u + 1, n):
            if find(u) == find(v):
                continue
            mod = _module_closure(masks, n, (1 << u) | (1 << v))
            if mod != full:
                members = [x for x in range(n) if (mod >> x) & 1]
                for x in members:
                    parent[find(x)] = find(u)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return ModularPartition.from_modules(n, groups.values())


def quotient(g: Graph, p: ModularPartition) -> Graph:
    if len(p.module_of) != g.n:
        raise InvalidPartition("partition size does not match the graph")
    for mod in p.modules:
        if not is_module(g, mod):
            raise InvalidPartition(f"{list(mod)} is not a module")
    edges = set()
    for u, v in g.edges():
        a, b = p.module_of[u], p.module_of[v]
        if a != b:
            edges.add(norm_edge(a, b))
    return Graph(p.k, edges)


def quotient_trees_with_root_star(q: Graph, i: int):
    """Spanning trees of ``q`` that contain every quotient edge at ``i``."""
    star = [norm_edge(i, j) for j in q.adj[i]]
    yield from iter_tree_edges(q, forced=star)


def _distance_sum(adj: dict[int, list[int]], source: int) -> int:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return sum(dist.values())


def max_degree_vertices(g: Graph, module) -> list[int]:
    best = max(g.degree(v) for v in module)
    return [v for v in module if g.degree(v) == best]


def plan_poly_star(g, p, tprime, i, r, prefer_max_degree=False) -> PolyStarPlan:
    """Lay out the poly-star for root module ``i``, root ``r`` and quotient tree ``tprime``."""
    mods = p.modules
    if p.module_of[r] != i:
        raise InvalidPlan(f"root {r} is not in module {i}")
    if g.degree(r) != max(g.degree(v) for v in mods[i]):
        raise InvalidPlan(f"root {r} does not have maximum degree in its module")
    tprime = tuple(sorted(norm_edge(a, b) for a, b in tprime))
    if len(tprime) != p.k - 1:
        raise InvalidPlan("quotient tree has the wrong number of edges")
    qadj: dict[int, list[int]] = {j: [] for j in range(p.k)}
    for a, b in tprime:
        qadj[a].append(b)
        qadj[b].append(a)
    q_star = {p.module_of[x] for x in g.adj[r] if p.module_of[x] != i}
    if set(qadj[i]) != q_star:
        raise InvalidPlan("quotient tree must contain the full star of the root module")

    designated = []
    for j, mod in enumerate(mods):
        if j == i:
            designated.append(r)
        elif prefer_max_degree:
            designated.append(max_degree_vertices(g, mod)[0])
        else:
            designated.append(mod[0])

    toward_root = {i: i}
    queue = deque([i])
    while queue:
        a = queue.popleft()
        for b in qadj[a]:
            if b not in toward_root:
                toward_root[b] = a
                queue.append(b)
    if len(toward_root) != p.k:
        raise InvalidPlan("quotient tree is not spanning")

    attach: dict[int, int] = {}
    for a, b in tprime:
        da, db = designated[a], designated[b]
        if not g.has_edge(da, db):
            raise InvalidPlan(f"modules {a} and {b} are not adjacent")
    for j, mod in enumerate(mods):
        if j == i:
            continue
        c = designated[toward_root[j]]
        for u in mod:
            if u != designated[j]:
                attach[u] = c
    for u in g.adj[r]:
        if p.module_of[u] == i:
            attach[u] = r

    rest = [u for u in mods[i] if u != r and u not in g.nbrs[r]]
    if rest:
        partial: dict[int, list[int]] = {v: [] for v in range(g.n)}
        for a, b in tprime:
            partial[designated[a]].append(designated[b])
            partial[designated[b]].append(designated[a])
        for u, c in attach.items():
            partial[u].append(c)
            partial[c].append(u)
        candidates = sorted(designated[j] for j in qadj[i])
        scores = [(_distance_sum(partial, w), w) for w in candidates]
        c_root = min(scores)[1]
        for u in rest:
            attach[u] = c_root
    return PolyStarPlan(i, r, tuple(designated), tprime, attach)


def plan_tree(g: Graph, plan: PolyStarPlan) -> SpanningTree:
    d = plan.designated
    edges = [(d[a], d[b]) for a, b in plan.quotient_tree]
    edges.extend(plan.attach.items())
    return SpanningTree(g, edges)


def build_poly_star(g, p, tprime, i, r, prefer_max_degree=False) -> SpanningTree:
    return plan_tree(g, plan_poly_star(g, p, tprime, i, r, prefer_max_degree))


def solve_modular(g: Graph, b: int | None = None, prefer_max_degree: bool = False):
    """Exact MAD tree by poly-star search over a minimum modular partition.

    Returns ``(answer, tree, W)``; ``answer`` is ``None`` when no budget is given.
    """
    g.require_connected()
    if g.n == 1:
        tree = SpanningTree(g, [])
        return (None if b is None else 0 <= b), tree, 0
    p = modular_partition(g)
    q = quotient(g, p)
    best = None
    for i, mod in enumerate(p.modules):
        for r in max_degree_vertices(g, mod):
            for tprime in quotient_trees_with_root_star(q, i):
                tree = build_poly_star(g, p, tprime, i, r, prefer_max_degree)
                key = (wiener_tree(tree), tree.edges)
                if best is None or key < best[0]:
                    best = (key, tree)
    (w, _), tree = best
    return (None if b is None else w <= b), tree, w


def reposition_subtrees(t: SpanningTree, a: int, b: int, va, vb):
    """Both rewirings of a subtree family between anchors ``a`` and ``b``.

    ``T1`` hangs ``vb`` from ``a``; ``T2`` hangs ``va`` from ``b``.  Raises
    :class:`HypothesisViolated` unless the anchoring preconditions hold.
    """
    g = t.host
    va, vb = set(va), set(vb)
    if a == b or not va or not vb:
        raise HypothesisViolated("need distinct anchors and nonempty vertex sets")
    for v in va | vb:
        if not (g.has_edge(v, a) and g.has_edge(v, b)):
            raise HypothesisViolated(f"{v} is not adjacent to both anchors in G")
    if not all(v in t.adj[a] for v in va) or not all(v in t.adj[b] for v in vb):
        raise HypothesisViolated("vertex sets are not tree neighbours of their anchors")
    if set(t.path(a, b)) & (va | vb):
        raise HypothesisViolated("tree path between the anchors meets the vertex sets")
    edges = set(t.edges)
    t1 = (edges - {norm_edge(b, v) for v in vb}) | {norm_edge(a, v) for v in vb}
    t2 = (edges - {norm_edge(a, v) for v in va}) | {norm_edge(b, v) for v in va}
    return SpanningTree(g, t1), SpanningTree(g, t2)


def is_poly_star(t: SpanningTree, p: ModularPartition) -> bool:
    return all(sum(1 for v in mod if t.degree(v) >= 2) <= 1 for mod in p.modules)
