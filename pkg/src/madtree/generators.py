"""Instance generators: the X3C split-graph reduction and random graph families.

All randomness flows through ``random.Random(seed)`` so every generator is
reproducible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import InfeasibleParameters, InvalidX3C
from .graph import Graph, norm_edge


@dataclass(frozen=True)
class X3CInstance:
    universe: int  # 3q elements, ids 0..3q-1
    sets: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.universe <= 0 or self.universe % 3:
            raise InvalidX3C(f"universe size {self.universe} is not a positive multiple of 3")
        for c in self.sets:
            if len(c) != 3 or len(set(c)) != 3:
                raise InvalidX3C(f"{c} is not a set of three distinct elements")
            if any(not 0 <= x < self.universe for x in c):
                raise InvalidX3C(f"{c} mentions an element outside the universe")

    @property
    def q(self) -> int:
        return self.universe // 3

    @property
    def s(self) -> int:
        return len(self.sets)

    def max_occurrence(self) -> int:
        counts = [0] * self.universe
        for c in self.sets:
            for x in c:
                counts[x] += 1
        return max(counts)


@dataclass(frozen=True)
class ReducedInstance:
    graph: Graph
    budget: int
    provenance: dict = field(hash=False, compare=False)


def reduction_budget(q: int, s: int) -> tuple[int, int, int]:
    """``(D_CC, D_CX, D_XX)``: the distance sums of a tree built from an exact cover."""
    d_cc = (s - 1) ** 2
    d_cx = 3 * (1 + 2 * (s - 1)) + (3 * q - 3) * (3 + 3 * (s - 2))
    d_xx = 6 + 9 * (3 * q - 3) + 2 * (3 * q - 3) * (3 * q - 5)
    return d_cc, d_cx, d_xx


def reduce_x3c(x: X3CInstance) -> ReducedInstance:
    """Split graph with the element vertices ``0..3q-1`` independent and the
    set vertices ``3q..3q+s-1`` forming a clique; ``x_i ~ C_j`` iff ``x_i in C_j``.
    """
    covered = set().union(*x.sets) if x.sets else set()
    missing = sorted(set(range(x.universe)) - covered)
    if missing:
        raise InvalidX3C(f"elements {[m + 1 for m in missing]} are in no set; the graph would be disconnected")
    q, s = x.q, x.s
    base = x.universe
    edges = [(base + i, base + j) for i in range(s) for j in range(i + 1, s)]
    for j, c in enumerate(x.sets):
        edges.extend((e, base + j) for e in c)
    d_cc, d_cx, d_xx = reduction_budget(q, s)
    prov = {"q": q, "s": s, "D_CC": d_cc, "D_CX": d_cx, "D_XX": d_xx}
    return ReducedInstance(Graph(base + s, edges), d_cc + d_cx + d_xx, prov)


def x3c_bruteforce(x: X3CInstance) -> bool:
    """Whether ``q`` of the sets partition the universe."""
    full = set(range(x.universe))
    for pick in itertools.combinations(x.sets, x.q):
        seen = set()
        for c in pick:
            if seen & set(c):
                break
            seen.update(c)
        else:
            if seen == full:
                return True
    return False


def gen_x3c(q: int, s: int, seed: int = 0, planted: bool = True) -> X3CInstance:
    """Random instance; ``planted`` hides an exact cover among the sets."""
    if q < 1 or s < 1 or (planted and s < q):
        raise InfeasibleParameters(f"need q >= 1 and s >= {'q' if planted else '1'} (got q={q}, s={s})")
    rng = random.Random(seed)
    n = 3 * q
    sets = []
    if planted:
        perm = list(range(n))
        rng.shuffle(perm)
        sets = [tuple(sorted(perm[3 * i: 3 * i + 3])) for i in range(q)]
    while len(sets) < s:
        sets.append(tuple(sorted(rng.sample(range(n), 3))))
    rng.shuffle(sets)
    return X3CInstance(n, tuple(sets))


def _connect(n: int, edges: set, rng: random.Random) -> set:
    """Add random edges between components until the graph is connected."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        v = order[i]
        u = order[rng.randrange(i)]
        if find(u) != find(v):
            parent[find(u)] = find(v)
            edges.add(norm_edge(u, v))
    return edges


def gen_random_connected(n: int, p: float, seed: int = 0) -> Graph:
    """``G(n, p)`` made connected by adding random edges between components."""
    if n < 1 or not 0.0 <= p <= 1.0:
        raise InfeasibleParameters(f"need n >= 1 and 0 <= p <= 1 (got n={n}, p={p})")
    rng = random.Random(seed)
    edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
    return Graph(n, _connect(n, edges, rng))


def gen_cograph_with_cotree(n: int, seed: int = 0):
    """Connected random cograph and its cotree.

    Cotree nodes are ``("leaf", v)`` or ``(op, [children])`` with ``op`` in
    ``{"series", "parallel"}``; the root is series so the graph is connected.
    """
    if n < 1:
        raise InfeasibleParameters("a cograph needs at least one vertex")
    rng = random.Random(seed)
    edges: set = set()

    def build(vertices, op):
        if len(vertices) == 1:
            return ("leaf", vertices[0])
        parts = rng.randint(2, min(3, len(vertices)))
        cuts = sorted(rng.sample(range(1, len(vertices)), parts - 1))
        groups = [vertices[a:b] for a, b in zip([0] + cuts, cuts + [len(vertices)])]
        if op == "series":
            for g1, g2 in itertools.combinations(groups, 2):
                edges.update(norm_edge(u, v) for u in g1 for v in g2)
        child_op = "parallel" if op == "series" else "series"
        return (op, [build(grp, child_op) for grp in groups])

    vertices = list(range(n))
    rng.shuffle(vertices)
    cotree = build(vertices, "series")
    return Graph(n, edges), cotree


def gen_cograph(n: int, seed: int = 0) -> Graph:
    return gen_cograph_with_cotree(n, seed)[0]


def gen_partial_ktree(n: int, k: int, extra_removals: int = 0, seed: int = 0) -> Graph:
    """Random k-tree on ``n`` vertices with up to ``extra_removals`` edges deleted.

    Deletions that would disconnect the graph are skipped, so the result is
    connected with treewidth at most ``k``.
    """
    if n < 1 or k < 1 or extra_removals < 0:
        raise InfeasibleParameters(f"need n >= 1, k >= 1, removals >= 0 (got {n}, {k}, {extra_removals})")
    rng = random.Random(seed)
    start = min(n, k + 1)
    edges = {(u, v) for u in range(start) for v in range(u + 1, start)}
    cliques = [tuple(c) for c in itertools.combinations(range(start), k)] if n > k + 1 else []
    for v in range(start, n):
        base = rng.choice(cliques)
        edges.update(norm_edge(u, v) for u in base)
        for drop in range(k):
            cliques.append(tuple(sorted(base[:drop] + base[drop + 1:] + (v,))))
    removed = 0
    for e in rng.sample(sorted(edges), len(edges)):
        if removed >= extra_removals:
            break
        if Graph(n, edges - {e}).is_connected():
            edges.discard(e)
            removed += 1
    return Graph(n, edges)


def gen_split(n_clique: int, n_ind: int, p: float, seed: int = 0) -> Graph:
    """Clique ``0..n_clique-1`` plus independent vertices, each with at least one clique neighbour."""
    if n_clique < 1 or n_ind < 0 or not 0.0 <= p <= 1.0:
        raise InfeasibleParameters(f"need n_clique >= 1, n_ind >= 0, 0 <= p <= 1 (got {n_clique}, {n_ind}, {p})")
    rng = random.Random(seed)
    edges = {(u, v) for u in range(n_clique) for v in range(u + 1, n_clique)}
    for i in range(n_ind):
        v = n_clique + i
        nbrs = [u for u in range(n_clique) if rng.random() < p] or [rng.randrange(n_clique)]
        edges.update((u, v) for u in nbrs)
    return Graph(n_clique + n_ind, edges)


def gen_star_of_cliques(cliques: int, size: int, hub_links: int | None = None) -> Graph:
    """A hub vertex 0 joined to ``cliques`` disjoint cliques of ``size`` vertices.

    The hub is adjacent to the first ``hub_links`` vertices of every clique
    (all of them by default).  Removing the hub leaves small components, so
    the vertex integrity is ``1 + size``.
    """
    if cliques < 1 or size < 1:
        raise InfeasibleParameters("need at least one clique of at least one vertex")
    links = size if hub_links is None else hub_links
    if not 1 <= links <= size:
        raise InfeasibleParameters(f"hub_links must lie in 1..{size}")
    edges = []
    for c in range(cliques):
        members = [1 + c * size + i for i in range(size)]
        edges.extend(itertools.combinations(members, 2))
        edges.extend((0, v) for v in members[:links])
    return Graph(1 + cliques * size, edges)
