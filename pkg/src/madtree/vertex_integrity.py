"""MAD trees for graphs of small vertex integrity.

Given a separator ``S`` whose removal leaves small components, any spanning
tree ``T`` splits into a core tree ``T_S`` (``S`` plus the components that
join different parts of ``T[S]``) and, for every other component, an
*extension*: the tree edges inside it and from it to ``S``.  Components of
the same type are interchangeable, so after fixing ``T_S`` only the number
of components of each type using each extension matters.  That choice is a
small integer quadratic program, solved here by exhaustive enumeration.

Objective for counts ``x`` (one variable per type/extension pair ``v``)::

    W(T_S) + sum_v x_v (D_v + D_TS,v)
           + 1/2 sum_{v != w} x_v x_w P_vw + sum_v x_v (x_v - 1) / 2 * P_vv

where ``D_v`` sums distances inside one component, ``D_TS,v`` distances
from it to ``T_S`` and ``P_vw`` distances between two distinct components.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field

from .errors import InfeasibleCounts, TooLarge
from .graph import Graph, SpanningTree, norm_edge, wiener_tree
from .oracle import iter_tree_edges, wiener_of_edges

DEFAULT_STATE_BUDGET = 2_000_000


@dataclass(frozen=True)
class VIWitness:
    S: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    k: int


def _components_without(g: Graph, removed: set) -> list[tuple[int, ...]]:
    seen = set(removed)
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return comps


def vi_witness(g: Graph) -> VIWitness:
    """Separator minimising ``|S| + max component size`` (smallest, then lexicographic)."""
    g.require_connected()
    best = None
    for size in range(g.n + 1):
        if best is not None and size >= best.k:
            break
        for S in itertools.combinations(range(g.n), size):
            comps = _components_without(g, set(S))
            k = size + max((len(c) for c in comps), default=0)
            if best is None or k < best.k:
                best = VIWitness(S, tuple(comps), k)
    return best


def _canonical(comp, g: Graph, S: set):
    """Canonical code and ordering of a component with its ``S``-neighbourhoods."""
    best = None
    for order in itertools.permutations(comp):
        adj = tuple(g.has_edge(order[i], order[j]) for i in range(len(order)) for j in range(i + 1, len(order)))
        labels = tuple(tuple(sorted(g.nbrs[v] & S)) for v in order)
        code = (len(order), adj, labels)
        if best is None or code < best[0]:
            best = (code, order)
    return best


def classify_components(g: Graph, s) -> dict:
    """Group the components of ``G - S`` by type.

    Returns ``{code: [ordered component, ...]}``; components are listed in
    canonical order so that position ``i`` in one maps to position ``i`` in
    any other of the same type by a type isomorphism.
    """
    S = set(s)
    types: dict = {}
    for comp in _components_without(g, S):
        code, order = _canonical(comp, g, S)
        types.setdefault(code, []).append(order)
    return dict(sorted(types.items(), key=lambda kv: min(min(c) for c in kv[1])))


def _trees_of_multigraph(nodes: int, edges: list) -> list[tuple[int, ...]]:
    """Index tuples of the edge subsets that form a spanning tree on ``0..nodes-1``."""
    need = nodes - 1
    out = []
    if need == 0:
        return [()]

    def find(p, x):
        while p[x] != x:
            x = p[x]
        return x

    def connected_with(p, start):
        q = p[:]
        for a, b in edges[start:]:
            ra, rb = find(q, a), find(q, b)
            if ra != rb:
                q[ra] = rb
        root = find(q, 0)
        return all(find(q, x) == root for x in range(nodes))

    def rec(i, p, chosen):
        if len(chosen) == need:
            out.append(tuple(chosen))
            return
        if i == len(edges) or len(edges) - i < need - len(chosen):
            return
        a, b = edges[i]
        ra, rb = find(p, a), find(p, b)
        if ra != rb:
            q = p[:]
            q[ra] = rb
            chosen.append(i)
            rec(i + 1, q, chosen)
            chosen.pop()
        if connected_with(p, i + 1):
            rec(i + 1, p, chosen)

    rec(0, list(range(nodes)), [])
    return out


def enumerate_candidate_trees(g: Graph, s, types: dict | None = None):
    """Yield ``(T_S edges, V(T_S), connectors)`` for every candidate core tree.

    Connectors are chosen as a multiset of types (the first components of
    each type are used); each must join at least two ``S`` vertices
    through one of its pieces, so every spanning tree has exactly one core.
    """
    S = tuple(sorted(s))
    if not S:
        yield (), (), ()
        return
    if types is None:
        types = classify_components(g, S)
    codes = list(types)
    sset = set(S)
    for size in range(len(S)):
        for pick in itertools.combinations_with_replacement(range(len(codes)), size):
            counts = {c: pick.count(c) for c in set(pick)}
            if any(counts[c] > len(types[codes[c]]) for c in counts):
                continue
            connectors = tuple(types[codes[c]][j] for c in sorted(counts) for j in range(counts[c]))
            verts = sorted(sset.union(*connectors))
            sub, old = g.induced(verts)
            if not sub.is_connected():
                continue
            sub_edges = sub.edges()
            for idx in _trees_of_multigraph(sub.n, sub_edges):
                edges = tuple(sorted(norm_edge(old[sub_edges[i][0]], old[sub_edges[i][1]]) for i in idx))
                if all(_is_connector(edges, comp, sset) for comp in connectors):
                    yield edges, tuple(verts), connectors


def _is_connector(edges, comp, S: set) -> bool:
    members = set(comp)
    adj: dict[int, list[int]] = {v: [] for v in members}
    touch: dict[int, set] = {v: set() for v in members}
    for a, b in edges:
        if a in members and b in members:
            adj[a].append(b)
            adj[b].append(a)
        elif a in members and b in S:
            touch[a].add(b)
        elif b in members and a in S:
            touch[b].add(a)
    seen = set()
    for v in members:
        if v in seen:
            continue
        seen.add(v)
        stack = [v]
        hit = set()
        while stack:
            x = stack.pop()
            hit |= touch[x]
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(hit) >= 2:
            return True
    return False


@dataclass
class Extension:
    """Tree edges for a component, on the local ids ``0..c-1`` of its type.

    Edges are ``(i, j)`` inside the component or ``(i, ('s', v))`` to the
    ``T_S`` vertex ``v``.
    """

    edges: tuple
    attach: tuple  # attach[i] = T_S vertex where local vertex i's piece meets T_S
    depth: tuple  # depth[i] = tree distance from i to attach[i]


@dataclass
class ExtensionConstants:
    w_core: int
    core_vertices: tuple
    types: list
    counts: list[int]
    extensions: list[list[Extension]]
    D_self: list[list[int]]
    D_core: list[list[int]]
    profiles: list = field(repr=False)
    core_dist: dict = field(repr=False)

    def variables(self):
        return [(t, e) for t in range(len(self.types)) for e in range(len(self.extensions[t]))]

    def pair(self, v, w) -> int:
        """Sum of distances between two distinct components using extensions ``v`` and ``w``.

        Every such path runs through the core: down to the attachment vertex,
        across the core, and up again.
        """
        c1, s1, a1 = self.profiles[v[0]][v[1]]
        c2, s2, a2 = self.profiles[w[0]][w[1]]
        return c2 * s1 + c1 * s2 + sum(self.core_dist[x][y] for x in a1 for y in a2)


def _bfs(adj, src):
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def _extension_shape(ext_edges, c, core_adj):
    """Attachment, depth, inside-distance sum and core-distance sum of an extension."""
    if not core_adj:
        return (None,) * c, (0,) * c, wiener_of_edges(c, ext_edges), 0
    adj = {v: list(ws) for v, ws in core_adj.items()}
    for i in range(c):
        adj[("c", i)] = []
    for a, b in ext_edges:
        x = ("c", a)
        y = b[1] if isinstance(b, tuple) else ("c", b)
        adj[x].append(y)
        adj[y].append(x)
    attach, depth = [], []
    inside = to_core = 0
    for i in range(c):
        dist = _bfs(adj, ("c", i))
        inside += sum(dist[("c", j)] for j in range(i + 1, c))
        core = [(d, v) for v, d in dist.items() if not isinstance(v, tuple)]
        to_core += sum(d for d, _ in core)
        d, v = min(core) if core else (0, None)
        depth.append(d)
        attach.append(v)
    return tuple(attach), tuple(depth), inside, to_core


def _enumerate_extensions(g: Graph, rep, S: set):
    """All extension edge sets of the component ``rep``; crossing edges go to ``S``."""
    if not S:
        sub, _ = g.induced(rep)
        local = {v: i for i, v in enumerate(sorted(rep))}
        to_rep = [local[v] for v in rep]
        back = {to_rep[i]: i for i in range(len(rep))}
        return [tuple(norm_edge(back[a], back[b]) for a, b in edges) for edges in iter_tree_edges(sub)]
    c = len(rep)
    local = {v: i for i, v in enumerate(rep)}
    cand = []
    mg = []
    hub = c
    for i, v in enumerate(rep):
        for w in g.adj[v]:
            if w in local and local[w] > i:
                cand.append((i, local[w]))
                mg.append((i, local[w]))
            elif w in S:
                cand.append((i, ("s", w)))
                mg.append((i, hub))
    nodes = c + 1 if S else c
    return [tuple(cand[k] for k in idx) for idx in _trees_of_multigraph(nodes, mg)]


def _extension_code(edges, c):
    """Canonical form up to relabelling the component, core vertices fixed."""
    best = None
    for perm in itertools.permutations(range(c)):
        code = tuple(sorted(
            (1, perm[a], b[1]) if isinstance(b, tuple) else (0, *sorted((perm[a], perm[b])))
            for a, b in edges
        ))
        if best is None or code < best:
            best = code
    return best


def extension_constants(g: Graph, s, t_s, types: dict | None = None) -> ExtensionConstants:
    """Distance constants for extending the core tree ``t_s = (edges, vertices, connectors)``."""
    core_edges, core_vertices, connectors = t_s
    S = set(s)
    if types is None:
        types = classify_components(g, S)
    used = {tuple(c) for c in connectors}
    core_adj: dict = {v: [] for v in core_vertices}
    for a, b in core_edges:
        core_adj[a].append(b)
        core_adj[b].append(a)
    core_dist = {v: _bfs(core_adj, v) for v in core_vertices}
    w_core = sum(core_dist[u][v] for u in core_vertices for v in core_vertices if u < v)
    codes, counts, exts, d_self, d_core = [], [], [], [], []
    profiles = []
    for code, comps in types.items():
        remaining = [c for c in comps if tuple(c) not in used]
        if not remaining:
            continue
        rep = comps[0]
        c = len(rep)
        raw = _enumerate_extensions(g, rep, S)
        if not raw:
            raise InfeasibleCounts("a component cannot be attached to the core tree")
        if len(remaining) > 1:
            seen = {}
            for edges in raw:
                seen.setdefault(_extension_code(edges, c), edges)
            raw = [seen[key] for key in sorted(seen)]
        items, selfs, cores, profs = [], [], [], []
        for edges in raw:
            attach, depth, inside, to_core = _extension_shape(edges, c, core_adj)
            items.append(Extension(edges, attach, depth))
            selfs.append(inside)
            cores.append(to_core)
            profs.append((c, sum(depth), attach))
        codes.append(code)
        counts.append(len(remaining))
        exts.append(items)
        d_self.append(selfs)
        d_core.append(cores)
        profiles.append(profs)
    return ExtensionConstants(
        w_core, tuple(core_vertices), codes, counts, exts, d_self, d_core, profiles, core_dist
    )


def _compositions(total: int, parts: int):
    """Sparse count vectors (sorted ``(index, count)`` pairs) over ``parts`` summing to ``total``."""
    for pick in itertools.combinations_with_replacement(range(parts), total):
        row: dict[int, int] = {}
        for e in pick:
            row[e] = row.get(e, 0) + 1
        yield tuple(sorted(row.items()))


def _lex_less(a: dict, b: dict) -> bool:
    """Lexicographic comparison of two sparse count vectors."""
    for i in sorted(set(a) | set(b)):
        x, y = a.get(i, 0), b.get(i, 0)
        if x != y:
            return x < y
    return False


def _objective(k: ExtensionConstants, x: dict) -> int:
    val = 0
    items = [(v, cnt) for v, cnt in x.items() if cnt]
    for v, cnt in items:
        t, e = v
        val += cnt * (k.D_self[t][e] + k.D_core[t][e])
        if cnt > 1:
            val += cnt * (cnt - 1) // 2 * k.pair(v, v)
    for (v, a), (w, b) in itertools.combinations(items, 2):
        val += a * b * k.pair(v, w)
    return val


def solve_extension_counts(k: ExtensionConstants, budget: int = DEFAULT_STATE_BUDGET):
    """Exact minimiser of the extension program; returns ``(x, value)``.

    Every combination of per-type compositions is evaluated; among equal
    values the lexicographically smallest count vector wins.  More than
    ``budget`` combinations raises :class:`TooLarge`.
    """
    per_type = []
    states = 1
    for t, n_t in enumerate(k.counts):
        p = len(k.extensions[t])
        if p == 0 and n_t:
            raise InfeasibleCounts(f"type {t} has components but no extension")
        states *= math.comb(p + n_t - 1, n_t) if p else 1
        if states > budget:
            raise TooLarge(f"extension program has more than {budget} assignments")
        per_type.append(list(_compositions(n_t, p)) if p else [()])
    best = None
    for choice in itertools.product(*per_type):
        x = {(t, e): cnt for t, row in enumerate(choice) for e, cnt in row}
        val = _objective(k, x)
        if best is None or val < best[1] or (val == best[1] and _lex_less(x, best[0])):
            best = (x, val)
    if best is None:
        return {}, 0
    return best


def materialize(g: Graph, s, t_s, k: ExtensionConstants, x: dict, types: dict | None = None) -> SpanningTree:
    """Spanning tree realising the counts ``x`` on top of the core tree."""
    core_edges, core_vertices, connectors = t_s
    if types is None:
        types = classify_components(g, set(s))
    used = {tuple(c) for c in connectors}
    edges = list(core_edges)
    by_code = {code: [c for c in comps if tuple(c) not in used] for code, comps in types.items()}
    for t, code in enumerate(k.types):
        comps = by_code[code]
        slots = [e for e in range(len(k.extensions[t])) for _ in range(x.get((t, e), 0))]
        for comp, e in zip(comps, slots):
            for a, b in k.extensions[t][e].edges:
                if isinstance(b, tuple):
                    edges.append(norm_edge(comp[a], b[1]))
                else:
                    edges.append(norm_edge(comp[a], comp[b]))
    return SpanningTree(g, edges)


def solve_vertex_integrity(g: Graph, b: int | None = None, budget: int = DEFAULT_STATE_BUDGET, witness: VIWitness | None = None):
    """Exact optimum via core trees and the extension program.

    Returns ``(answer, W, tree)``; ``answer`` is ``None`` without a budget.
    """
    g.require_connected()
    if witness is None:
        witness = vi_witness(g)
    S = witness.S
    types = classify_components(g, S)
    best = None
    for t_s in enumerate_candidate_trees(g, S, types):
        consts = extension_constants(g, S, t_s, types)
        x, val = solve_extension_counts(consts, budget)
        total = consts.w_core + val
        if best is None or total < best[0]:
            best = (total, t_s, consts, x)
    total, t_s, consts, x = best
    tree = materialize(g, S, t_s, consts, x, types)
    assert wiener_tree(tree) == total, "materialised tree disagrees with the program value"
    return (None if b is None else total <= b), total, tree
