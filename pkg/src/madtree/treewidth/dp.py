"""Exact MAD-tree value by dynamic programming over a nice tree decomposition.

A table entry describes how an optimal spanning tree ``T`` looks from a node
``t`` with bag ``B``:

* ``F``: the edges of ``T`` inside ``B``;
* ``C``: groups of bag vertices joined in ``T`` through already forgotten
  vertices (each group has at least two members);
* ``abov[i]``: number of vertices reached from ``B[i]`` through tree edges
  that leave ``Y_t`` (the vertices seen in the subtree of ``t``);
* ``below[i]``: number of vertices hanging from ``B[i]`` through forgotten
  vertices.

The stored value is the summed cost ``|side| * (n - |side|)`` of the tree
edges with a forgotten endpoint.  Tables are computed bottom-up by pushing
each child entry to every parent entry it is compatible with; only finite
entries are stored.

Besides the per-component mass identity, every entry is kept acyclic as a
hypergraph on the bag (``F`` edges plus ``C`` groups).  Without that check a
join could glue two children whose forgotten parts connect the same bag
vertices, producing a cost for a structure that contains a cycle.
"""

from __future__ import annotations

from typing import NamedTuple

from ..errors import InvalidDecomposition
from ..graph import Graph
from .decomposition import FORGET, INTRODUCE, JOIN, LEAF, NiceTreeDecomposition, TreeDecomposition
from .decomposition import heuristic_tree_decomposition, to_nice


class DPIndex(NamedTuple):
    F: tuple  # sorted (u, v) pairs, u < v
    C: tuple  # sorted tuple of sorted vertex tuples
    abov: tuple  # aligned with the sorted bag
    below: tuple


def _labels(bag, F, C):
    """Component label per bag position of the hypergraph ``F + C``, or None on a cycle."""
    pos = {v: i for i, v in enumerate(bag)}
    parent = list(range(len(bag)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in F:
        a, b = find(pos[u]), find(pos[v])
        if a == b:
            return None
        parent[a] = b
    for group in C:
        first = find(pos[group[0]])
        for v in group[1:]:
            b = find(pos[v])
            if b == first:
                return None
            parent[b] = first
    return [find(i) for i in range(len(bag))]


def _f_components(bag, F):
    """Position lists of the components of the forest ``F`` on ``bag``."""
    pos = {v: i for i, v in enumerate(bag)}
    parent = list(range(len(bag)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in F:
        parent[find(pos[u])] = find(pos[v])
    comps: dict[int, list[int]] = {}
    for i in range(len(bag)):
        comps.setdefault(find(i), []).append(i)
    return list(comps.values())


def check_star(bag, idx: DPIndex, n: int) -> None:
    """Assert the necessary conditions every finite entry satisfies."""
    labels = _labels(bag, idx.F, ())
    assert labels is not None, f"F is not a forest: {idx}"
    assert _labels(bag, idx.F, idx.C) is not None, f"F + C has a cycle: {idx}"
    pos = {v: i for i, v in enumerate(bag)}
    for group in idx.C:
        assert len(group) >= 2, f"below connection too small: {idx}"
        hit = [labels[pos[v]] for v in group]
        assert len(set(hit)) == len(hit), f"below connection meets an F-component twice: {idx}"
    for comp in _f_components(bag, idx.F):
        mass = sum(1 + idx.abov[i] + idx.below[i] for i in comp)
        assert mass == n, f"component mass {mass} != {n}: {idx}"


def _put(table, key, cost):
    old = table.get(key)
    if old is None or cost < old:
        table[key] = cost


def process_leaf(bag, n: int) -> dict:
    (u,) = bag
    return {DPIndex((), (), (n - 1,), (0,)): 0}


def _deltas(caps, n):
    """Tuples ``d`` with ``1 <= d[j] <= caps[j]`` and ``sum(n - d) <= n - 1``."""
    out = []

    def rec(j, room, acc):
        if j == len(caps):
            out.append(tuple(acc))
            return
        for d in range(max(1, n - room), caps[j] + 1):
            acc.append(d)
            rec(j + 1, room - (n - d), acc)
            acc.pop()

    rec(0, n - 1, [])
    return out


def process_introduce(bag, u: int, child_table: dict, g: Graph, n: int) -> dict:
    """Add ``u`` to the bag; ``u`` may take tree edges to child-bag neighbours.

    For every chosen neighbour ``v`` the side of ``v`` containing ``u`` has
    mass ``d_v`` which moves from ``abov(v)`` into the new edge; ``u`` keeps
    the remaining ``n - 1 - sum(n - d_v)`` vertices above it.
    """
    p = bag.index(u)
    child_bag = bag[:p] + bag[p + 1:]
    nbr_pos = [i for i, v in enumerate(child_bag) if g.has_edge(u, v)]
    table: dict = {}
    for idx, cost in child_table.items():
        F, C, a, b = idx
        labels = _labels(child_bag, F, C)
        options = [i for i in nbr_pos if a[i] > 0]
        for mask in range(1 << len(options)):
            chosen = [options[j] for j in range(len(options)) if mask >> j & 1]
            if len({labels[i] for i in chosen}) != len(chosen):
                continue
            if not chosen:
                key = DPIndex(F, C, a[:p] + (n - 1,) + a[p:], b[:p] + (0,) + b[p:])
                _put(table, key, cost)
                continue
            newF = tuple(sorted(F + tuple((min(u, child_bag[i]), max(u, child_bag[i])) for i in chosen)))
            nb = b[:p] + (0,) + b[p:]
            for ds in _deltas([a[i] for i in chosen], n):
                na = list(a)
                for i, d in zip(chosen, ds):
                    na[i] -= d
                au = n - 1 - sum(n - d for d in ds)
                na.insert(p, au)
                _put(table, DPIndex(newF, C, tuple(na), nb), cost)
    return table


def process_join(bag, left: dict, right: dict, n: int) -> dict:
    """Combine children with equal bags.

    Partners share ``F`` and ``abov + below`` pointwise, split ``C`` into
    disjoint parts and split ``below``; the parent's ``abov`` is what the
    left child sees above minus what the right child has below.
    """
    if len(right) > len(left):
        left, right = right, left
    groups: dict = {}
    for idx, cost in right.items():
        s = tuple(x + y for x, y in zip(idx.abov, idx.below))
        groups.setdefault((idx.F, s), []).append((idx, cost))
    table: dict = {}
    k = len(bag)
    for idx, cost in left.items():
        s = tuple(x + y for x, y in zip(idx.abov, idx.below))
        partners = groups.get((idx.F, s))
        if not partners:
            continue
        cset = set(idx.C)
        for other, cost2 in partners:
            if any(other.below[i] > idx.abov[i] for i in range(k)):
                continue
            if cset.intersection(other.C):
                continue
            C = tuple(sorted(idx.C + other.C))
            if other.C and idx.C and _labels(bag, idx.F, C) is None:
                continue
            a = tuple(idx.abov[i] - other.below[i] for i in range(k))
            b = tuple(idx.below[i] + other.below[i] for i in range(k))
            _put(table, DPIndex(idx.F, C, a, b), cost + cost2)
    return table


def process_forget(bag, u: int, child_table: dict, g: Graph, n: int) -> dict:
    """Remove ``u`` from the bag, charging the tree edges that become forgotten.

    ``u`` must have nothing left above it.  With ``X`` its ``F``-neighbours
    and ``Cu`` its below connections:

    * ``X`` empty and ``Cu`` a single pair ``{u, v}``: drop that pair;
    * ``X = {v}`` and ``Cu`` empty: ``uv`` costs ``(i + 1)(n - i - 1)`` with
      ``i = below(u)``, and those ``i + 1`` vertices move below ``v``;
    * otherwise: ``X`` and the rest of ``Cu`` merge into one below
      connection and each ``uv`` (``v`` in ``X``) is charged from the
      ``F``-component mass on ``v``'s side.
    """
    child_bag = tuple(sorted(bag + (u,)))
    p = child_bag.index(u)
    table: dict = {}
    for idx, cost in child_table.items():
        F, C, a, b = idx
        if a[p] != 0:
            continue
        X = [y if x == u else x for x, y in F if u in (x, y)]
        Cu = [grp for grp in C if u in grp]
        if not X and not Cu:
            continue
        restF = tuple(e for e in F if u not in e)
        restC = tuple(grp for grp in C if u not in grp)
        na = list(a[:p] + a[p + 1:])
        nb = list(b[:p] + b[p + 1:])
        if not X and len(Cu) == 1 and len(Cu[0]) == 2:
            _put(table, DPIndex(restF, restC, tuple(na), tuple(nb)), cost)
            continue
        if len(X) == 1 and not Cu:
            i = b[p]
            q = bag.index(X[0])
            nb[q] += i + 1
            _put(table, DPIndex(restF, restC, tuple(na), tuple(nb)), cost + (i + 1) * (n - i - 1))
            continue
        merged = set(X)
        for grp in Cu:
            merged.update(v for v in grp if v != u)
        extra = 0
        comps = _f_components(bag, restF)
        where = {}
        for comp in comps:
            for i in comp:
                where[i] = comp
        for v in X:
            q = bag.index(v)
            mass = sum(1 + a[j + (j >= p)] + b[j + (j >= p)] for j in where[q])
            extra += mass * (n - mass)
            nb[q] += n - mass
        C2 = tuple(sorted(restC + (tuple(sorted(merged)),)))
        _put(table, DPIndex(restF, C2, tuple(na), tuple(nb)), cost + extra)
    return table


def _edge_costs(bag, idx: DPIndex, n: int) -> int:
    """Exact final cost of the ``F`` edges of an entry."""
    if not idx.F:
        return 0
    pos = {v: i for i, v in enumerate(bag)}
    adj: dict[int, list[int]] = {i: [] for i in range(len(bag))}
    for x, y in idx.F:
        adj[pos[x]].append(pos[y])
        adj[pos[y]].append(pos[x])
    total = 0
    for x, y in idx.F:
        s = 0
        stack = [pos[x]]
        seen = {pos[x], pos[y]}
        while stack:
            c = stack.pop()
            s += 1 + idx.abov[c] + idx.below[c]
            for d in adj[c]:
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        total += s * (n - s)
    return total


def lower_bound(bag, idx: DPIndex, cost: int, seen: int, n: int) -> int:
    """Lower bound on the Wiener index of any completion of the entry.

    ``seen`` is ``|Y_t|``.  Edges inside ``Y_t`` form a forest with one tree
    per component of ``F + C``; every other tree edge leaves ``Y_t`` and
    costs at least ``n - 1``.  A vertex with ``abov = s > 0`` carries at most
    ``s`` such edges, worth at least ``s(n - s)`` in total; edges not
    carried by bag vertices lie entirely outside ``Y_t``.
    """
    labels = _labels(bag, idx.F, idx.C)
    hidden = n - 1 - seen + len(set(labels))
    carried = sum(idx.abov)
    mixed = sum(s * (n - s) for s in idx.abov) + max(0, hidden - carried) * (n - 1)
    return cost + _edge_costs(bag, idx, n) + max(mixed, hidden * (n - 1))


def run_dp(g: Graph, nice: NiceTreeDecomposition, upper_bound: int | None = None, check: bool = False):
    """Evaluate every node; returns the list of tables (root last)."""
    n = g.n
    sizes = nice.subtree_sizes() if upper_bound is not None else None
    tables: list = []
    for t, nd in enumerate(nice.nodes):
        if nd.kind == LEAF:
            table = process_leaf(nd.bag, n)
        elif nd.kind == INTRODUCE:
            table = process_introduce(nd.bag, nd.vertex, tables[nd.children[0]], g, n)
        elif nd.kind == FORGET:
            table = process_forget(nd.bag, nd.vertex, tables[nd.children[0]], g, n)
        elif nd.kind == JOIN:
            table = process_join(nd.bag, tables[nd.children[0]], tables[nd.children[1]], n)
        else:
            raise InvalidDecomposition(f"unknown node kind {nd.kind!r}")
        if upper_bound is not None:
            table = {
                idx: c
                for idx, c in table.items()
                if lower_bound(nd.bag, idx, c, sizes[t], n) <= upper_bound
            }
        if check:
            for idx, c in table.items():
                check_star(nd.bag, idx, n)
                assert upper_bound is None or c <= upper_bound
        tables.append(table)
        for c in nd.children:
            tables[c] = None
    return tables


def solve_treewidth(
    g: Graph,
    td: TreeDecomposition | None = None,
    b: int | None = None,
    upper_bound: int | str | None = "auto",
    check: bool = False,
):
    """Optimum Wiener index of a spanning tree; returns ``(answer, W)``.

    ``upper_bound`` prunes entries whose lower bound exceeds it.  ``"auto"``
    uses the best heuristic tree, ``None`` disables pruning.  ``answer`` is
    ``None`` without a budget.
    """
    from ..heuristics import heuristic_upper_bound

    g.require_connected()
    if td is None:
        td = heuristic_tree_decomposition(g)
    nice = to_nice(td, g)
    if upper_bound == "auto":
        upper_bound = heuristic_upper_bound(g)[1]
    tables = run_dp(g, nice, upper_bound, check)
    w = tables[-1].get(DPIndex((), (), (0,), (g.n - 1,)))
    if w is None:
        raise AssertionError("no spanning tree within the upper bound; the bound is invalid")
    return (None if b is None else w <= b), w
