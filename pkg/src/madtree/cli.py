"""Command-line front end: ``madtree solve|wiener|gen|check``.

Exit codes: 0 = solved / yes / valid, 1 = no, 2 = error or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import io
from .above import solve_above
from .errors import (
    AlgorithmUnavailable,
    DisconnectedGraph,
    InvalidDecomposition,
    InvalidTree,
    MadTreeError,
    ParseError,
    TooLarge,
)
from .generators import (
    gen_cograph,
    gen_partial_ktree,
    gen_random_connected,
    gen_split,
    gen_x3c,
    reduce_x3c,
)
from .graph import Graph, SpanningTree, wiener_graph, wiener_tree
from .heuristics import heuristic_upper_bound
from .modular import modular_partition, solve_modular
from .oracle import mad_tree_bruteforce, oracle_limit
from .treewidth import TreeDecomposition, heuristic_tree_decomposition, solve_treewidth
from .vertex_integrity import solve_vertex_integrity

ALGORITHMS = ("oracle", "modular", "treewidth", "above", "vi", "auto")

# thresholds for --algo auto; each has a matching command-line override
AUTO_MAX_MODULES = 8
AUTO_MAX_WIDTH = 4
AUTO_MAX_ABOVE_K = 10


def _load_td(path, g: Graph) -> TreeDecomposition:
    bags, edges, n = io.read_td(path)
    if n != g.n:
        raise InvalidDecomposition(f"decomposition is for {n} vertices, graph has {g.n}")
    td = TreeDecomposition(tuple(bags), tuple(edges))
    td.validate(g)
    return td


def choose_algorithm(g: Graph, args) -> tuple[str, dict]:
    """Pick a solver by structural parameters; returns the name and the parameters seen."""
    seen: dict = {}
    if g.n >= 2:
        seen["modules"] = modular_partition(g).k
        if seen["modules"] <= args.max_modules:
            return "modular", seen
    else:
        return "modular", seen
    seen["width"] = heuristic_tree_decomposition(g).width
    if seen["width"] <= args.max_width:
        return "treewidth", seen
    _, ub = heuristic_upper_bound(g)
    seen["above_k"] = ub - wiener_graph(g)
    if seen["above_k"] <= args.max_above_k:
        return "above", seen
    if g.n <= oracle_limit():
        return "oracle", seen
    raise AlgorithmUnavailable(f"no solver fits this graph under the auto thresholds ({seen})")


def _above_optimum(g: Graph):
    """Smallest budget the branching accepts, by binary search up to a heuristic tree."""
    lo = wiener_graph(g)
    tree, hi = heuristic_upper_bound(g)
    while lo < hi:
        mid = (lo + hi) // 2
        ok, witness = solve_above(g, mid)
        if ok:
            hi, tree = wiener_tree(witness), witness
        else:
            lo = mid + 1
    return hi, tree


def run_solver(algo: str, g: Graph, budget, td=None):
    """Returns ``(W, decision, tree)``; ``W`` may be None only for ``above`` with a budget."""
    if algo == "oracle":
        tree, w = mad_tree_bruteforce(g)
    elif algo == "modular":
        _, tree, w = solve_modular(g)
    elif algo == "treewidth":
        _, w = solve_treewidth(g, td)
        tree = None
    elif algo == "vi":
        _, w, tree = solve_vertex_integrity(g)
    elif algo == "above":
        if budget is None:
            w, tree = _above_optimum(g)
        else:
            ok, tree = solve_above(g, budget)
            return (wiener_tree(tree) if ok else None), ok, tree
    else:
        raise AlgorithmUnavailable(f"unknown algorithm {algo!r}")
    return w, (None if budget is None else w <= budget), tree


def cmd_solve(args) -> int:
    g, notes = io.read_graph(args.graph)
    g.require_connected()
    budget = args.budget
    if budget is None and "budget" in notes:
        budget = int(notes["budget"])
    start = time.perf_counter()
    algo = args.algo
    if algo == "auto":
        algo, _ = choose_algorithm(g, args)
    td = _load_td(args.td, g) if args.td and algo == "treewidth" else None
    w, decision, tree = run_solver(algo, g, budget, td)
    millis = round((time.perf_counter() - start) * 1000, 3)
    if args.emit_tree:
        if tree is None:
            print(f"note: the {algo} solver gives no witness tree; nothing written", file=sys.stderr)
        else:
            io.write_text(args.emit_tree, io.format_tree(tree, [f"algo {algo}"]))
    if args.json:
        report = {"algo": algo, "n": g.n, "m": g.m, "W": w, "millis": millis}
        if budget is not None:
            report["budget"] = budget
            report["decision"] = decision
        if tree is not None:
            report["witness_edges"] = [[u + 1, v + 1] for u, v in tree.edges]
        print(json.dumps(report, sort_keys=True))
    else:
        parts = [] if w is None else [f"W={w}"]
        if decision is not None:
            parts.append("yes" if decision else "no")
        if args.algo == "auto":
            parts.append(f"(algo={algo})")
        print(" ".join(parts))
    return 1 if decision is False else 0


def cmd_wiener(args) -> int:
    g, _ = io.read_graph(args.graph)
    if g.m == g.n - 1 and g.is_connected():
        print(wiener_tree(SpanningTree(g, g.edges())))
    else:
        print(wiener_graph(g))
    return 0


def _emit(args, text: str) -> None:
    if args.out:
        io.write_text(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "x3c":
        x = gen_x3c(args.q, args.s, args.seed, planted=args.planted)
        red = reduce_x3c(x)
        prov = red.provenance
        comments = [f"budget {red.budget}", f"x3c q={prov['q']} s={prov['s']} seed={args.seed}"]
        if args.x3c_out:
            io.write_text(args.x3c_out, io.format_x3c(x.universe, x.sets))
        _emit(args, io.format_graph(red.graph, comments))
        return 0
    if kind == "random":
        g = gen_random_connected(args.n, args.p, args.seed)
    elif kind == "cograph":
        g = gen_cograph(args.n, args.seed)
    elif kind == "ktree":
        g = gen_partial_ktree(args.n, args.k, args.removals, args.seed)
    else:
        g = gen_split(args.clique, args.ind, args.p, args.seed)
    _emit(args, io.format_graph(g, [f"{kind} seed={args.seed}"]))
    return 0


def tree_violations(g: Graph, t: Graph) -> list[str]:
    out = []
    if t.n != g.n:
        out.append(f"tree has {t.n} vertices, graph has {g.n}")
        return out
    if t.m != g.n - 1:
        out.append(f"tree has {t.m} edges, a spanning tree needs {g.n - 1}")
    for u, v in t.edges():
        if not g.has_edge(u, v):
            out.append(f"edge ({u + 1}, {v + 1}) is not in the graph")
    if not t.is_connected():
        out.append(f"tree edges leave {len(t.components())} components")
    return out


def cmd_check(args) -> int:
    g, _ = io.read_graph(args.graph)
    if args.tree:
        t, _ = io.read_graph(args.tree)
        problems = tree_violations(g, t)
        if not problems:
            print(f"ok: spanning tree with W={wiener_tree(SpanningTree(g, t.edges()))}")
    else:
        bags, edges, n = io.read_td(args.td)
        td = TreeDecomposition(tuple(bags), tuple(edges))
        problems = [] if n == g.n else [f"decomposition is for {n} vertices, graph has {g.n}"]
        problems += td.violations(g)
        if not problems:
            print(f"ok: tree decomposition of width {td.width}")
    for p in problems:
        print(f"violation: {p}")
    return 2 if problems else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="madtree", description="Minimum average-distance spanning trees")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="optimal Wiener index of a spanning tree")
    p.add_argument("graph")
    p.add_argument("--algo", choices=ALGORITHMS, default="auto")
    p.add_argument("--budget", type=int, help="decide W <= budget (default: 'c budget' line of the file)")
    p.add_argument("--td", help="PACE .td decomposition for the treewidth solver")
    p.add_argument("--emit-tree", help="write the witness tree to this file")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--threads", type=int, default=1, help="accepted for compatibility; solvers run single-threaded")
    p.add_argument("--max-modules", type=int, default=AUTO_MAX_MODULES)
    p.add_argument("--max-width", type=int, default=AUTO_MAX_WIDTH)
    p.add_argument("--max-above-k", type=int, default=AUTO_MAX_ABOVE_K)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("wiener", help="Wiener index of a graph or tree file")
    p.add_argument("graph")
    p.set_defaults(func=cmd_wiener)

    p = sub.add_parser("gen", help="generate instances")
    gsub = p.add_subparsers(dest="kind", required=True)
    x = gsub.add_parser("x3c", help="reduced split graph of a random X3C instance")
    x.add_argument("--q", type=int, required=True)
    x.add_argument("--s", type=int, required=True)
    x.add_argument("--planted", action="store_true", help="hide an exact cover among the sets")
    x.add_argument("--x3c-out", help="also write the X3C instance here")
    r = gsub.add_parser("random", help="connected G(n, p)")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--p", type=float, default=0.3)
    c = gsub.add_parser("cograph", help="connected random cograph")
    c.add_argument("--n", type=int, required=True)
    k = gsub.add_parser("ktree", help="partial k-tree")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--k", type=int, default=2)
    k.add_argument("--removals", type=int, default=0)
    s = gsub.add_parser("split", help="random connected split graph")
    s.add_argument("--clique", type=int, required=True)
    s.add_argument("--ind", type=int, required=True)
    s.add_argument("--p", type=float, default=0.5)
    for q in (x, r, c, k, s):
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--out", help="write here instead of stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="validate a spanning tree or a tree decomposition")
    p.add_argument("graph")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--tree")
    grp.add_argument("--td")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: cannot parse input: {exc}", file=sys.stderr)
    except DisconnectedGraph as exc:
        print(f"error: graph is disconnected: {exc}", file=sys.stderr)
    except TooLarge as exc:
        print(f"error: instance too large: {exc}", file=sys.stderr)
    except (InvalidDecomposition, InvalidTree) as exc:
        print(f"error: invalid structure: {exc}", file=sys.stderr)
    except MadTreeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
