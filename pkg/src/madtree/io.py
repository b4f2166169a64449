"""Text formats: DIMACS-like graphs/trees, PACE tree decompositions, X3C, DOT.

All formats use 1-based vertex ids on disk and 0-based ids in memory.
"""

from __future__ import annotations

from typing import Iterable

from .errors import InvalidGraph, ParseError
from .graph import Graph, SpanningTree, wiener_tree


def _lines(text: str) -> Iterable[tuple[int, str]]:
    return enumerate(text.splitlines(), 1)


def _read(path) -> str:
    with open(path) as fh:
        return fh.read()


def _ints(parts, lineno):
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {' '.join(parts)!r}") from None


def parse_graph(text: str) -> tuple[Graph, dict[str, str]]:
    """Read ``p edge n m`` / ``e u v`` text (PACE ``p tw`` with bare pairs too).

    Returns the graph and the ``c key value`` comment annotations, so that
    sidecar lines such as ``c budget 9`` or ``c wiener 10`` are available.
    """
    n = m = None
    edges = []
    notes: dict[str, str] = {}
    for lineno, raw in _lines(text):
        parts = raw.split()
        if not parts:
            continue
        head = parts[0]
        if head == "c":
            if len(parts) >= 3:
                notes[parts[1]] = " ".join(parts[2:])
            continue
        if head == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] not in ("edge", "tw"):
                raise ParseError(f"line {lineno}: malformed header {raw!r}")
            n, m = _ints(parts[2:], lineno)
            continue
        if n is None:
            raise ParseError(f"line {lineno}: edge before header")
        if head == "e":
            parts = parts[1:]
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: malformed edge line {raw!r}")
        u, v = _ints(parts, lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"line {lineno}: vertex out of range 1..{n}")
        edges.append((u - 1, v - 1))
    if n is None:
        raise ParseError("missing 'p edge <n> <m>' header")
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    try:
        g = Graph(n, edges)
    except InvalidGraph as exc:
        raise ParseError(str(exc)) from None
    if g.m != m:
        raise ParseError("duplicate edges in input")
    return g, notes


def read_graph(path) -> tuple[Graph, dict[str, str]]:
    return parse_graph(_read(path))


def read_td(path):
    return parse_td(_read(path))


def read_x3c(path):
    return parse_x3c(_read(path))


def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p edge {g.n} {g.m}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def format_tree(t: SpanningTree, comments: Iterable[str] = ()) -> str:
    g = t.as_graph()
    return format_graph(g, comments) + f"c wiener {wiener_tree(t)}\n"


def write_text(path, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def format_dot(g: Graph, highlight: Iterable[tuple[int, int]] = ()) -> str:
    marked = {tuple(sorted(e)) for e in highlight}
    out = ["graph {"]
    out.extend(f"  {v + 1};" for v in range(g.n))
    for u, v in g.edges():
        style = " [penwidth=3]" if (u, v) in marked else ""
        out.append(f"  {u + 1} -- {v + 1}{style};")
    out.append("}")
    return "\n".join(out) + "\n"


def parse_td(text: str) -> tuple[list[frozenset[int]], list[tuple[int, int]], int]:
    """Parse a PACE ``.td`` file into 0-based bags, bag-tree edges and n."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    tree_edges = []
    for lineno, raw in _lines(text):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError(f"line {lineno}: malformed header {raw!r}")
            header = _ints(parts[2:], lineno)
            continue
        if header is None:
            raise ParseError(f"line {lineno}: content before 's td' header")
        if parts[0] == "b":
            ids = _ints(parts[1:], lineno)
            if not ids:
                raise ParseError(f"line {lineno}: bag without id")
            bag_id, verts = ids[0], ids[1:]
            if not 1 <= bag_id <= header[0]:
                raise ParseError(f"line {lineno}: bag id {bag_id} out of range")
            if any(not 1 <= v <= header[2] for v in verts):
                raise ParseError(f"line {lineno}: vertex out of range")
            bags[bag_id] = frozenset(v - 1 for v in verts)
            continue
        ids = _ints(parts, lineno)
        if len(ids) != 2:
            raise ParseError(f"line {lineno}: malformed tree edge {raw!r}")
        tree_edges.append((ids[0] - 1, ids[1] - 1))
    if header is None:
        raise ParseError("missing 's td' header")
    nbags, _, n = header
    if sorted(bags) != list(range(1, nbags + 1)):
        raise ParseError(f"expected bags 1..{nbags}")
    return [bags[i] for i in range(1, nbags + 1)], tree_edges, n


def format_td(bags, tree_edges, n: int) -> str:
    width1 = max((len(b) for b in bags), default=0)
    out = [f"s td {len(bags)} {width1} {n}"]
    for i, bag in enumerate(bags, 1):
        out.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    out.extend(f"{a + 1} {b + 1}" for a, b in tree_edges)
    return "\n".join(out) + "\n"


def parse_x3c(text: str) -> tuple[int, list[tuple[int, int, int]]]:
    """Parse ``x3c <3q> <s>`` followed by ``s`` triples; returns 0-based triples."""
    header = None
    sets = []
    for lineno, raw in _lines(text):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if header is None:
            if parts[0] != "x3c" or len(parts) != 3:
                raise ParseError(f"line {lineno}: expected 'x3c <3q> <s>'")
            header = _ints(parts[1:], lineno)
            continue
        triple = _ints(parts, lineno)
        if len(triple) != 3:
            raise ParseError(f"line {lineno}: expected three element ids")
        if any(not 1 <= x <= header[0] for x in triple):
            raise ParseError(f"line {lineno}: element out of range")
        sets.append(tuple(x - 1 for x in triple))
    if header is None:
        raise ParseError("missing 'x3c' header")
    if len(sets) != header[1]:
        raise ParseError(f"header announces {header[1]} sets, found {len(sets)}")
    return header[0], sets


def format_x3c(universe: int, sets) -> str:
    out = [f"x3c {universe} {len(sets)}"]
    out.extend(" ".join(str(x + 1) for x in c) for c in sets)
    return "\n".join(out) + "\n"
