import pytest

from madtree import io
from madtree.errors import ParseError
from madtree.graph import Graph, SpanningTree


def test_graph_round_trip():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    h, notes = io.parse_graph(io.format_graph(g, ["budget 12"]))
    assert h == g
    assert notes["budget"] == "12"


def test_pace_graph_header_and_bare_pairs():
    g, _ = io.parse_graph("c hello\np tw 3 2\n1 2\n2 3\n")
    assert g.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize(
    "text",
    [
        "e 1 2\n",
        "p edge 2 1\ne 1 3\n",
        "p edge 2 2\ne 1 2\n",
        "p edge 2 2\ne 1 2\ne 2 1\n",
        "p edge 2 1\ne 1 x\n",
        "p edge 2 1\np edge 2 1\ne 1 2\n",
        "p edge 2 1\ne 1 1\n",
        "",
    ],
)
def test_graph_parse_errors(text):
    with pytest.raises(ParseError):
        io.parse_graph(text)


def test_tree_output_has_wiener_sidecar():
    g = Graph.path(4)
    text = io.format_tree(SpanningTree(g, g.edges()))
    assert "c wiener 10" in text


def test_td_round_trip():
    bags = [frozenset({0, 1}), frozenset({1, 2})]
    text = io.format_td(bags, [(0, 1)], 3)
    assert text.startswith("s td 2 2 3")
    b2, e2, n = io.parse_td(text)
    assert list(b2) == bags and list(e2) == [(0, 1)] and n == 3


@pytest.mark.parametrize("text", ["b 1 1\n", "s td 1 2 3\nb 2 1\n", "s td 1 2 3\nb 1 9\n", "s td 2 2 3\nb 1 1\nb 2 2\n1\n"])
def test_td_parse_errors(text):
    with pytest.raises(ParseError):
        io.parse_td(text)


def test_x3c_round_trip():
    sets = [(0, 1, 2), (3, 4, 5)]
    universe, parsed = io.parse_x3c(io.format_x3c(6, sets))
    assert universe == 6 and list(parsed) == sets


@pytest.mark.parametrize("text", ["1 2 3\n", "x3c 3 1\n1 2\n", "x3c 3 1\n1 2 7\n", "x3c 3 2\n1 2 3\n"])
def test_x3c_parse_errors(text):
    with pytest.raises(ParseError):
        io.parse_x3c(text)


def test_dot_highlights_edges():
    text = io.format_dot(Graph.path(3), [(0, 1)])
    assert text.startswith("graph {")
    assert "1 -- 2 [penwidth=3];" in text and "2 -- 3;" in text
