import random

import networkx as nx
import pytest

from rbtri.errors import ParseError
from rbtri.formats import from_graph6, from_text, parse_graph, to_graph6, to_text
from rbtri.graph import Graph, complete_graph

from helpers import random_graph


def _nx_graph6(g):
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode().strip()


def test_k4():
    assert to_graph6(complete_graph(4)) == "C~"
    assert from_graph6("C~") == complete_graph(4)
    assert from_graph6(">>graph6<<C~\n") == complete_graph(4)


def test_graph6_matches_networkx():
    rng = random.Random(5)
    for _ in range(300):
        g = random_graph(rng, rng.randint(0, 20), rng.random())
        s = to_graph6(g)
        assert s == _nx_graph6(g)
        assert from_graph6(s) == g
        back = nx.from_graph6_bytes(s.encode())
        assert sorted(map(tuple, map(sorted, back.edges()))) == list(g.edges)


def test_large_n_header():
    g = Graph(64, [(0, 63), (10, 11)])
    s = to_graph6(g)
    assert s.startswith("~")
    assert from_graph6(s) == g
    assert s == _nx_graph6(g)


@pytest.mark.parametrize("bad", ["", "C", "C~~", "C\x7f", "Bz"])
def test_graph6_rejects(bad):
    with pytest.raises(ParseError):
        from_graph6(bad)


def test_text_roundtrip():
    g = Graph(5, [(0, 1), (1, 4), (2, 3)])
    assert from_text(to_text(g)) == g
    assert parse_graph(to_text(g)) == g
    assert parse_graph("C~") == complete_graph(4)
    assert parse_graph("# comment\n3\n0 1 # edge\n") == Graph(3, [(0, 1)])
    with pytest.raises(ParseError):
        from_text("3\n0 1\n1 0\n")
    with pytest.raises(ParseError):
        from_text("x\n")
