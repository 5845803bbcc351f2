import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgscert.graph import (Graph, GraphFormatError, adjacency_matrix, complement, complete_graph,
                           cycle_graph, emit_adjacency_text, emit_graph6, empty_graph,
                           generalized_charpoly, parse_adjacency_text, parse_graph6, path_graph)


@st.composite
def graphs(draw, max_n=16):
    n = draw(st.integers(1, max_n))
    mask = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1))
    return Graph.from_edge_mask(n, mask)


# Known encodings from the nauty format description and common tools.
@pytest.mark.parametrize("text,n,edges", [
    ("@", 1, []),
    ("A_", 2, [(0, 1)]),
    ("A?", 2, []),
    ("Bw", 3, [(0, 1), (0, 2), (1, 2)]),
    ("DQc", 5, [(0, 2), (0, 4), (1, 3), (3, 4)]),
    ("D~{", 5, [(i, j) for j in range(5) for i in range(j)]),
])
def test_graph6_known(text, n, edges):
    g = parse_graph6(text)
    assert g.n == n
    assert sorted(g.edges()) == sorted(edges)
    assert emit_graph6(g).decode() == text


@given(graphs(max_n=30))
def test_graph6_round_trip(g):
    assert parse_graph6(emit_graph6(g)) == g


@given(graphs())
def test_adjacency_text_round_trip(g):
    assert parse_adjacency_text(emit_adjacency_text(g)) == g


def test_adjacency_text_without_spaces():
    g = parse_adjacency_text("011\n101\n110\n")
    assert g == complete_graph(3)


@pytest.mark.parametrize("bad,fragment", [
    (b"", "empty"),
    (b">>graph6<<Bw", "header"),
    (b"~?@?", "long-form"),
    (b"D~", "truncated"),
    (b"Bww", "trailing"),
    (b"Bx", "padding"),
    (b"B w", "out of range"),
    (b"!", "header byte"),
])
def test_graph6_rejects(bad, fragment):
    with pytest.raises(GraphFormatError, match=fragment):
        parse_graph6(bad)


def test_graph6_error_carries_offset():
    with pytest.raises(GraphFormatError) as exc:
        parse_graph6(b"D~\x01")
    assert exc.value.offset == 2


@pytest.mark.parametrize("text,fragment,row,col", [
    ("01\n1", "ragged", 1, None),
    ("02\n20", "non-binary", 0, 1),
    ("10\n00", "diagonal", 0, 0),
    ("01\n00", "asymmetric", 0, 1),
    ("\n\n", "no adjacency", None, None),
])
def test_adjacency_rejects(text, fragment, row, col):
    with pytest.raises(GraphFormatError, match=fragment) as exc:
        parse_adjacency_text(text)
    assert exc.value.row == row
    assert exc.value.col == col


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(ValueError):
        Graph(2, (0b01, 0b00))  # loop
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(0, ())


def test_edge_mask_bit_order():
    # bit j(j-1)/2 + i holds the edge {i, j}, i < j
    g = Graph.from_edges(4, [(1, 3)])
    assert g.edge_mask() == 1 << (3 * 2 // 2 + 1)
    assert Graph.from_edge_mask(4, g.edge_mask()) == g


@given(graphs())
def test_degrees_and_edges(g):
    assert sum(g.degree(v) for v in range(g.n)) == 2 * g.num_edges
    for i, j in g.edges():
        assert g.has_edge(i, j) and g.has_edge(j, i) and i < j


@given(graphs())
def test_complement_involution(g):
    c = complement(g)
    assert complement(c) == g
    assert g.num_edges + c.num_edges == g.n * (g.n - 1) // 2


@given(graphs(max_n=9), st.randoms(use_true_random=False))
@settings(max_examples=50)
def test_relabel_preserves_generalized_charpoly(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert generalized_charpoly(h) == generalized_charpoly(g)
    for i, j in g.edges():
        assert h.has_edge(perm[i], perm[j])


def test_constructors():
    assert complete_graph(4).num_edges == 6
    assert empty_graph(4).num_edges == 0
    assert path_graph(4).edges() == [(0, 1), (1, 2), (2, 3)]
    assert sorted(cycle_graph(4).edges()) == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_charpoly_small():
    # K3: x^3 - 3x - 2; its complement is empty: x^3
    pa, pc = generalized_charpoly(complete_graph(3))
    assert pa == (-2, -3, 0, 1)
    assert pc == (0, 0, 0, 1)


def test_fixtures_shape(g1, g2, counterexample):
    assert (g1.n, g1.num_edges) == (12, 28)
    assert (g2.n, g2.num_edges) == (13, 39)
    assert counterexample.n == 12
    for g in (g1, g2, counterexample):
        m = adjacency_matrix(g)
        assert all(m[i][j] == m[j][i] for i, j in itertools.product(range(g.n), repeat=2))


def test_repr_uses_graph6():
    assert repr(complete_graph(3)) == "Graph('Bw')"
    rng = random.Random(0)
    big = Graph.from_edges(70, [(i, i + 1) for i in range(69) if rng.random() < 0.5])
    assert "n=70" in repr(big)
