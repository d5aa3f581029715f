import pytest
from hypothesis import given, settings, strategies as st

from turanh.catalog import H6, H7, named_graph, out_star, strong_cycle
from turanh.graph import (GraphError, UniformGraph, complement, complete_graph, dto3_transform,
                          format_graph, parse_graph)


def test_parse_format_round_trip():
    for text in ["5:123,234,345,145,125", "d3:12,13", "4:", "3:12,23"]:
        g = parse_graph(text)
        assert parse_graph(format_graph(g), g.arity) == g


def test_parse_rejects_garbage():
    for bad in ["", "x:12", "3:1!", "3:12,123", "3:124"]:
        with pytest.raises(GraphError):
            parse_graph(bad)


def test_digons_rejected_by_default():
    with pytest.raises(GraphError):
        UniformGraph.from_edges(2, [(0, 1), (1, 0)], 2, True)


def test_complement_of_complete_is_empty():
    assert complement(complete_graph(5)).num_edges == 0
    assert complement(H6).num_edges == 10


def test_h7_is_a_two_design():
    assert H7.num_edges == 14
    assert set(H7.degrees()) == {6}


def test_dto3_out_star_is_an_edge():
    g = dto3_transform(out_star(3))
    assert g.num_edges == 1


def test_dto3_cyclic_triangle_has_no_edge():
    d = UniformGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)], 2, True)
    assert dto3_transform(d).num_edges == 0


def test_dto3_rejects_undirected():
    with pytest.raises(GraphError):
        dto3_transform(named_graph("edge"))


def test_strong_cycle():
    assert strong_cycle(5).num_edges == 5
    assert set(strong_cycle(7).degrees()) == {3}


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 7), st.data())
def test_relabel_preserves_edge_count(n, data):
    g = UniformGraph.from_mask(n, data.draw(st.integers(0, 2 ** (n * (n - 1) * (n - 2) // 6) - 1)), 3)
    perm = data.draw(st.permutations(range(n)))
    h = g.relabel(perm)
    assert h.num_edges == g.num_edges
    assert sorted(h.degrees()) == sorted(g.degrees())
