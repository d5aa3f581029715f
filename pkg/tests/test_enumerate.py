import pytest

from turanh.catalog import k_minus
from turanh.enumerate import CapExceeded, ForbiddenFamily, enumerate_graphs
from turanh.graph import complete_graph
from turanh.density import INDUCED, contains


@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 1), (3, 2), (4, 5), (5, 34)])
def test_three_graph_counts(n, count):
    assert len(enumerate_graphs(n)) == count


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 7), (4, 42)])
def test_oriented_counts(n, count):
    assert len(enumerate_graphs(n, 2, True)) == count


@pytest.mark.parametrize("n,count", [(3, 4), (4, 11), (5, 34), (6, 156)])
def test_graph_counts(n, count):
    assert len(enumerate_graphs(n, 2)) == count


def test_triangle_free_counts():
    fam = ForbiddenFamily.of(complete_graph(3, 2))
    assert [len(enumerate_graphs(n, 2, False, fam)) for n in range(1, 7)] == [1, 2, 3, 7, 14, 38]


@pytest.mark.slow
def test_six_vertex_three_graphs():
    assert len(enumerate_graphs(6)) == 2136


def test_family_members_are_excluded():
    fam = ForbiddenFamily.of(k_minus(4))
    for g in enumerate_graphs(5, family=fam):
        assert not contains(g, k_minus(4))


def test_induced_family():
    fam = ForbiddenFamily.of(k_minus(4), mode=INDUCED)
    graphs = enumerate_graphs(4, family=fam)
    assert len(graphs) == 4
    assert any(g.num_edges == 4 for g in graphs)


def test_output_sorted_by_edges():
    graphs = enumerate_graphs(5)
    assert [g.num_edges for g in graphs] == sorted(g.num_edges for g in graphs)


def test_caps():
    with pytest.raises(CapExceeded):
        enumerate_graphs(8)
    with pytest.raises(CapExceeded):
        enumerate_graphs(6, 2, True)
