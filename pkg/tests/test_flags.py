from fractions import Fraction
from itertools import combinations, permutations
from math import comb, perm

import numpy as np
import pytest

from turanh.catalog import k_minus, named_graph, out_star, single_edge
from turanh.density import density
from turanh.enumerate import ForbiddenFamily, enumerate_graphs
from turanh.flags import (assemble, constraint_values, enumerate_types_and_flags, flag_pair_density,
                          flags_of_type, type_sizes)
from turanh.graph import GraphError, UniformGraph, complete_graph, parse_graph


def triangle():
    return UniformGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)], 2)


def fixed_iso(a, b, s):
    """Isomorphic by a map that fixes 0..s-1 (plain permutation search)."""
    if a.n != b.n or a.num_edges != b.num_edges:
        return False
    for p in permutations(range(s, a.n)):
        f = list(range(s)) + list(p)
        if a.relabel(f) == b:
            return True
    return False


def test_type_sizes():
    assert type_sizes(3) == [1]
    assert type_sizes(4) == [0, 2]
    assert type_sizes(6) == [0, 2, 4]


def test_mantel_types():
    types = enumerate_types_and_flags(3, ForbiddenFamily.of(triangle()), arity=2)
    assert len(types) == 1
    assert types[0].s == 1 and len(types[0].flags) == 2


def test_order_four_types():
    types = enumerate_types_and_flags(4)
    assert [t.s for t in types] == [0, 2]
    assert len(types[1].flags) == 2          # the 3-vertex extensions: edge or not
    assert len(types[0].flags) == 1          # 2 vertices hold no 3-edge


def test_directed_flags():
    types = enumerate_types_and_flags(3, arity=2, directed=True)
    assert len(types) == 1 and len(types[0].flags) == 3


@pytest.mark.parametrize("s,m", [(1, 3), (2, 4), (0, 3)])
def test_flags_against_bruteforce(s, m):
    for sigma in enumerate_graphs(s):
        flags = flags_of_type(sigma, m)
        reps = []
        for g in enumerate_graphs(m):
            for p in permutations(range(m)):
                h = g.relabel(list(p))
                if h.induced(range(s)) == sigma and not any(fixed_iso(h, r, s) for r in reps):
                    reps.append(h)
        assert len(flags) == len(reps)


def test_pair_density_examples():
    e = single_edge()
    empty = UniformGraph.from_edges(0, [], 3)
    one = UniformGraph.from_edges(6, [(0, 1, 2)], 3)
    two = UniformGraph.from_edges(6, [(0, 1, 2), (3, 4, 5)], 3)
    assert flag_pair_density(e, e, empty, one) == 0
    assert flag_pair_density(e, e, empty, two) == Fraction(1, 10)


def test_pair_density_symmetric():
    rng = np.random.default_rng(5)
    sigma = UniformGraph.from_edges(1, [], 3)
    flags = flags_of_type(sigma, 3)
    for _ in range(10):
        n = int(rng.integers(5, 7))
        edges = [e for e in combinations(range(n), 3) if rng.random() < 0.5]
        g = UniformGraph.from_edges(n, edges, 3)
        a, b = (flags[int(i)] for i in rng.integers(0, len(flags), 2))
        assert flag_pair_density(a, b, sigma, g) == flag_pair_density(b, a, sigma, g)


def test_pair_density_errors():
    e = single_edge()
    with pytest.raises(GraphError):
        flag_pair_density(e, e, UniformGraph.from_edges(0, [], 3), UniformGraph.from_edges(5, [], 3))


def test_mantel_problem():
    p = assemble(3, ForbiddenFamily.of(triangle()), UniformGraph.from_edges(2, [(0, 1)], 2))
    assert p.d == (0, Fraction(1, 3), Fraction(2, 3))
    # D for the cherry: the two pendant flags occur once each way out of six
    assert p.matrix(0, 2) == [[0, Fraction(1, 3)], [Fraction(1, 3), Fraction(1, 3)]]


def test_order_four_d():
    p = assemble(4, (), named_graph("4.2"))
    assert p.d == (0, 0, 1, 0, 0)
    assert [g.num_edges for g in p.graphs] == [0, 1, 2, 3, 4]


def test_d_matches_density():
    fam = ForbiddenFamily.of(k_minus(4))
    p = assemble(5, fam, single_edge())
    assert list(p.d) == [density(single_edge(), g) for g in p.graphs]


@pytest.mark.parametrize("N,fam", [(4, ()), (5, ()), (5, ForbiddenFamily.of(complete_graph(4)))])
def test_coefficients_against_bruteforce(N, fam):
    p = assemble(N, fam, single_edge())
    for t, ft in enumerate(p.types):
        s, m = ft.s, ft.m
        for i, g in enumerate(p.graphs):
            counts: dict = {}
            for theta in permutations(range(N), s):
                rest = [v for v in range(N) if v not in theta]
                for x1 in combinations(rest, m - s):
                    f1 = g.induced(theta + x1)
                    if f1.induced(range(s)) != ft.sigma:
                        continue
                    a = next(k for k, f in enumerate(ft.flags) if fixed_iso(f1, f, s))
                    x2 = tuple(v for v in rest if v not in x1)
                    f2 = g.induced(theta + x2)
                    b = next(k for k, f in enumerate(ft.flags) if fixed_iso(f2, f, s))
                    counts[(a, b)] = counts.get((a, b), 0) + 1
            total = perm(N, s) * comb(N - s, m - s)
            assert p.coefficients[t][i] == {k: Fraction(v, total) for k, v in counts.items()}


def test_coefficients_symmetric_and_sum():
    # entries of one type sum to the chance a random embedding induces it
    p = assemble(5, (), single_edge())
    for i in range(len(p.graphs)):
        by_size: dict = {}
        for t, ft in enumerate(p.types):
            m = p.matrix(t, i)
            assert m == [list(r) for r in zip(*m)]
            by_size[ft.s] = by_size.get(ft.s, 0) + sum(map(sum, m))
        assert set(by_size.values()) == {1}


def test_rank_one_values():
    # <vv^T, D> for v = indicator of one flag is the chance both halves land on it
    p = assemble(4, (), single_edge())
    for t, ft in enumerate(p.types):
        for a in range(len(ft.flags)):
            q = [[Fraction(int(i == j == a)) for j in range(len(ft.flags))] for i in range(len(ft.flags))]
            qs = [q if u == t else [[0] * len(x.flags) for _ in x.flags] for u, x in enumerate(p.types)]
            got = constraint_values(p, qs)
            for i in range(len(p.graphs)):
                assert got[i] == p.d[i] + p.coefficients[t][i].get((a, a), 0)


def test_directed_problem():
    p = assemble(3, (), out_star(3))
    assert len(p.graphs) == 7
    assert sum(p.d) == 1


def test_threads_env(monkeypatch):
    monkeypatch.setenv("TURANH_THREADS", "2")
    a = assemble(6, ForbiddenFamily.of(k_minus(4)), single_edge())
    monkeypatch.setenv("TURANH_THREADS", "1")
    b = assemble(6, ForbiddenFamily.of(k_minus(4)), single_edge())
    assert a.coefficients == b.coefficients and a.d == b.d


def test_bad_threads(monkeypatch):
    monkeypatch.setenv("TURANH_THREADS", "lots")
    with pytest.raises(GraphError):
        assemble(6, ForbiddenFamily.of(k_minus(4)), single_edge())


def test_target_too_large():
    with pytest.raises(GraphError):
        assemble(3, (), named_graph("4.2"))
