from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from turanh.canon import canonical_key
from turanh.catalog import named_graph, strong_cycle
from turanh.constructions import geometric_exact, geometric_sample
from turanh.constructions.geometric import (Arrangement, geometric_bruteforce, gf2_basis,
                                            random_arrangement)
from turanh.graph import GraphError


def test_h4_distribution():
    d = geometric_exact(4)
    assert d.prob(named_graph("4.2")) == Fraction(3, 4)
    assert d.prob(named_graph("4.0")) == Fraction(1, 8)
    assert d.prob(named_graph("4.4")) == Fraction(1, 8)
    assert d.prob(named_graph("4.1")) == 0
    assert d.prob(named_graph("4.3")) == 0
    assert sum(d.probabilities.values()) == 1


def test_h4_regions():
    d = geometric_exact(4)
    assert d.faces == 4          # the four triangles cut by two diagonals
    assert d.rank == 3


def test_h5_c5():
    d = geometric_exact(5)
    assert d.prob(strong_cycle(5)) == Fraction(3, 16)
    assert d.faces == 11


@pytest.mark.parametrize("h", [4, 5, 6])
def test_edge_marginal(h):
    assert geometric_exact(h).edge_marginal() == Fraction(1, 2)


@pytest.mark.parametrize("h,rank", [(4, 3), (5, 6), (6, 10)])
def test_rank_is_number_of_triples(h, rank):
    assert geometric_exact(h).rank == rank


@pytest.mark.parametrize("seed", [0, 1, 7])
def test_span_matches_bruteforce(seed):
    arr = random_arrangement(5, np.random.default_rng(seed))
    brute = geometric_bruteforce(arr)
    assert brute.probabilities == geometric_exact(5, seed).probabilities


def test_independent_of_point_positions():
    assert geometric_exact(5, 0).probabilities == geometric_exact(5, 3).probabilities


def test_h5_restricts_to_h4():
    d5, d4 = geometric_exact(5), geometric_exact(4)
    marg: dict = {}
    for key, p in d5.probabilities.items():
        g = d5.graphs[key]
        for s in combinations(range(5), 4):
            k = canonical_key(g.induced(s))
            marg[k] = marg.get(k, 0) + p / 5
    assert {k: v for k, v in marg.items() if v} == d4.probabilities


@pytest.mark.parametrize("n", [5, 8])
def test_combinatorial_incidence_matches_geometry(n):
    arr = random_arrangement(n, np.random.default_rng(11))
    for x, y, z in combinations(range(n), 3):
        assert arr.triangle_faces(x, y, z) == arr.triangle_faces_exact(x, y, z)


def test_euler_and_face_count():
    from math import comb
    for n in (4, 6, 9):
        arr = random_arrangement(n, np.random.default_rng(n))
        assert len(arr.faces) == comb(n, 4) + comb(n - 1, 2)
        # V - E + F = 2 counting the outer face
        assert arr.num_vertices - arr.num_edges + len(arr.faces) + 1 == 2


def test_repeated_point_rejected():
    from turanh.constructions.geometric import DegenerateArrangement
    with pytest.raises(DegenerateArrangement):
        Arrangement((Fraction(0), Fraction(0), Fraction(1), Fraction(2)))


def test_concurrent_diagonals_rejected():
    # t and -1/t are antipodal, so three such pairs give three diameters through the centre
    from turanh.constructions.geometric import DegenerateArrangement
    ts = sorted(Fraction(x) for x in ("-3", "-2", "-1/2", "1/3", "1/2", "2"))
    with pytest.raises(DegenerateArrangement):
        Arrangement(tuple(ts))


def test_gf2_basis():
    assert len(gf2_basis([0b011, 0b101, 0b110])) == 2
    assert gf2_basis([]) == []


def test_exact_range():
    with pytest.raises(GraphError):
        geometric_exact(7)


def test_sample_determinism():
    a = geometric_sample(8, 5, seed=3)
    b = geometric_sample(8, 5, seed=3)
    assert a == b
    assert geometric_sample(8, 5, seed=4) != a


def test_sample_range():
    with pytest.raises(GraphError):
        geometric_sample(4, 10)
    with pytest.raises(GraphError):
        geometric_sample(8, 0)


@pytest.mark.slow
def test_sample_n12():
    s = geometric_sample(12, 200, seed=0)
    mean, se = s.stat(named_graph("4.2"))
    assert abs(mean - 0.75) <= 3 * se
    mean, se = s.edge_density
    assert abs(mean - 0.5) <= 3 * se
