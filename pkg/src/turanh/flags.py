"""Types, flags and the semi-definite density problem.

For an order ``N`` every admissible type has ``s`` vertices with ``s = N mod 2``
and ``s <= N - 2``; its flags have ``m = (N + s) / 2`` vertices, so two flags
over a shared type fill exactly ``N`` vertices.

Flag-pair coefficients use one averaging convention throughout: a uniformly
random injective embedding of the type, then disjoint uniformly random vertex
sets for the two flags.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, perm

from .canon import canonical_form, canonical_key
from .density import as_target, density
from .enumerate import EMPTY_FAMILY, ForbiddenFamily, check_cap, enumerate_graphs
from .graph import GraphError, UniformGraph, tuple_index

THREADS_ENV = "TURANH_THREADS"


@dataclass(frozen=True)
class FlagType:
    """A type ``sigma`` (labelled on ``0..s-1``) with its flags on ``m`` vertices."""

    sigma: UniformGraph
    flags: tuple

    @property
    def s(self) -> int:
        return self.sigma.n

    @property
    def m(self) -> int:
        return self.flags[0].n if self.flags else self.s

    @property
    def key(self) -> tuple:
        return (self.s, canonical_key(self.sigma))


def _flag_extensions(sigma: UniformGraph, m: int):
    s = sigma.n
    slots = [e for e in tuple_index(m, sigma.arity, sigma.directed) if max(e) >= s]
    if sigma.directed:
        pairs = [e for e in slots if e[0] < e[1]]
        for choice in _ternary(len(pairs)):
            arcs = [p if c == 1 else (p[1], p[0]) for p, c in zip(pairs, choice) if c]
            yield UniformGraph.from_edges(m, list(sigma.edges) + arcs, 2, True)
        return
    for bits in range(1 << len(slots)):
        extra = [e for k, e in enumerate(slots) if bits >> k & 1]
        yield UniformGraph.from_edges(m, list(sigma.edges) + extra, sigma.arity)


def _ternary(k):
    if k == 0:
        yield ()
        return
    for rest in _ternary(k - 1):
        for c in (0, 1, 2):
            yield rest + (c,)


def flags_of_type(sigma: UniformGraph, m: int, family: ForbiddenFamily = EMPTY_FAMILY) -> tuple:
    """Admissible flags on ``m`` vertices over ``sigma``, up to label-preserving isomorphism."""
    s = sigma.n
    seen = {}
    for g in _flag_extensions(sigma, m):
        cf = canonical_form(g, labelled=s)
        if cf.key in seen:
            continue
        if family and not family.admits(g):
            seen[cf.key] = None
            continue
        seen[cf.key] = g.relabel(cf.perm)
    out = [g for g in seen.values() if g is not None]
    out.sort(key=lambda g: (g.num_edges, canonical_key(g, s)))
    return tuple(out)


def type_sizes(N: int) -> list[int]:
    return [s for s in range(N % 2, N - 1, 2)]


def enumerate_types_and_flags(N: int, family: ForbiddenFamily = EMPTY_FAMILY,
                              arity: int = 3, directed: bool = False) -> list[FlagType]:
    """All admissible types for order ``N``, sorted by (s, canonical key), with their flags."""
    if isinstance(family, (list, tuple)):
        family = ForbiddenFamily(tuple(family))
    check_cap(N, arity, directed)
    if N < 2:
        raise GraphError("order must be at least 2")
    out = []
    for s in type_sizes(N):
        m = (N + s) // 2
        for sigma in enumerate_graphs(s, arity, directed, family):
            flags = flags_of_type(sigma, m, family)
            if flags:
                out.append(FlagType(sigma, flags))
    out.sort(key=lambda t: t.key)
    return out


class _FlagIndex:
    """Maps the edge mask of an ordered vertex tuple to a flag index (or None)."""

    def __init__(self, ftype: FlagType):
        self.s = ftype.s
        self.keys = {canonical_form(f, self.s).key: i for i, f in enumerate(ftype.flags)}
        self.m = ftype.m
        self.kind = ftype.sigma.kind
        self.slots = tuple_index(self.m, *self.kind)
        self.cache: dict[int, int | None] = {}

    def lookup(self, g: UniformGraph, verts) -> int | None:
        m = 0
        edges = g.edges
        for k, e in enumerate(self.slots):
            t = tuple(verts[i] for i in e)
            if not g.directed:
                t = tuple(sorted(t))
            if t in edges:
                m |= 1 << k
        hit = self.cache.get(m, -1)
        if hit == -1:
            f = UniformGraph.from_mask(self.m, m, *self.kind)
            hit = self.keys.get(canonical_form(f, self.s).key)
            self.cache[m] = hit
        return hit


def _pair_counts(g: UniformGraph, s: int, idx1: _FlagIndex, idx2: _FlagIndex):
    """Counts of (theta, X1, X2) by flag-index pair, plus the total number of triples."""
    k1, k2 = idx1.m - s, idx2.m - s
    counts: dict[tuple[int, int], int] = {}
    for theta in permutations(range(g.n), s):
        rest = [v for v in range(g.n) if v not in theta]
        for x1 in combinations(rest, k1):
            a = idx1.lookup(g, theta + x1)
            if a is None:
                continue
            left = [v for v in rest if v not in x1]
            for x2 in combinations(left, k2):
                b = idx2.lookup(g, theta + x2)
                if b is not None:
                    counts[(a, b)] = counts.get((a, b), 0) + 1
    total = perm(g.n, s) * comb(g.n - s, k1) * comb(g.n - s - k1, k2)
    return counts, total


def flag_pair_density(f1: UniformGraph, f2: UniformGraph, sigma: UniformGraph,
                      g: UniformGraph) -> Fraction:
    """Probability that a random type embedding plus disjoint extensions induce ``f1`` and ``f2``."""
    s = sigma.n
    if f1.kind != g.kind or f2.kind != g.kind or sigma.kind != g.kind:
        raise GraphError("arity/directedness mismatch")
    if f1.n < s or f2.n < s or f1.n + f2.n - s > g.n:
        raise GraphError("flags do not fit in the host graph")
    for f in (f1, f2):
        if f.induced(range(s)) != sigma:
            raise GraphError("flag does not restrict to the given type")
    i1 = _FlagIndex(FlagType(sigma, (f1,)))
    i2 = _FlagIndex(FlagType(sigma, (f2,)))
    counts, total = _pair_counts(g, s, i1, i2)
    return Fraction(counts.get((0, 0), 0), total)


@dataclass(frozen=True)
class DensityProblem:
    order: int
    family: ForbiddenFamily
    target: tuple
    graphs: tuple                # admissible graphs on ``order`` vertices
    types: tuple                 # FlagType, sorted by (s, key)
    coefficients: tuple          # per type, per graph: dict {(a, b): Fraction}, symmetric
    d: tuple                     # target density in each admissible graph

    @property
    def arity(self) -> int:
        return self.graphs[0].arity

    @property
    def directed(self) -> bool:
        return self.graphs[0].directed

    def matrix(self, t: int, i: int) -> list[list[Fraction]]:
        k = len(self.types[t].flags)
        out = [[Fraction(0)] * k for _ in range(k)]
        for (a, b), v in self.coefficients[t][i].items():
            out[a][b] = v
        return out

    def keys(self) -> list[tuple]:
        return [canonical_key(g) for g in self.graphs]


def _graph_coefficients(args):
    g, types = args
    row = []
    for ft in types:
        idx = _FlagIndex(ft)
        counts, total = _pair_counts(g, ft.s, idx, idx)
        row.append({ab: Fraction(c, total) for ab, c in counts.items()})
    return row


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        raise GraphError(f"{THREADS_ENV} must be an integer") from None


def assemble(N: int, family, target) -> DensityProblem:
    """Coefficients of ``b >= d_i + sum_sigma <Q_sigma, D_sigma_i>`` for every admissible ``G_i``."""
    if isinstance(family, (list, tuple)):
        family = ForbiddenFamily(tuple(family))
    hs = as_target(target)
    arity, directed = hs[0].kind
    if hs[0].n > N:
        raise GraphError("target has more vertices than the order")
    for f, _ in family:
        if f.kind != (arity, directed):
            raise GraphError("family and target kinds differ")
    graphs = tuple(enumerate_graphs(N, arity, directed, family))
    if not graphs:
        raise GraphError("no admissible graphs on this order")
    types = tuple(enumerate_types_and_flags(N, family, arity, directed))
    jobs = [(g, types) for g in graphs]
    workers = _threads()
    if workers > 1 and len(jobs) > 50:
        with ProcessPoolExecutor(workers) as ex:
            rows = list(ex.map(_graph_coefficients, jobs, chunksize=16))
    else:
        rows = [_graph_coefficients(j) for j in jobs]
    coeffs = tuple(tuple(rows[i][t] for i in range(len(graphs))) for t in range(len(types)))
    d = tuple(density(hs, g) for g in graphs)
    return DensityProblem(N, family, hs, graphs, types, coeffs, d)


def constraint_values(problem: DensityProblem, qs) -> list[Fraction]:
    """``d_i + sum_sigma <Q_sigma, D_sigma_i>`` for every admissible graph, exactly."""
    out = []
    for i, di in enumerate(problem.d):
        v = Fraction(di)
        for t, q in enumerate(qs):
            for (a, b), c in problem.coefficients[t][i].items():
                v += c * q[a][b]
        out.append(v)
    return out
