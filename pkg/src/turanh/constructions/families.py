"""Named constructions: G_t, pattern homomorphisms, and patterns built from graphs."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from ..graph import UniformGraph
from .pattern import Pattern, PatternError, complement_pattern


def h_pattern_edges(t: int) -> set[tuple[int, ...]]:
    """Degenerate 3-graph H_t on parts 0..t-1 (0-based)."""
    if t < 2:
        raise PatternError("H_t is defined for t >= 2")
    if t == 2:
        return {(0, 0, 0), (1, 1, 1), (0, 0, 1), (0, 1, 1)}
    if t == 3:
        return {(0, 0, 0), (1, 1, 1), (2, 2, 2), (0, 0, 1), (1, 1, 2), (0, 2, 2)}
    a, b = t - 2, t - 1
    return h_pattern_edges(t - 2) | {(a, a, a), (b, b, b), (a, a, b), (a, b, b)}


def gt_pattern(t: int) -> Pattern:
    """Complement of the balanced blow-up of H_{t-1}; a K_t-free template on t-1 parts."""
    if t < 3:
        raise PatternError("G_t needs t >= 3")
    k = t - 1
    base = Pattern(k, frozenset(h_pattern_edges(k)), tuple(Fraction(1, k) for _ in range(k)))
    return complement_pattern(base)


def gt_edge_density(t: int) -> Fraction:
    return 1 - Fraction(4, (t - 1) ** 2)


def gt_kminus_density(t: int) -> Fraction:
    """Closed form for the K_t^- density of G_t (separate odd and even formulas)."""
    if t % 2:
        return Fraction(factorial(t), (t - 1) ** (t - 1)) * Fraction(2) ** ((t - 1) // 2) / 3
    return Fraction(factorial(t), (t - 1) ** t) * Fraction(5 * t - 8, 3) * Fraction(2) ** ((t - 6) // 2)


def pattern_from_graph(g: UniformGraph, recursive: bool = False, weights=None) -> Pattern:
    """Blow-up template whose parts are the vertices of ``g`` (optionally all recursive)."""
    rec = frozenset(range(g.n)) if recursive else frozenset()
    w = tuple(weights) if weights else tuple(Fraction(1, g.n) for _ in range(g.n))
    return Pattern(g.n, frozenset(g.edges), w, rec, g.arity, g.directed)


def pattern_hom_exists(g: UniformGraph, p: Pattern) -> bool:
    """Whether some map V(g) -> parts sends every edge of ``g`` onto a part-edge of ``p``."""
    if p.recursive:
        raise PatternError("homomorphisms are checked against non-recursive patterns")
    if g.kind != (p.arity, p.directed):
        raise PatternError("graph and pattern kinds differ")
    phi = [-1] * g.n
    by_last = [[] for _ in range(g.n)]
    for e in g.edges:
        by_last[max(e)].append(e)

    def rec(v):
        if v == g.n:
            return True
        for part in range(p.parts):
            phi[v] = part
            if all(p.is_edge(tuple(phi[u] for u in e)) for e in by_last[v]):
                if rec(v + 1):
                    return True
        phi[v] = -1
        return False

    return rec(0)
