"""Finite realisations of (iterated) blow-ups."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from ..graph import UniformGraph
from .pattern import Pattern, PatternError

MAX_VERTICES = 200


def part_sizes(weights, n: int) -> list[int]:
    """Split ``n`` vertices by largest remainder; ties go to the lower part index."""
    raw = [Fraction(w) * n for w in weights]
    sizes = [int(x) for x in raw]
    left = n - sum(sizes)
    order = sorted(range(len(raw)), key=lambda i: (-(raw[i] - sizes[i]), i))
    for i in order[:left]:
        sizes[i] += 1
    return sizes


def build_blowup(p: Pattern, n: int, depth: int = 1) -> UniformGraph:
    """Explicit ``n``-vertex graph realising ``p``.

    Recursive parts hold a copy of the construction on their own vertices, down
    to ``depth`` levels; at the last level they are left empty.
    """
    if n < 0 or n > MAX_VERTICES:
        raise PatternError(f"n must be between 0 and {MAX_VERTICES}")
    if depth < 1:
        raise PatternError("depth must be at least 1")
    edges: list[tuple] = []
    _fill(p, list(range(n)), depth, edges)
    return UniformGraph.from_edges(n, edges, p.arity, p.directed)


def _fill(p: Pattern, verts: list[int], depth: int, edges: list):
    sizes = part_sizes(p.weights, len(verts))
    part_of = {}
    groups = []
    pos = 0
    for i, s in enumerate(sizes):
        grp = verts[pos:pos + s]
        groups.append(grp)
        for v in grp:
            part_of[v] = i
        pos += s
    tuples = permutations(verts, 2) if p.directed else combinations(verts, p.arity)
    for e in tuples:
        pe = tuple(part_of[v] for v in e)
        if pe[0] in p.recursive and all(x == pe[0] for x in pe):
            continue
        if p.is_edge(pe):
            edges.append(e)
    if depth > 1:
        for i in sorted(p.recursive):
            if len(groups[i]) >= p.arity:
                _fill(p, groups[i], depth - 1, edges)
