"""Canonical labelling of small graphs.

The key is the minimum edge-indicator bitstring over the vertex orderings
reached by an individualisation/refinement search tree. Colour refinement is
label-invariant, so the set of leaves (and hence the minimum) does not depend
on the input labelling, and the number of leaves attaining the minimum is the
order of the automorphism group.

Flags are handled by ``labelled=s``: vertices ``0..s-1`` start in their own
singleton colour classes, in order, so only label-preserving maps count.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import factorial

from .graph import UniformGraph, tuple_index


@dataclass(frozen=True, order=True)
class CanonicalForm:
    key: tuple          # (arity, directed, n, labelled, bits)
    aut_size: int
    perm: tuple         # old vertex -> canonical position (one minimising leaf)

    @property
    def n(self) -> int:
        return self.key[2]

    @property
    def bitstring(self) -> str:
        arity, directed, n, _, bits = self.key
        width = len(tuple_index(n, arity, directed))
        return format(bits, f"0{width}b") if width else ""


def _bits(slots, edges, perm, directed) -> int:
    relab = set()
    for e in edges:
        f = tuple(perm[v] for v in e)
        relab.add(f if directed else tuple(sorted(f)))
    width = len(slots)
    val = 0
    for k, e in enumerate(slots):
        if e in relab:
            val |= 1 << (width - 1 - k)
    return val


def _normalise(colors):
    idx = {c: i for i, c in enumerate(sorted(set(colors)))}
    return [idx[c] for c in colors]


def _refine(colors, inc, outn, inn, directed):
    n = len(colors)
    ncol = len(set(colors))
    while True:
        if directed:
            sigs = [(colors[v],
                     tuple(sorted(colors[w] for w in outn[v])),
                     tuple(sorted(colors[w] for w in inn[v]))) for v in range(n)]
        else:
            sigs = [(colors[v],
                     tuple(sorted(tuple(sorted(colors[u] for u in e if u != v)) for e in inc[v])))
                    for v in range(n)]
        distinct = sorted(set(sigs))
        if len(distinct) == ncol:
            return colors
        idx = {s: i for i, s in enumerate(distinct)}
        colors = [idx[s] for s in sigs]
        ncol = len(distinct)


def _individualise(colors, v):
    c = colors[v]
    return [x if x < c or u == v else x + 1 for u, x in enumerate(colors)]


def canonical_form(g: UniformGraph, labelled: int = 0) -> CanonicalForm:
    return _canonical(g.n, g.arity, g.directed, g.edges, labelled)


@lru_cache(maxsize=200_000)
def _canonical(n, arity, directed, edges, labelled) -> CanonicalForm:
    slots = tuple_index(n, arity, directed)
    full = not directed and len(edges) == len(slots)
    if not edges or full:
        bits = (1 << len(slots)) - 1 if full and slots else 0
        return CanonicalForm((arity, directed, n, labelled, bits),
                             factorial(n - labelled), tuple(range(n)))
    inc = [[] for _ in range(n)]
    outn = [[] for _ in range(n)]
    inn = [[] for _ in range(n)]
    for e in edges:
        for v in e:
            inc[v].append(e)
        if directed:
            outn[e[0]].append(e[1])
            inn[e[1]].append(e[0])
    colors = [min(v, labelled) for v in range(n)]
    colors = _normalise(colors)
    best = [None, 0, None]

    def visit(cols):
        cols = _refine(cols, inc, outn, inn, directed)
        counts = {}
        for c in cols:
            counts[c] = counts.get(c, 0) + 1
        if len(counts) == n:
            val = _bits(slots, edges, cols, directed)
            if best[0] is None or val < best[0]:
                best[0], best[1], best[2] = val, 1, tuple(cols)
            elif val == best[0]:
                best[1] += 1
            return
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(n):
            if cols[v] == target:
                visit(_individualise(cols, v))

    visit(colors)
    return CanonicalForm((arity, directed, n, labelled, best[0]), best[1], best[2])


def canonical_graph(g: UniformGraph, labelled: int = 0) -> UniformGraph:
    """The canonical representative: ``g`` relabelled by its canonical ordering."""
    return g.relabel(canonical_form(g, labelled).perm)


def graph_from_key(key: tuple) -> UniformGraph:
    """The canonical representative encoded by a key."""
    arity, directed, n, _, bits = key
    slots = tuple_index(n, arity, directed)
    width = len(slots)
    edges = [e for k, e in enumerate(slots) if bits >> (width - 1 - k) & 1]
    return UniformGraph.from_edges(n, edges, arity, directed)


def canonical_key(g: UniformGraph, labelled: int = 0) -> tuple:
    return canonical_form(g, labelled).key


def is_isomorphic(g: UniformGraph, h: UniformGraph) -> bool:
    if g.kind != h.kind or g.n != h.n or g.num_edges != h.num_edges:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    if g.n <= 8:
        return canonical_key(g) == canonical_key(h)
    return find_isomorphism(g, h) is not None


def find_isomorphism(g: UniformGraph, h: UniformGraph):
    """Backtracking search for a bijection ``V(g) -> V(h)`` mapping edges onto edges."""
    if g.kind != h.kind or g.n != h.n or g.num_edges != h.num_edges:
        return None
    dg, dh = g.degrees(), h.degrees()
    if sorted(dg) != sorted(dh):
        return None
    n = g.n
    order = sorted(range(n), key=lambda v: -dg[v])
    mapping = [-1] * n
    used = [False] * n
    directed = g.directed
    gedges, hedges = g.edges, h.edges
    placed = []

    def consistent(v, w):
        # every slot among already-placed vertices plus v must agree
        for e in _slots_with(v, placed, g.arity, directed):
            img = tuple(mapping[u] if u != v else w for u in e)
            if not directed:
                img = tuple(sorted(img))
            if (e in gedges) != (img in hedges):
                return False
        return True

    def rec(i):
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if used[w] or dh[w] != dg[v]:
                continue
            if consistent(v, w):
                mapping[v] = w
                used[w] = True
                placed.append(v)
                if rec(i + 1):
                    return True
                placed.pop()
                used[w] = False
                mapping[v] = -1
        return False

    return tuple(mapping) if rec(0) else None


def _slots_with(v, placed, arity, directed):
    if directed:
        for u in placed:
            yield (u, v)
            yield (v, u)
        return
    for rest in combinations(placed, arity - 1):
        yield tuple(sorted(rest + (v,)))
