"""Induced counts, induced densities and containment tests."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence, Union

from .canon import canonical_key
from .graph import GraphError, UniformGraph, tuple_index

SUBGRAPH = "subgraph"
INDUCED = "induced"

Target = Union[UniformGraph, Sequence[UniformGraph]]


def as_target(h: Target) -> tuple[UniformGraph, ...]:
    """A target is one graph or a collection of same-order graphs (e.g. ``5.6``)."""
    if isinstance(h, UniformGraph):
        return (h,)
    hs = tuple(h)
    if not hs:
        raise GraphError("empty target")
    if len({(g.n, g.kind) for g in hs}) != 1:
        raise GraphError("target graphs must share order and kind")
    return hs


def _check_kind(h: UniformGraph, g: UniformGraph):
    if h.kind != g.kind:
        raise GraphError(f"arity/directedness mismatch: {h.kind} vs {g.kind}")


@lru_cache(maxsize=None)
def _slot_positions(h: int, arity: int, directed: bool):
    return tuple_index(h, arity, directed)


@lru_cache(maxsize=500_000)
def mask_class(h: int, arity: int, directed: bool, mask: int) -> tuple:
    """Canonical key of the graph on ``h`` vertices with edge mask ``mask``."""
    return canonical_key(UniformGraph.from_mask(h, mask, arity, directed))


def subset_masks(g: UniformGraph, h: int) -> Iterable[tuple[tuple[int, ...], int]]:
    """Yield ``(vertex subset, edge mask of the induced subgraph)`` for all h-subsets."""
    slots = _slot_positions(h, g.arity, g.directed)
    edges = g.edges
    for sub in combinations(range(g.n), h):
        m = 0
        for k, e in enumerate(slots):
            if tuple(sub[i] for i in e) in edges:
                m |= 1 << k
        yield sub, m


def class_counts(g: UniformGraph, h: int) -> dict[tuple, int]:
    """Number of h-subsets of ``g`` inducing each isomorphism class (keyed canonically)."""
    counts: dict[tuple, int] = {}
    for _, m in subset_masks(g, h):
        key = mask_class(h, g.arity, g.directed, m)
        counts[key] = counts.get(key, 0) + 1
    return counts


def induced_count(h: Target, g: UniformGraph) -> int:
    hs = as_target(h)
    for x in hs:
        _check_kind(x, g)
    size = hs[0].n
    if size > g.n:
        raise GraphError(f"target has {size} vertices, host only {g.n}")
    keys = {canonical_key(x) for x in hs}
    if size == g.arity and not g.directed and len(hs) == 1 and hs[0].num_edges == 1:
        return g.num_edges
    counts = class_counts(g, size)
    return sum(counts.get(k, 0) for k in keys)


def density(h: Target, g: UniformGraph) -> Fraction:
    hs = as_target(h)
    return Fraction(induced_count(hs, g), comb(g.n, hs[0].n))


def contains(g: UniformGraph, f: UniformGraph, mode: str = SUBGRAPH, using: int | None = None) -> bool:
    """Whether ``g`` contains ``f`` (as a subgraph, or induced).

    ``using`` restricts the search to copies through that vertex of ``g``; the
    enumerator uses it to test only the freshly added vertex.
    """
    _check_kind(f, g)
    if mode not in (SUBGRAPH, INDUCED):
        raise GraphError(f"unknown containment mode {mode!r}")
    if f.n > g.n:
        return False
    if mode == SUBGRAPH and f.num_edges > g.num_edges:
        return False
    return _embed(g, f, mode == INDUCED, using) is not None


def _search_order(f: UniformGraph, first: int | None = None):
    # greedy: next vertex maximises the number of edges closed with placed vertices
    deg = f.degrees()
    order = [max(range(f.n), key=lambda v: deg[v]) if first is None else first]
    rest = set(range(f.n)) - set(order)
    while rest:
        placed = set(order)

        def score(v):
            closed = sum(1 for e in f.edges if v in e and all(u in placed or u == v for u in e))
            touch = sum(1 for e in f.edges if v in e and any(u in placed for u in e))
            return (closed, touch, deg[v], -v)

        v = max(rest, key=score)
        order.append(v)
        rest.remove(v)
    return order


def _embed(g: UniformGraph, f: UniformGraph, induced: bool, using: int | None):
    if using is None:
        return _embed_from(g, f, induced, None, None)
    for anchor in range(f.n):
        phi = _embed_from(g, f, induced, anchor, using)
        if phi is not None:
            return phi
    return None


def _embed_from(g, f, induced, anchor, image):
    """Backtracking embedding of ``f`` into ``g``, optionally pinning ``anchor -> image``."""
    n, arity, directed = g.n, g.arity, g.directed
    gedges, fedges = g.edges, f.edges
    fdeg, gdeg = f.degrees(), g.degrees()
    if anchor is not None and fdeg[anchor] > gdeg[image]:
        return None
    order = _search_order(f, anchor)
    checks = []
    for i, v in enumerate(order):
        prev = order[:i]
        if directed:
            cs = [e for u in prev for e in ((u, v), (v, u))]
        else:
            cs = [tuple(sorted(r + (v,))) for r in combinations(prev, arity - 1)]
        cs = [(e, e in fedges) for e in cs]
        if not induced:
            cs = [(e, True) for e, present in cs if present]
        checks.append(cs)
    phi = [-1] * f.n
    used = [False] * n

    def rec(i):
        if i == f.n:
            return True
        v = order[i]
        candidates = (image,) if i == 0 and anchor is not None else range(n)
        for w in candidates:
            if used[w] or fdeg[v] > gdeg[w]:
                continue
            phi[v] = w
            good = True
            for e, present in checks[i]:
                img = tuple(phi[u] for u in e)
                if not directed:
                    img = tuple(sorted(img))
                if (img in gedges) != present:
                    good = False
                    break
            if good:
                used[w] = True
                if rec(i + 1):
                    return True
                used[w] = False
            phi[v] = -1
        return False

    return tuple(phi) if rec(0) else None
