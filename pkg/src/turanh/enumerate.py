"""Isomorphism classes of small family-free graphs, generated by vertex extension."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from .canon import canonical_form
from .density import INDUCED, SUBGRAPH, contains
from .graph import GraphError, UniformGraph, empty_graph

# enumeration caps per (arity, directed)
MAX_ORDER = {(3, False): 7, (2, False): 7, (2, True): 5}


class CapExceeded(GraphError):
    pass


@dataclass(frozen=True)
class ForbiddenFamily:
    members: tuple = field(default_factory=tuple)   # ((UniformGraph, mode), ...)

    def __post_init__(self):
        norm = []
        for m in self.members:
            if isinstance(m, UniformGraph):
                m = (m, SUBGRAPH)
            g, mode = m
            if mode not in (SUBGRAPH, INDUCED):
                raise GraphError(f"unknown mode {mode!r}")
            norm.append((g, mode))
        kinds = {g.kind for g, _ in norm}
        if len(kinds) > 1:
            raise GraphError("forbidden family mixes arities/directedness")
        object.__setattr__(self, "members", tuple(norm))

    @classmethod
    def of(cls, *graphs, mode: str = SUBGRAPH) -> "ForbiddenFamily":
        return cls(tuple((g, mode) for g in graphs))

    def __bool__(self):
        return bool(self.members)

    def __iter__(self):
        return iter(self.members)

    def admits(self, g: UniformGraph, using: int | None = None) -> bool:
        """True iff ``g`` is free of every member (only copies through ``using`` if given)."""
        for f, mode in self.members:
            if f.kind != g.kind:
                raise GraphError("family member does not match the host kind")
            if contains(g, f, mode, using):
                return False
        return True


EMPTY_FAMILY = ForbiddenFamily()


def check_cap(n: int, arity: int, directed: bool):
    cap = MAX_ORDER.get((arity, directed))
    if cap is None:
        raise GraphError(f"unsupported kind arity={arity} directed={directed}")
    if n > cap:
        raise CapExceeded(f"order {n} exceeds the enumeration cap {cap} for this kind")


def _extensions(g: UniformGraph):
    """All graphs on ``g.n + 1`` vertices restricting to ``g`` on the first ``g.n``."""
    n, new = g.n, g.n
    if g.directed:
        for choice in product((0, 1, 2), repeat=n):
            arcs = [(u, new) if c == 1 else (new, u) for u, c in enumerate(choice) if c]
            yield UniformGraph.from_edges(n + 1, list(g.edges) + arcs, 2, True)
        return
    pool = list(combinations(range(n), g.arity - 1))
    for bits in range(1 << len(pool)):
        extra = [p + (new,) for k, p in enumerate(pool) if bits >> k & 1]
        yield UniformGraph.from_edges(n + 1, list(g.edges) + extra, g.arity)


def enumerate_graphs(n: int, arity: int = 3, directed: bool = False,
                     family: ForbiddenFamily = EMPTY_FAMILY) -> list[UniformGraph]:
    """One canonical representative per isomorphism class of family-free graphs on ``n`` vertices.

    Sorted by (number of edges, canonical key).
    """
    check_cap(n, arity, directed)
    if isinstance(family, (list, tuple)):
        family = ForbiddenFamily(tuple(family))
    return list(_enumerate(n, arity, directed, family))


@lru_cache(maxsize=None)
def _enumerate(n, arity, directed, family):
    if n == 0:
        return (empty_graph(0, arity, directed),)
    seen = {}
    rejected = set()
    for base in _enumerate(n - 1, arity, directed, family):
        for g in _extensions(base):
            cf = canonical_form(g)
            if cf.key in seen or cf.key in rejected:
                continue
            # freeness of the base is inherited; only copies through the new vertex matter
            if family and not family.admits(g, using=n - 1):
                rejected.add(cf.key)
                continue
            seen[cf.key] = g.relabel(cf.perm)
    return tuple(seen[k] for k in sorted(seen, key=lambda k: (seen[k].num_edges, k)))
