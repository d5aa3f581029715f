"""Small r-uniform graphs and oriented 2-graphs.

Vertices are ``0..n-1`` internally. The text format uses the symbols
``1-9`` then ``a-z`` so that a graph reads the same way it is written by hand,
e.g. ``4:123,124,134`` for K4^- or ``d3:12,13`` for the out-star S3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable

SYMBOLS = "123456789abcdefghijklmnopqrstuvwxyz"


class GraphError(ValueError):
    pass


def tuple_index(n: int, arity: int, directed: bool) -> list[tuple[int, ...]]:
    """All possible edge slots on ``n`` vertices, in the canonical bit order."""
    if directed:
        return list(permutations(range(n), 2))
    return list(combinations(range(n), arity))


@dataclass(frozen=True)
class UniformGraph:
    n: int
    edges: frozenset
    arity: int = 3
    directed: bool = False
    allow_digons: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.arity not in (2, 3):
            raise GraphError(f"unsupported arity {self.arity}")
        if self.directed and self.arity != 2:
            raise GraphError("directed graphs must have arity 2")
        if self.n < 0:
            raise GraphError("negative order")
        norm = set()
        for e in self.edges:
            e = tuple(int(v) for v in e)
            if len(e) != self.arity or len(set(e)) != self.arity:
                raise GraphError(f"bad edge {e}")
            if any(v < 0 or v >= self.n for v in e):
                raise GraphError(f"edge {e} out of range for n={self.n}")
            if not self.directed:
                e = tuple(sorted(e))
            norm.add(e)
        if self.directed and not self.allow_digons:
            for u, v in norm:
                if (v, u) in norm:
                    raise GraphError(f"digon {u + 1}{v + 1} in oriented graph")
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, arity: int = 3, directed: bool = False,
                   allow_digons: bool = False) -> "UniformGraph":
        return cls(n, frozenset(tuple(e) for e in edges), arity, directed, allow_digons)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def kind(self) -> tuple:
        return (self.arity, self.directed)

    def has_edge(self, e) -> bool:
        if not self.directed:
            e = tuple(sorted(e))
        return tuple(e) in self.edges

    def slots(self) -> list[tuple[int, ...]]:
        return tuple_index(self.n, self.arity, self.directed)

    def mask(self) -> int:
        """Edge indicator as an int; bit k is slot k of :func:`tuple_index`."""
        m = 0
        for k, e in enumerate(self.slots()):
            if e in self.edges:
                m |= 1 << k
        return m

    @classmethod
    def from_mask(cls, n: int, mask: int, arity: int = 3, directed: bool = False) -> "UniformGraph":
        edges = [e for k, e in enumerate(tuple_index(n, arity, directed)) if mask >> k & 1]
        return cls.from_edges(n, edges, arity, directed)

    def relabel(self, perm) -> "UniformGraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return UniformGraph.from_edges(
            self.n, (tuple(perm[v] for v in e) for e in self.edges),
            self.arity, self.directed, self.allow_digons)

    def induced(self, vertices) -> "UniformGraph":
        """Induced subgraph on ``vertices``, relabelled ``0..k-1`` in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        sub = [tuple(pos[v] for v in e) for e in self.edges if all(v in pos for v in e)]
        return UniformGraph.from_edges(len(pos), sub, self.arity, self.directed, self.allow_digons)

    def degrees(self) -> list[int]:
        d = [0] * self.n
        for e in self.edges:
            for v in e:
                d[v] += 1
        return d

    def link(self, x: int) -> "UniformGraph":
        """Link 2-graph of ``x`` on the remaining vertices (undirected 3-graphs)."""
        if self.arity != 3 or self.directed:
            raise GraphError("links are defined for undirected 3-graphs")
        rest = [v for v in range(self.n) if v != x]
        pos = {v: i for i, v in enumerate(rest)}
        return UniformGraph.from_edges(
            self.n - 1, [tuple(pos[v] for v in e if v != x) for e in self.edges if x in e], 2)

    def __str__(self) -> str:
        return format_graph(self)


def complement(g: UniformGraph) -> UniformGraph:
    if g.directed:
        raise GraphError("complement is only defined for undirected graphs")
    return UniformGraph.from_edges(g.n, (e for e in g.slots() if e not in g.edges), g.arity)


def empty_graph(n: int, arity: int = 3, directed: bool = False) -> UniformGraph:
    return UniformGraph(n, frozenset(), arity, directed)


def complete_graph(n: int, arity: int = 3) -> UniformGraph:
    return UniformGraph.from_edges(n, combinations(range(n), arity), arity)


def dto3_transform(d: UniformGraph) -> UniformGraph:
    """3-graph whose edges are the triples inducing an out-star S3 in ``d``."""
    if not d.directed:
        raise GraphError("dto3_transform needs a directed graph")
    for u, v in d.edges:
        if (v, u) in d.edges:
            raise GraphError(f"digon {u + 1}{v + 1} present")
    out = [set() for _ in range(d.n)]
    for u, v in d.edges:
        out[u].add(v)
    arcs = d.edges
    triples = []
    for t in combinations(range(d.n), 3):
        present = [(u, v) for u, v in permutations(t, 2) if (u, v) in arcs]
        if len(present) == 2 and present[0][0] == present[1][0]:
            triples.append(t)
    return UniformGraph.from_edges(d.n, triples, 3)


# -- text format -------------------------------------------------------------

def _sym(v: int) -> str:
    if v >= len(SYMBOLS):
        raise GraphError(f"vertex {v + 1} has no single-character symbol")
    return SYMBOLS[v]


def format_graph(g: UniformGraph) -> str:
    head = ("d" if g.directed else "") + str(g.n)
    body = ",".join("".join(_sym(v) for v in e) for e in sorted(g.edges))
    return f"{head}:{body}"


def parse_graph(text: str, arity: int | None = None) -> UniformGraph:
    """Parse ``<n>:<e1>,<e2>,...`` (``d`` prefix for oriented graphs).

    ``arity`` disambiguates edgeless strings; otherwise it is read off the edges
    and defaults to 3.
    """
    text = text.strip()
    directed = text.startswith("d")
    if directed:
        text = text[1:]
    try:
        head, body = text.split(":", 1)
        n = int(head)
    except ValueError:
        raise GraphError(f"malformed graph string {text!r}") from None
    tokens = [t.strip() for t in body.split(",") if t.strip()]
    edges = []
    for tok in tokens:
        try:
            edges.append(tuple(SYMBOLS.index(c) for c in tok.lower()))
        except ValueError:
            raise GraphError(f"bad vertex symbol in {tok!r}") from None
    lengths = {len(e) for e in edges}
    if directed:
        r = 2
    elif lengths:
        if len(lengths) > 1:
            raise GraphError("mixed edge sizes")
        r = lengths.pop()
    else:
        r = arity or 3
    if arity is not None and r != arity:
        raise GraphError(f"expected arity {arity}, got {r}")
    return UniformGraph.from_edges(n, edges, r, directed)
