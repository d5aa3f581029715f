"""Weighted blow-up templates.

A pattern has parts ``0..k-1`` (1-based in text), a set of part-edges that are
multisets of parts (ordered pairs when directed), optional recursive parts and
weights on the parts. ``(i, i, i)`` marks part ``i`` as internally complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from ..graph import SYMBOLS, GraphError


class PatternError(GraphError):
    pass


def _norm_edge(e, directed):
    e = tuple(int(x) for x in e)
    return e if directed else tuple(sorted(e))


@dataclass(frozen=True)
class Pattern:
    parts: int
    edges: frozenset
    weights: tuple
    recursive: frozenset = frozenset()
    arity: int = 3
    directed: bool = False

    def __post_init__(self):
        if self.parts < 1:
            raise PatternError("a pattern needs at least one part")
        if self.directed and self.arity != 2:
            raise PatternError("directed patterns have arity 2")
        edges = frozenset(_norm_edge(e, self.directed) for e in self.edges)
        for e in edges:
            if len(e) != self.arity or any(not 0 <= x < self.parts for x in e):
                raise PatternError(f"bad part-edge {e}")
            if self.directed and e[0] == e[1]:
                raise PatternError("directed part-edges must join distinct parts")
        if self.directed:
            for a, b in edges:
                if (b, a) in edges:
                    raise PatternError("directed pattern would create digons")
        rec = frozenset(int(i) for i in self.recursive)
        if any(not 0 <= i < self.parts for i in rec):
            raise PatternError("recursive part out of range")
        for i in rec:
            if (i,) * self.arity in edges:
                raise PatternError(f"part {i + 1} is both recursive and internally complete")
        w = tuple(self.weights) if self.weights else tuple(Fraction(1, self.parts) for _ in range(self.parts))
        if len(w) != self.parts:
            raise PatternError("one weight per part required")
        if any(x < 0 for x in w):
            raise PatternError("weights must be nonnegative")
        total = sum(w)
        if all(isinstance(x, (int, Fraction)) for x in w):
            if total != 1:
                raise PatternError(f"weights sum to {total}, not 1")
        elif abs(total - 1) > 1e-12:
            raise PatternError(f"weights sum to {total}, not 1")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "recursive", rec)
        object.__setattr__(self, "weights", w)

    @classmethod
    def build(cls, parts: int, edges, weights=None, recursive=(), arity: int = 3,
              directed: bool = False) -> "Pattern":
        """Convenience constructor taking 1-based part labels (ints or strings like ``"112"``)."""
        conv = []
        for e in edges:
            if isinstance(e, str):
                e = [SYMBOLS.index(c) + 1 for c in e]
            conv.append(tuple(x - 1 for x in e))
        if weights is None:
            weights = [Fraction(1, parts)] * parts
        return cls(parts, frozenset(conv), tuple(weights), frozenset(i - 1 for i in recursive),
                   arity, directed)

    @property
    def exact(self) -> bool:
        return all(isinstance(x, (int, Fraction)) for x in self.weights)

    def with_weights(self, weights) -> "Pattern":
        return Pattern(self.parts, self.edges, tuple(weights), self.recursive, self.arity, self.directed)

    def structure(self) -> tuple:
        """Everything except the weights (the evaluator compiles per structure)."""
        return (self.parts, self.edges, self.recursive, self.arity, self.directed)

    def is_edge(self, part_tuple) -> bool:
        """Edge rule for an r-tuple of vertices whose parts are ``part_tuple``
        (not all inside one recursive part)."""
        return _norm_edge(part_tuple, self.directed) in self.edges

    def __str__(self) -> str:
        return format_pattern(self)


def complement_pattern(p: Pattern) -> Pattern:
    """Complement every part-multiset; loops of recursive parts are left out."""
    if p.directed:
        raise PatternError("complement is only defined for undirected patterns")
    allm = set(combinations_with_replacement(range(p.parts), p.arity))
    for i in p.recursive:
        allm.discard((i,) * p.arity)
    return Pattern(p.parts, frozenset(allm - set(p.edges)), p.weights, p.recursive, p.arity, False)


def _fmt_weight(w) -> str:
    return str(w) if isinstance(w, (int, Fraction)) else repr(float(w))


def format_pattern(p: Pattern) -> str:
    edges = ",".join("".join(SYMBOLS[x] for x in e) for e in sorted(p.edges))
    parts = [f"parts={p.parts}", "weights=" + ",".join(_fmt_weight(w) for w in p.weights),
             f"edges={edges}"]
    if p.recursive:
        parts.append("recursive=" + ",".join(str(i + 1) for i in sorted(p.recursive)))
    parts.append(f"directed={int(p.directed)}")
    if p.arity != 3 and not p.directed:
        parts.append(f"arity={p.arity}")
    return "; ".join(parts)


def parse_weight(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise PatternError(f"bad weight {text!r}") from None


def parse_pattern(text: str) -> Pattern:
    """``parts=<k>; weights=<w1,...>; edges=<112,...>; recursive=<i,j>; directed=<0|1>``.

    Weights accept ``p/q`` or decimals (read exactly); omitted weights are balanced.
    An extra ``arity=2`` field selects undirected 2-graph patterns.
    """
    fields = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        if "=" not in chunk:
            raise PatternError(f"malformed pattern field {chunk!r}")
        k, v = chunk.split("=", 1)
        fields[k.strip().lower()] = v.strip()
    unknown = set(fields) - {"parts", "weights", "edges", "recursive", "directed", "arity"}
    if unknown:
        raise PatternError(f"unknown pattern fields {sorted(unknown)}")
    try:
        parts = int(fields["parts"])
    except (KeyError, ValueError):
        raise PatternError("pattern needs parts=<k>") from None
    directed = fields.get("directed", "0") in ("1", "true", "yes")
    edges = [e.strip() for e in fields.get("edges", "").split(",") if e.strip()]
    arity = 2 if directed else int(fields.get("arity") or (len(edges[0]) if edges else 3))
    weights = None
    if fields.get("weights"):
        weights = [parse_weight(w) for w in fields["weights"].split(",")]
    rec = [int(x) for x in fields.get("recursive", "").split(",") if x.strip()]
    try:
        return Pattern.build(parts, edges, weights, rec, arity, directed)
    except ValueError as exc:
        if isinstance(exc, PatternError):
            raise
        raise PatternError(str(exc)) from None
