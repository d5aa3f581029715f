"""Named graphs: complete graphs, strong cycles, F32, H6, H7, out-stars and m.k families."""

from __future__ import annotations

import re
from itertools import combinations

from .graph import GraphError, UniformGraph, complete_graph, parse_graph

FANO_1 = ["124", "137", "156", "235", "267", "346", "457"]
FANO_2 = ["653", "647", "621", "542", "517", "431", "327"]


def _g(text: str) -> UniformGraph:
    return parse_graph(text)


def single_edge(arity: int = 3) -> UniformGraph:
    return UniformGraph.from_edges(arity, [tuple(range(arity))], arity)


def k_minus(t: int, arity: int = 3) -> UniformGraph:
    edges = list(combinations(range(t), arity))[1:]
    return UniformGraph.from_edges(t, edges, arity)


def strong_cycle(t: int) -> UniformGraph:
    """Edges are the cyclically consecutive triples of ``[t]``."""
    if t < 4:
        raise GraphError("strong cycles need t >= 4")
    return UniformGraph.from_edges(t, [(i, (i + 1) % t, (i + 2) % t) for i in range(t)], 3)


def out_star(k: int) -> UniformGraph:
    return UniformGraph.from_edges(k, [(0, i) for i in range(1, k)], 2, True)


F32 = _g("5:123,124,125,345")
H6 = _g("6:123,234,345,145,125,136,356,256,246,146")
H7 = _g("7:" + ",".join(FANO_1 + FANO_2))


def named_graph(name: str, arity: int = 3):
    """Look up a graph by name.

    ``m.k`` names return the list of all classes on m vertices with k edges.
    """
    key = name.strip()
    low = key.lower()
    if low in ("edge", "e"):
        return single_edge(arity)
    if low == "f32":
        return F32
    if low == "h6":
        return H6
    if low == "h7":
        return H7
    m = re.fullmatch(r"k(\d+)(-?)", low)
    if m:
        t = int(m.group(1))
        if t < arity:
            raise GraphError(f"K{t} needs at least {arity} vertices")
        return k_minus(t, arity) if m.group(2) else complete_graph(t, arity)
    m = re.fullmatch(r"c(\d+)", low)
    if m:
        return strong_cycle(int(m.group(1)))
    m = re.fullmatch(r"s(\d+)", low)
    if m:
        return out_star(int(m.group(1)))
    m = re.fullmatch(r"(\d+)\.(\d+)", low)
    if m:
        from .enumerate import enumerate_graphs
        size, k = int(m.group(1)), int(m.group(2))
        return [g for g in enumerate_graphs(size, arity) if g.num_edges == k]
    if ":" in key:
        g = parse_graph(key)
        return g if g.edges or g.directed else parse_graph(key, arity)
    raise GraphError(f"unknown graph name {name!r}")


def resolve_target(name: str, arity: int = 3) -> list[UniformGraph]:
    """Named graph or family, always as a list."""
    g = named_graph(name, arity)
    return g if isinstance(g, list) else [g]
