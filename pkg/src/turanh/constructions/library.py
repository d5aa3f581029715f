"""Named patterns used throughout the tests and the reproduction table."""

from __future__ import annotations

from fractions import Fraction

from ..catalog import H6, H7
from ..graph import GraphError, complete_graph
from .families import gt_pattern, pattern_from_graph
from .pattern import Pattern, parse_pattern


def _b(parts, edges, **kw):
    return Pattern.build(parts, edges, **kw)


def _patterns():
    return {
        "turan": _b(3, ["112", "223", "133", "123"]),
        "k4": pattern_from_graph(complete_graph(4)),
        "h6": pattern_from_graph(H6),
        "h7": pattern_from_graph(H7),
        "edge": _b(3, ["123"]),
        "edge-iterated": _b(3, ["123"], recursive=[1, 2, 3]),
        "h6-iterated": pattern_from_graph(H6, recursive=True),
        "k4-iterated": pattern_from_graph(complete_graph(4), recursive=True),
        "h7-iterated": pattern_from_graph(H7, recursive=True),
        "cherry": _b(2, ["112"]),
        "cyclic": _b(3, ["112", "223", "133"]),
        "bipartite": _b(2, ["112", "122"]),
        "p56": _b(3, ["112", "122", "223", "233", "113", "133"]),
        "p57": _b(3, ["111", "222", "333", "112", "223", "133", "123"]),
        "mubayi-rodl": _b(2, ["112"], recursive=[2]),
        "f32": _b(2, ["112", "222"], recursive=[1]),
        "out-star": _b(2, [(1, 2)], recursive=[1], arity=2, directed=True),
    }


PATTERN_NAMES = tuple(_patterns())


def named_pattern(name: str) -> Pattern:
    """Library pattern by name, ``g<t>`` for the K_t-free family, or pattern text."""
    key = name.strip().lower()
    lib = _patterns()
    if key in lib:
        return lib[key]
    if key.startswith("g") and key[1:].isdigit():
        return gt_pattern(int(key[1:]))
    if "=" in name:
        return parse_pattern(name)
    raise GraphError(f"unknown pattern {name!r}")


def with_weight(p: Pattern, part: int, x) -> Pattern:
    """Two-part pattern with weight ``x`` on ``part`` (1-based) and the rest on the other."""
    if p.parts != 2:
        raise GraphError("with_weight expects a two-part pattern")
    w = [None, None]
    w[part - 1] = x
    w[2 - part] = 1 - x
    if not isinstance(x, (int, Fraction)):
        w = [float(v) for v in w]
    return p.with_weights(w)
