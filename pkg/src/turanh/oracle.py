"""Exhaustive maxima of induced counts over small family-free graphs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .canon import canonical_key
from .density import as_target, induced_count
from .enumerate import EMPTY_FAMILY, ForbiddenFamily, enumerate_graphs
from .graph import GraphError


class MonotonicityError(GraphError):
    pass


@dataclass(frozen=True)
class OracleResult:
    n: int
    family: ForbiddenFamily
    target: tuple
    max_count: int
    max_density: Fraction
    witnesses: tuple


def turan_h_number(n: int, family=EMPTY_FAMILY, h=None) -> OracleResult:
    """Largest number of induced copies of ``h`` in a family-free graph on ``n`` vertices."""
    if isinstance(family, (list, tuple)):
        family = ForbiddenFamily(tuple(family))
    hs = as_target(h)
    arity, directed = hs[0].kind
    size = hs[0].n
    if size > n:
        raise GraphError("target has more vertices than n")
    best, wit = -1, []
    for g in enumerate_graphs(n, arity, directed, family):
        c = induced_count(hs, g)
        if c > best:
            best, wit = c, [g]
        elif c == best:
            wit.append(g)
    if best < 0:
        raise GraphError("no admissible graphs")
    wit.sort(key=canonical_key)
    return OracleResult(n, family, hs, best, Fraction(best, comb(n, size)), tuple(wit))


def density_sequence(family, h, n_range) -> list[Fraction]:
    """``ex_h(n, family) / C(n, |h|)`` over ``n_range``; raises unless nonincreasing."""
    out = [turan_h_number(n, family, h).max_density for n in n_range]
    for i in range(1, len(out)):
        if out[i] > out[i - 1]:
            raise MonotonicityError(f"sequence increases at position {i}: {out[i - 1]} -> {out[i]}")
    return out
