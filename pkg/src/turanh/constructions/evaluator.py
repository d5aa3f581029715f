"""Limit densities of weighted blow-ups and iterated blow-ups.

Vertices of the target are assigned i.i.d. to parts. The pulled-back graph
only depends on how many vertices land in each part, so the sum runs over
compositions of ``h`` rather than all ``parts**h`` assignments.

For iterated patterns the vertices falling into a recursive part induce an
independent sample of the whole construction. Writing ``p_F`` for the density
of a class ``F``, conditioning on the composition gives

    p_F = A_F + (sum over recursive i of w_i**|F|) * p_F

where ``A_F`` only involves densities of strictly smaller classes, so the
system is solved bottom-up. Each ``A_F`` is compiled once per pattern
structure into monomials in the weights and the smaller ``p``'s, then
evaluated with Fractions, floats or dual numbers.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

from ..canon import canonical_form, is_isomorphic
from ..density import as_target
from ..graph import UniformGraph, tuple_index
from .pattern import Pattern, PatternError


@dataclass(frozen=True)
class DensityValue:
    value: object           # Fraction when exact, float otherwise
    exact: bool
    error: float = 0.0

    def __float__(self):
        return float(self.value)

    def __str__(self):
        if self.exact:
            return str(self.value)
        return f"{float(self.value):.12g} ± {self.error:.1e}"


def compositions(total: int, k: int):
    """All k-tuples of nonnegative integers summing to ``total``, lexicographically."""
    if k == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, k - 1):
            yield (first,) + rest


def multinomial(c) -> int:
    out = factorial(sum(c))
    for x in c:
        out //= factorial(x)
    return out


def _assignment(c):
    return [i for i, x in enumerate(c) for _ in range(x)]


def pulled_back(p: Pattern, c) -> UniformGraph:
    """Graph induced by vertices placed in parts according to counts ``c`` (non-recursive)."""
    parts = _assignment(c)
    h = len(parts)
    edges = [e for e in tuple_index(h, p.arity, p.directed)
             if p.is_edge(tuple(parts[v] for v in e))]
    return UniformGraph.from_edges(h, edges, p.arity, p.directed)


def _check_target(p: Pattern, hs):
    if hs[0].kind != (p.arity, p.directed):
        raise PatternError("target kind does not match the pattern")


# -- non-recursive ---------------------------------------------------------

@lru_cache(maxsize=256)
def _compile_plain(structure, target):
    parts = structure[0]
    p = Pattern(parts, structure[1], (Fraction(1),) + (Fraction(0),) * (parts - 1), frozenset(),
                structure[3], structure[4])
    h = target[0].n
    counts = {}
    edge_counts = {t.num_edges for t in target}
    keys = {canonical_form(t).key for t in target} if h <= 8 else None
    for c in compositions(h, parts):
        b = pulled_back(p, c)
        if b.num_edges not in edge_counts:
            continue
        if keys is not None:
            hit = canonical_form(b).key in keys
        else:
            hit = any(is_isomorphic(b, t) for t in target)
        if hit:
            counts[c] = multinomial(c)
    return tuple(counts.items())


def _monomial(w, c, one):
    out = one
    for wi, ci in zip(w, c):
        if ci:
            out = out * wi ** ci
    return out


def _error_bound(terms: int, value) -> float:
    return max(1e-15, 8 * sys.float_info.epsilon * terms * max(1.0, abs(float(value))))


def blowup_density(p: Pattern, h) -> DensityValue:
    """Probability that ``|H|`` i.i.d. part choices pull back to a copy of ``H``."""
    if p.recursive:
        raise PatternError("pattern has recursive parts; use iterated_density")
    hs = as_target(h)
    _check_target(p, hs)
    terms = _compile_plain(p.structure(), hs)
    one = Fraction(1) if p.exact else 1.0
    total = one * 0
    for c, coef in terms:
        total += coef * _monomial(p.weights, c, one)
    if p.exact:
        return DensityValue(Fraction(total), True)
    return DensityValue(float(total), False, _error_bound(len(terms) + 1, total))


# -- iterated ----------------------------------------------------------------

@dataclass
class _ClassTerms:
    size: int
    terms: list          # (composition, Fraction coefficient, tuple of class keys)


def _labelled_copies(g: UniformGraph) -> set[int]:
    slots = tuple_index(g.n, g.arity, g.directed)
    index = {e: k for k, e in enumerate(slots)}
    out = set()
    for perm in permutations(range(g.n)):
        m = 0
        for e in g.edges:
            f = tuple(perm[v] for v in e)
            if not g.directed:
                f = tuple(sorted(f))
            m |= 1 << index[f]
        out.add(m)
    return out


class _IteratedCompiler:
    def __init__(self, structure):
        self.parts, self.edges, self.recursive, self.arity, self.directed = structure
        self.pattern = Pattern(self.parts, self.edges,
                               (Fraction(1),) + (Fraction(0),) * (self.parts - 1),
                               self.recursive, self.arity, self.directed)
        self.classes: dict[tuple, _ClassTerms] = {}

    def _sub_class(self, f, mask, group, index):
        sub_slots = tuple_index(len(group), self.arity, self.directed)
        m = 0
        for k, e in enumerate(sub_slots):
            if mask >> index[tuple(group[v] for v in e)] & 1:
                m |= 1 << k
        g = UniformGraph.from_mask(len(group), m, self.arity, self.directed)
        cf = canonical_form(g)
        return cf.key, g, Fraction(cf.aut_size, factorial(len(group)))

    def compile(self, g: UniformGraph) -> tuple:
        key = canonical_form(g).key
        if key in self.classes:
            return key
        f = g.n
        if f < self.arity:
            self.classes[key] = _ClassTerms(f, None)
            return key
        slots = tuple_index(f, self.arity, self.directed)
        index = {e: k for k, e in enumerate(slots)}
        copies = _labelled_copies(g)
        terms = []
        pending = []
        for c in compositions(f, self.parts):
            if any(c[i] == f for i in self.recursive):
                continue
            parts = _assignment(c)
            fixed_pos = fixed_val = 0
            for k, e in enumerate(slots):
                pe = [parts[v] for v in e]
                if pe[0] in self.recursive and all(x == pe[0] for x in pe):
                    continue
                fixed_pos |= 1 << k
                if self.pattern.is_edge(pe):
                    fixed_val |= 1 << k
            groups = []
            for i in sorted(self.recursive):
                members = tuple(v for v in range(f) if parts[v] == i)
                if len(members) >= self.arity:
                    groups.append(members)
            acc: dict[tuple, Fraction] = {}
            for mask in copies:
                if mask & fixed_pos != fixed_val:
                    continue
                coef = Fraction(1)
                ks = []
                for grp in groups:
                    sk, sg, factor = self._sub_class(f, mask, grp, index)
                    coef *= factor
                    ks.append(sk)
                    pending.append(sg)
                ks = tuple(sorted(ks))
                acc[ks] = acc.get(ks, 0) + coef
            mult = multinomial(c)
            for ks, coef in acc.items():
                terms.append((c, coef * mult, ks))
        self.classes[key] = _ClassTerms(f, terms)
        for sg in pending:
            self.compile(sg)
        return key


@lru_cache(maxsize=256)
def _compile_iterated(structure, target):
    comp = _IteratedCompiler(structure)
    keys = tuple(comp.compile(t) for t in target)
    order = sorted(comp.classes, key=lambda k: (comp.classes[k].size, k))
    return keys, tuple((k, comp.classes[k].size, comp.classes[k].terms) for k in order)


def evaluate_iterated(structure, target, weights, one):
    """Evaluate the compiled system at ``weights`` with arithmetic seeded by ``one``."""
    keys, classes = _compile_iterated(structure, tuple(target))
    recursive = structure[2]
    values = {}
    nterms = 0
    for key, size, terms in classes:
        if terms is None:
            values[key] = one
            continue
        a = one * 0
        for c, coef, ks in terms:
            t = coef * _monomial(weights, c, one)
            for k in ks:
                t = t * values[k]
            a = a + t
        nterms += len(terms)
        stay = one * 0
        for i in recursive:
            stay = stay + weights[i] ** size
        denom = one - stay
        if denom == 0:
            raise PatternError("iteration does not converge: recursive weight is concentrated")
        values[key] = a / denom
    total = one * 0
    for k in keys:
        total = total + values[k]
    return total, nterms


def iterated_density(p: Pattern, h) -> DensityValue:
    """Limit density of ``H`` in the blow-up of ``p`` iterated inside its recursive parts."""
    if not p.recursive:
        raise PatternError("pattern has no recursive parts; use blowup_density")
    hs = as_target(h)
    _check_target(p, hs)
    one = Fraction(1) if p.exact else 1.0
    total, nterms = evaluate_iterated(p.structure(), hs, p.weights, one)
    if p.exact:
        return DensityValue(Fraction(total), True)
    return DensityValue(float(total), False, _error_bound(nterms + 1, total))


def pattern_density(p: Pattern, h) -> DensityValue:
    return iterated_density(p, h) if p.recursive else blowup_density(p, h)
