"""The reproduction table: every headline value recomputed from the library APIs."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable

import numpy as np

from .catalog import k_minus, named_graph, out_star, strong_cycle
from .certify import Certificate, ProblemSpec, verify
from .constructions import (blowup_density, build_blowup, geometric_exact, gt_edge_density,
                            gt_kminus_density, gt_pattern, iterated_density, named_pattern,
                            optimize_weights)
from .constructions.library import with_weight
from .density import contains
from .enumerate import ForbiddenFamily
from .graph import UniformGraph, complete_graph, dto3_transform
from .oracle import density_sequence

SQRT3 = math.sqrt(3)
MR_VALUE = 2 * SQRT3 - 3
K4M_VALUE = 4 - 6 * ((math.sqrt(2) + 1) ** (1 / 3) - (math.sqrt(2) - 1) ** (1 / 3))


@dataclass(frozen=True)
class Row:
    criterion: int
    name: str
    check: Callable[[], tuple]      # returns (ok, computed, expected)


def _exact(criterion, name, fn, expected):
    def check():
        got = fn()
        return got == expected, got, expected
    return Row(criterion, name, check)


def _close(criterion, name, fn, expected, tol):
    def check():
        got = float(fn())
        return abs(got - expected) <= tol, got, f"{expected:.12g} ± {tol:g}"
    return Row(criterion, name, check)


def _blow(pattern, target):
    return lambda: blowup_density(named_pattern(pattern), named_graph(target)).value


def _iter(pattern, target):
    return lambda: iterated_density(named_pattern(pattern), named_graph(target)).value


def _cherry(x, target):
    return lambda: blowup_density(with_weight(named_pattern("cherry"), 1, x), named_graph(target)).value


def _s4_value():
    roots = np.roots([3, 3, 3, -1])
    p = float(np.real([r for r in roots if abs(r.imag) < 1e-12][0]))
    return 4 * p * (1 - p) ** 3 / (1 - p ** 4)


def _sk_residual(k):
    def fn():
        x = optimize_weights(named_pattern("out-star"), out_star(k)).weights[0]
        return abs((k - 1) * sum(x ** i for i in range(1, k)) - 1)
    return fn


def _f32():
    v = float(optimize_weights(named_pattern("f32"), named_graph("F32")).value)
    return 0.349325 < v < 0.349465, v, "(0.349325, 0.349465)"


def _geometric4():
    d = geometric_exact(4)
    got = {name: d.prob(named_graph(name)) for name in ("4.2", "4.0", "4.4")}
    others = sum(d.probabilities.values()) - sum(got.values())
    ok = got == {"4.2": Fraction(3, 4), "4.0": Fraction(1, 8), "4.4": Fraction(1, 8)} and others == 0
    shown = " ".join(f"{k}={v}" for k, v in got.items())
    return ok, f"{shown} other={others}", "4.2=3/4 4.0=1/8 4.4=1/8 other=0"


FORBIDDEN_CYCLES = (complete_graph(4), strong_cycle(5), strong_cycle(7), strong_cycle(8))


def random_oriented(n: int, rng: np.random.Generator) -> UniformGraph:
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            c = rng.integers(0, 3)
            if c == 1:
                arcs.append((u, v))
            elif c == 2:
                arcs.append((v, u))
    return UniformGraph.from_edges(n, arcs, 2, True)


def _transform_suite(count=200, seed=2024):
    bad = 0
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        d = random_oriented(int(rng.integers(3, 13)), rng)
        g = dto3_transform(d)
        bad += any(g.n >= f.n and contains(g, f) for f in FORBIDDEN_CYCLES)
    for n in (9, 12):
        p = with_weight(named_pattern("out-star"), 1, Fraction(2, 5))
        g = dto3_transform(build_blowup(p, n, 2))
        bad += any(g.n >= f.n and contains(g, f) for f in FORBIDDEN_CYCLES)
    return bad == 0, f"{bad} graphs with a forbidden subgraph", "0"


def _sandwich(family, target, ns, lower):
    def check():
        try:
            seq = density_sequence(family, target, ns)
        except Exception as exc:     # the monotonicity failure is the reported result
            return False, str(exc), "nonincreasing"
        ok = all(float(x) >= lower for x in seq)
        return ok, " ".join(str(x) for x in seq), f"nonincreasing, all >= {lower:.12g}"
    return check


def shipped(name: str) -> str:
    return resources.files("turanh.data").joinpath(name).read_text()


def _mantel_offline():
    spec = ProblemSpec.from_json(shipped("mantel.prob"))
    problem = spec.assemble()
    cert = Certificate.from_json(shipped("mantel.cert"))
    good = verify(cert, problem)
    q = [list(map(list, m)) for m in cert.q_matrices]
    q[0][0][0] = -q[0][0][0]
    bad = dataclasses.replace(cert, q_matrices=tuple(tuple(map(tuple, m)) for m in q))
    tampered = verify(bad, problem)
    ok = good.valid and good.certified_bound == Fraction(1, 2) and not tampered.valid
    return ok, f"bound {good.certified_bound}, valid={good.valid}, tampered valid={tampered.valid}", \
        "1/2, True, False"


def table() -> list[Row]:
    rows = [
        _exact(1, "turan pattern: edge", _blow("turan", "edge"), Fraction(5, 9)),
        _exact(1, "turan pattern: K4-", _blow("turan", "K4-"), Fraction(16, 27)),
        _exact(1, "K4 pattern: 4.2", _blow("k4", "4.2"), Fraction(9, 16)),
        _exact(1, "K4 pattern: K4", _blow("k4", "K4"), Fraction(3, 32)),
        _exact(1, "H6 pattern: 4.2", _blow("h6", "4.2"), Fraction(5, 9)),
        _exact(1, "3-edge pattern: 4.2", _blow("edge", "4.2"), Fraction(4, 9)),
        _exact(1, "{112} at (3/4,1/4): K4-", _cherry(Fraction(3, 4), "K4-"), Fraction(27, 64)),
        _exact(1, "{112} at (2/3,1/3): edge", _cherry(Fraction(2, 3), "edge"), Fraction(4, 9)),
        _exact(1, "5.6 pattern: 5.6", _blow("p56", "5.6"), Fraction(20, 27)),
        _exact(1, "5.7 pattern: 5.7", _blow("p57", "5.7"), Fraction(20, 27)),
        _exact(1, "bipartite pattern: 5.9", _blow("bipartite", "5.9"), Fraction(5, 8)),
        _exact(1, "H7 pattern: edge", _blow("h7", "edge"), Fraction(12, 49)),
        _exact(1, "H7 pattern: 4.2", _blow("h7", "4.2"), Fraction(120, 343)),
        _exact(1, "{112,223,331}: 4.1", _blow("cyclic", "4.1"), Fraction(4, 9)),
        _exact(1, "K4 pattern: 4.2 (F32-free bound)", _blow("k4", "4.2"), Fraction(9, 16)),
        _exact(2, "iterated 3-edge: edge", _iter("edge-iterated", "edge"), Fraction(1, 4)),
        _exact(2, "iterated 3-edge: 4.2", _iter("edge-iterated", "4.2"), Fraction(6, 13)),
        _exact(2, "iterated H6: edge", _iter("h6-iterated", "edge"), Fraction(2, 7)),
        _exact(2, "iterated H6: 4.2", _iter("h6-iterated", "4.2"), Fraction(24, 43)),
        _exact(2, "iterated K4: 4.2", _iter("k4-iterated", "4.2"), Fraction(4, 7)),
        _exact(2, "iterated H7: 4.2", _iter("h7-iterated", "4.2"), Fraction(20, 57)),
        _close(3, "Mubayi-Rodl edge at (sqrt3-1)/2",
               lambda: iterated_density(with_weight(named_pattern("mubayi-rodl"), 2, (SQRT3 - 1) / 2),
                                        named_graph("edge")).value, MR_VALUE, 1e-9),
        _close(3, "K4- optimum over {112}",
               lambda: optimize_weights(named_pattern("mubayi-rodl"), named_graph("K4-")).value, K4M_VALUE, 1e-9),
        _close(3, "directed S3 at (sqrt3-1)/2",
               lambda: iterated_density(with_weight(named_pattern("out-star"), 1, (SQRT3 - 1) / 2),
                                        out_star(3)).value, MR_VALUE, 1e-9),
        _close(3, "directed S4 optimum",
               lambda: optimize_weights(named_pattern("out-star"), out_star(4)).value, _s4_value(), 1e-9),
        _close(3, "argmax for edge over {112}",
               lambda: optimize_weights(named_pattern("mubayi-rodl"), named_graph("edge")).weights[1],
               0.366025, 1e-6),
        _close(3, "argmax for K4- over {112}",
               lambda: optimize_weights(named_pattern("mubayi-rodl"), named_graph("K4-")).weights[1],
               0.253077, 1e-6),
        Row(3, "F32 lower bound", _f32),
    ]
    for k in range(3, 9):
        rows.append(_close(3, f"S{k} optimizer root", _sk_residual(k), 0.0, 1e-9))
    for t in range(3, 9):
        rows.append(_exact(4, f"G{t}: edge", lambda t=t: blowup_density(gt_pattern(t), named_graph("edge")).value,
                           gt_edge_density(t)))
        rows.append(_exact(4, f"G{t}: K{t}-", lambda t=t: blowup_density(gt_pattern(t), k_minus(t)).value,
                           gt_kminus_density(t)))
    rows += [
        _exact(4, "G4 closed form", lambda: gt_kminus_density(4), Fraction(16, 27)),
        _exact(4, "G5 closed form", lambda: gt_kminus_density(5), Fraction(5, 8)),
        Row(5, "geometric h=4 distribution", _geometric4),
        _exact(5, "geometric h=5: C5", lambda: geometric_exact(5).prob(strong_cycle(5)), Fraction(3, 16)),
        _exact(5, "geometric h=4: edge marginal", lambda: geometric_exact(4).edge_marginal(), Fraction(1, 2)),
        _exact(5, "geometric h=5: edge marginal", lambda: geometric_exact(5).edge_marginal(), Fraction(1, 2)),
        Row(6, "oriented transform avoids K4, C5, C7, C8", _transform_suite),
        Row(7, "sandwich (empty, 4.2)", _sandwich((), named_graph("4.2"), range(4, 7), 0.75)),
        Row(7, "sandwich ({K4}, K4-)", _sandwich(ForbiddenFamily.of(complete_graph(4)), k_minus(4),
                                                 range(4, 7), 16 / 27)),
        Row(7, "sandwich (empty, directed S3)", _sandwich((), out_star(3), range(3, 6), MR_VALUE)),
        Row(8, "Mantel certificate (shipped) and tamper test", _mantel_offline),
    ]
    return rows


def run_table(rows=None, out=print) -> int:
    """Print one line per row; returns the number of failures."""
    failures = 0
    for row in rows or table():
        try:
            ok, got, want = row.check()
        except Exception as exc:
            ok, got, want = False, f"error: {exc}", "-"
        failures += not ok
        out(f"{'PASS' if ok else 'FAIL'} [{row.criterion}] {row.name}: got {got}; expected {want}")
    return failures
