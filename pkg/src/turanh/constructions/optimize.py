"""Maximising a construction density over part weights."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, inf

import numpy as np
from scipy import optimize as sopt

from ..density import as_target
from .evaluator import DensityValue, _compile_plain, _monomial, evaluate_iterated, compositions
from .pattern import Pattern, PatternError

GRID_STEP = 1e-3
MAX_GRID_POINTS = 6000


class OptimizationError(RuntimeError):
    pass


class Dual:
    """Forward-mode derivative: ``a + b*eps`` with ``eps**2 = 0``."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0.0):
        self.a = float(a)
        self.b = float(b)

    @staticmethod
    def _lift(x):
        return x if isinstance(x, Dual) else Dual(float(x), 0.0)

    def __add__(self, o):
        o = self._lift(o)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._lift(o)
        return Dual(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        return Dual(self.a / o.a, (self.b * o.a - self.a * o.b) / (o.a * o.a))

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def __pow__(self, k: int):
        if k == 0:
            return Dual(1.0, 0.0)
        return Dual(self.a ** k, k * self.a ** (k - 1) * self.b)

    def __eq__(self, o):
        return self.a == self._lift(o).a

    def __hash__(self):
        return hash((self.a, self.b))


def _evaluator(p: Pattern, hs):
    structure = p.structure()
    if p.recursive:
        def f(weights, one):
            try:
                return evaluate_iterated(structure, hs, weights, one)[0]
            except (PatternError, ZeroDivisionError):
                return None
    else:
        terms = _compile_plain(structure, hs)

        def f(weights, one):
            total = one * 0
            for c, coef in terms:
                total = total + coef * _monomial(weights, c, one)
            return total
    return f


@dataclass(frozen=True)
class OptimumResult:
    weights: tuple
    value: DensityValue

    def __iter__(self):
        return iter((self.weights, self.value))


def optimize_weights(p: Pattern, h, tol: float = 1e-12, starts: int = 5) -> OptimumResult:
    """Weights on the simplex maximising the (possibly iterated) density of ``h``.

    Coarse grid, then local refinement from the best ``starts`` grid points.
    Two-part patterns are refined by solving for a zero of the exact derivative.
    """
    if p.parts < 2:
        raise PatternError("optimising weights needs at least two parts")
    if tol < 1e-12:
        raise PatternError("tolerance below 1e-12 is not supported")
    hs = as_target(h)
    f = _evaluator(p, hs)
    if p.parts == 2:
        cands = _optimize_line(f, tol, starts)
    else:
        cands = _optimize_simplex(f, p.parts, tol, starts)
    if not cands:
        raise OptimizationError("no feasible starting point found")
    best = max(v for _, v in cands)
    tied = sorted(w for w, v in cands if v >= best - tol)
    w = tied[0]
    value = f(w, 1.0)
    return OptimumResult(tuple(w), DensityValue(float(value), False, tol))


def _safe(f, w):
    v = f(w, 1.0)
    return -inf if v is None else float(v)


def _local_maxima(values, starts):
    idx = [i for i in range(len(values))
           if values[i] > -inf
           and (i == 0 or values[i] >= values[i - 1])
           and (i == len(values) - 1 or values[i] >= values[i + 1])]
    idx.sort(key=lambda i: -values[i])
    return idx[:starts]


def _optimize_line(f, tol, starts):
    n = int(round(1 / GRID_STEP))
    xs = np.linspace(0.0, 1.0, n + 1)
    vals = [_safe(f, (x, 1.0 - x)) for x in xs]

    def deriv(x):
        v = f((Dual(x, 1.0), Dual(1.0 - x, -1.0)), Dual(1.0))
        if v is None:
            raise OptimizationError(f"density undefined at x={x}")
        return v.b

    out = []
    for i in _local_maxima(vals, starts):
        lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, n)]
        x = None
        try:
            dlo, dhi = deriv(lo), deriv(hi)
        except OptimizationError:
            dlo = dhi = None
        if dlo is not None and dlo > 0 > dhi:
            x, info = sopt.brentq(deriv, lo, hi, xtol=1e-16, rtol=4 * np.finfo(float).eps,
                                  maxiter=500, full_output=True)
            if not info.converged:
                raise OptimizationError("derivative root search did not converge")
        else:
            res = sopt.minimize_scalar(lambda t: -_safe(f, (t, 1.0 - t)), bounds=(lo, hi),
                                       method="bounded", options={"xatol": tol, "maxiter": 500})
            if not res.success:
                raise OptimizationError(f"bounded search failed: {res.message}")
            x = res.x
            # boundary optima are kept exactly on the boundary
            for edge in (lo, hi):
                if _safe(f, (edge, 1.0 - edge)) >= -res.fun:
                    x = edge
        out.append(((float(x), 1.0 - float(x)), _safe(f, (x, 1.0 - x))))
    return out


def _simplex_grid(k):
    m = 1
    while comb(m + 1 + k - 1, k - 1) <= MAX_GRID_POINTS:
        m += 1
    m = max(m, 1)
    return m, [tuple(x / m for x in c) for c in compositions(m, k)]


def _optimize_simplex(f, k, tol, starts):
    m, grid = _simplex_grid(k)
    vals = [_safe(f, w) for w in grid]
    order = sorted(range(len(grid)), key=lambda i: -vals[i])[:starts]
    out = []
    cons = ({"type": "eq", "fun": lambda w: np.sum(w) - 1.0},)
    for i in order:
        res = sopt.minimize(lambda w: -_safe(f, tuple(np.clip(w, 0, 1))), np.array(grid[i]),
                            method="SLSQP", bounds=[(0.0, 1.0)] * k, constraints=cons,
                            options={"ftol": tol, "maxiter": 1000})
        w = np.clip(res.x, 0.0, 1.0)
        w = tuple(float(x) for x in w / w.sum())
        if not res.success and res.status != 8:
            raise OptimizationError(f"local refinement failed: {res.message}")
        v = _safe(f, w)
        if v < vals[i]:
            w, v = grid[i], vals[i]
        out.append((w, v))
    return out


def exact_weights(weights, denominator: int = 10 ** 6):
    """Nearby rational weights summing to one (for exact re-evaluation)."""
    fr = [Fraction(x).limit_denominator(denominator) for x in weights[:-1]]
    return tuple(fr + [1 - sum(fr)])
