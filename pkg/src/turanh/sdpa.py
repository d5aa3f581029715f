"""Exchange with external semi-definite solvers, and rounding of their output.

The problem is written in the sparse SDPA dialect as a dual-form program over
one PSD variable ``Y = diag(Q_1, ..., Q_t, S)`` where ``S`` is a diagonal block
holding one slack per admissible graph and the bound ``b`` last:

    maximise  -b
    subject to  L_i * (b - <D_i, Q> - s_i) = L_i * d_i   for each graph i

Each row is scaled by ``L_i``, the lcm of its denominators, so every number in
the file is an integer and the rendering is exact.

Solutions are read in the CSDP layout: a line with the ``y`` vector, then
``matno block i j value`` lines where ``matno`` 2 is ``Y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from pathlib import Path

import numpy as np
from sympy.solvers.diophantine.diophantine import sum_of_four_squares

from .certify import Certificate, certificate_for, gram
from .flags import DensityProblem, constraint_values
from .graph import GraphError


class SolverFormatError(GraphError):
    pass


@dataclass(frozen=True)
class SdpaProblem:
    """Parsed sparse SDPA data: ``entries[matno]`` is a list of ``(block, i, j, value)`` (1-based)."""

    m: int
    blocks: tuple       # sizes; negative means diagonal
    c: tuple
    entries: dict


def block_sizes(problem: DensityProblem) -> list[int]:
    return [len(t.flags) for t in problem.types] + [-(len(problem.graphs) + 1)]


def _row_scale(problem: DensityProblem, i: int) -> int:
    dens = [Fraction(problem.d[i]).denominator]
    for t in range(len(problem.types)):
        dens.extend(v.denominator for v in problem.coefficients[t][i].values())
    return lcm(*dens)


def _fmt(x: Fraction) -> str:
    if x.denominator != 1:
        raise SolverFormatError("non-integer coefficient after scaling")
    return str(x.numerator)


def sdpa_text(problem: DensityProblem) -> str:
    k = len(problem.graphs)
    sizes = block_sizes(problem)
    nb = len(sizes)
    lines = [f"* order {problem.order}, {k} admissible graphs, {len(problem.types)} types",
             str(k), str(nb), " ".join(str(s) for s in sizes)]
    scales = [_row_scale(problem, i) for i in range(k)]
    lines.append(" ".join(_fmt(L * Fraction(d)) for L, d in zip(scales, problem.d)))
    lines.append(f"0 {nb} {k + 1} {k + 1} -1")
    for i in range(k):
        L = scales[i]
        for t in range(len(problem.types)):
            for (a, b), v in sorted(problem.coefficients[t][i].items()):
                if a <= b and v:
                    lines.append(f"{i + 1} {t + 1} {a + 1} {b + 1} {_fmt(-L * v)}")
        lines.append(f"{i + 1} {nb} {i + 1} {i + 1} {-L}")
        lines.append(f"{i + 1} {nb} {k + 1} {k + 1} {L}")
    return "\n".join(lines) + "\n"


def export_problem(problem: DensityProblem, path) -> None:
    Path(path).write_text(sdpa_text(problem))


def _data_lines(text: str):
    for raw in text.splitlines():
        line = raw.split("*", 1)[0].split('"', 1)[0].strip()
        if line:
            yield line


def _numbers(line: str):
    return line.replace(",", " ").replace("{", " ").replace("}", " ").replace("(", " ").replace(")", " ").split()


def parse_sdpa(text: str) -> SdpaProblem:
    """Parse the sparse SDPA dialect (values kept as Fractions when integral or decimal)."""
    lines = list(_data_lines(text))
    try:
        m = int(_numbers(lines[0])[0])
        nb = int(_numbers(lines[1])[0])
        blocks = tuple(int(x) for x in _numbers(lines[2])[:nb])
        c = tuple(Fraction(x) for x in _numbers(lines[3])[:m])
    except (IndexError, ValueError):
        raise SolverFormatError("malformed SDPA header") from None
    if len(blocks) != nb or len(c) != m:
        raise SolverFormatError("SDPA header sizes are inconsistent")
    entries: dict[int, list] = {}
    for line in lines[4:]:
        parts = _numbers(line)
        if len(parts) != 5:
            raise SolverFormatError(f"bad SDPA entry line {line!r}")
        try:
            mat, blk, i, j = (int(x) for x in parts[:4])
            val = Fraction(parts[4])
        except ValueError:
            raise SolverFormatError(f"bad SDPA entry line {line!r}") from None
        _check_index(blocks, mat, blk, i, j, m)
        entries.setdefault(mat, []).append((blk, i, j, val))
    return SdpaProblem(m, blocks, c, entries)


def _check_index(blocks, mat, blk, i, j, m=None):
    if m is not None and not 0 <= mat <= m:
        raise SolverFormatError(f"matrix index {mat} out of range")
    if not 1 <= blk <= len(blocks):
        raise SolverFormatError(f"block index {blk} out of range (have {len(blocks)} blocks)")
    size = abs(blocks[blk - 1])
    if not (1 <= i <= size and 1 <= j <= size):
        raise SolverFormatError(f"entry ({i}, {j}) outside block {blk} of size {size}")
    if blocks[blk - 1] < 0 and i != j:
        raise SolverFormatError(f"off-diagonal entry in diagonal block {blk}")


@dataclass(frozen=True)
class SolverSolution:
    bound: float
    q: tuple                  # per type, dense float matrix (numpy)
    y: tuple


def parse_solution(text: str, blocks) -> tuple[list[float], list[np.ndarray]]:
    """Parse a CSDP-layout solution against known block sizes; returns (y, dense blocks of Y)."""
    lines = list(_data_lines(text))
    if not lines:
        raise SolverFormatError("empty solution file")
    try:
        y = [float(x) for x in _numbers(lines[0])]
    except ValueError:
        raise SolverFormatError("first solution line must hold the y vector") from None
    mats = [np.zeros((abs(b), abs(b))) for b in blocks]
    for line in lines[1:]:
        parts = _numbers(line)
        if len(parts) != 5:
            raise SolverFormatError(f"bad solution line {line!r}")
        try:
            mat, blk, i, j = (int(x) for x in parts[:4])
            val = float(parts[4])
        except ValueError:
            raise SolverFormatError(f"bad solution line {line!r}") from None
        if mat not in (1, 2):
            raise SolverFormatError(f"matrix number {mat} is neither 1 nor 2")
        _check_index(blocks, 1, blk, i, j)
        if mat == 2:
            mats[blk - 1][i - 1, j - 1] = val
            mats[blk - 1][j - 1, i - 1] = val
    return y, mats


def import_solution(problem: DensityProblem, path) -> SolverSolution:
    blocks = block_sizes(problem)
    y, mats = parse_solution(Path(path).read_text(), blocks)
    if len(y) != len(problem.graphs):
        raise SolverFormatError(f"y has length {len(y)}, expected {len(problem.graphs)}")
    k = len(problem.graphs)
    b = float(mats[-1][k, k])
    return SolverSolution(b, tuple(mats[:-1]), tuple(y))


def solution_text(y, mats, blocks) -> str:
    """Render a CSDP-layout solution (only the ``Y`` blocks, upper triangles)."""
    lines = [" ".join(repr(float(v)) for v in y)]
    for blk, (mat, size) in enumerate(zip(mats, blocks), start=1):
        mat = np.asarray(mat, dtype=float)
        n = abs(size)
        for i in range(n):
            for j in range(i, n):
                if (size > 0 or i == j) and mat[i, j] != 0:
                    lines.append(f"2 {blk} {i + 1} {j + 1} {float(mat[i, j])!r}")
    return "\n".join(lines) + "\n"


# -- rounding ----------------------------------------------------------------

NEGATIVE_TOLERANCE = 1e-6


def _float_ldl(q: np.ndarray, tol: float):
    """Pivoted LDL^T of a (nearly) PSD matrix: returns order, L (in pivot order), D."""
    a = np.array(q, dtype=float)
    n = len(a)
    live = list(range(n))
    order, cols, ds = [], [], []
    while live:
        p = max(live, key=lambda i: (a[i, i], -i))
        if a[p, p] <= tol:
            break
        d = a[p, p]
        live.remove(p)
        col = {i: a[i, p] / d for i in live}
        for i in live:
            for j in live:
                a[i, j] -= col[i] * d * col[j]
        order.append(p)
        cols.append(col)
        ds.append(d)
    return order, cols, ds


def _sqrt_rows(d: Fraction) -> list[Fraction]:
    """Rationals whose squares sum to ``d`` (at most four)."""
    p, q = d.numerator, d.denominator
    return [Fraction(a, q) for a in sum_of_four_squares(p * q) if a]


def rational_factor(q, denom_bound: int) -> list[list[Fraction]]:
    """Rows of a rational ``R`` with ``R^T R`` close to ``q``; PSD holds by construction."""
    q = np.asarray(q, dtype=float)
    n = len(q)
    if n == 0:
        return []
    q = (q + q.T) / 2
    lam = np.linalg.eigvalsh(q)
    if lam[0] < -NEGATIVE_TOLERANCE:
        raise SolverFormatError(f"solver matrix is not PSD (eigenvalue {lam[0]:.3g})")
    tol = max(1e-12, 1e-9 * max(1.0, float(lam[-1])))
    order, cols, ds = _float_ldl(q, tol)
    rows = []
    for p, col, d in zip(order, cols, ds):
        dr = Fraction(d).limit_denominator(denom_bound)
        if dr <= 0:
            continue
        lrow = [Fraction(0)] * n
        lrow[p] = Fraction(1)
        for i, v in col.items():
            lrow[i] = Fraction(v).limit_denominator(denom_bound)
        for s in _sqrt_rows(dr):
            rows.append([s * x for x in lrow])
    return rows


def _denominators(bound: int) -> list[int]:
    out, d = [], 1
    while d < bound:
        out.append(d)
        d *= 2
    return out + [bound]


def round_solution(problem: DensityProblem, solution: SolverSolution,
                   denom_bound: int = 2 ** 20) -> Certificate:
    """Exact rational certificate from a floating solution; the bound is recomputed exactly.

    Factors are rounded at every power-of-two denominator up to ``denom_bound``
    (and at ``denom_bound`` itself); the smallest certified bound wins, ties
    going to the coarser rounding.
    """
    if denom_bound < 1:
        raise SolverFormatError("denominator bound must be positive")
    if len(solution.q) != len(problem.types):
        raise SolverFormatError("solution has the wrong number of type blocks")
    for q, t in zip(solution.q, problem.types):
        if np.shape(q) != (len(t.flags), len(t.flags)):
            raise SolverFormatError("solution block size does not match the flag count")
    best = None
    for den in _denominators(denom_bound):
        rs, qs = [], []
        for q, t in zip(solution.q, problem.types):
            r = rational_factor(q, den)
            qs.append(gram(r, len(t.flags)))
            rs.append(r)
        bound = max(constraint_values(problem, qs))
        if best is None or bound < best[0]:
            best = (bound, qs, rs)
    bound, qs, rs = best
    return certificate_for(problem, qs, bound, rs)
