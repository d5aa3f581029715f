#!/usr/bin/env python3
"""Solve a sparse SDPA file with cvxpy and write a CSDP-layout solution.

Usage: solve_sdpa.py problem.dat-s solution.sol [--solver CLARABEL]

Kept outside the package: the library itself never solves SDPs.
"""

import argparse
import sys

import cvxpy as cp
import numpy as np

from turanh.sdpa import parse_sdpa, solution_text


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("problem")
    ap.add_argument("solution")
    ap.add_argument("--solver", default=None)
    args = ap.parse_args(argv)

    with open(args.problem) as fh:
        prob = parse_sdpa(fh.read())
    ys = []
    cons = []
    for size in prob.blocks:
        if size > 0:
            v = cp.Variable((size, size), symmetric=True)
            cons.append(v >> 0)
        else:
            v = cp.Variable(-size, nonneg=True)
        ys.append(v)

    def inner(mat):
        total = 0
        for blk, i, j, val in prob.entries.get(mat, []):
            v = ys[blk - 1]
            x = v[i - 1] if prob.blocks[blk - 1] < 0 else v[i - 1, j - 1]
            w = float(val) * (1 if i == j or prob.blocks[blk - 1] < 0 else 2)
            total = total + w * x
        return total

    for k in range(1, prob.m + 1):
        cons.append(inner(k) == float(prob.c[k - 1]))
    problem = cp.Problem(cp.Maximize(inner(0)), cons)
    opts = {}
    solver = args.solver or ("CLARABEL" if "CLARABEL" in cp.installed_solvers() else None)
    if solver == "CLARABEL":
        opts = {"tol_gap_abs": 1e-10, "tol_gap_rel": 1e-10, "tol_feas": 1e-10}
    problem.solve(solver=solver, **opts)
    if problem.status not in ("optimal", "optimal_inaccurate"):
        print(f"solver status: {problem.status}", file=sys.stderr)
        return 1
    mats = [np.diag(v.value) if size < 0 else v.value for v, size in zip(ys, prob.blocks)]
    y = [float(c.dual_value) for c in cons[-prob.m:]] if prob.m else []
    with open(args.solution, "w") as fh:
        fh.write(solution_text(y, mats, prob.blocks))
    print(f"objective {problem.value:.12g}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
