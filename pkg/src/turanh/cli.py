"""Command-line front end.

Usage errors (bad arguments, unparsable graphs or patterns) exit with status 2;
failed computations or checks exit with status 1.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .canon import graph_from_key
from .catalog import named_graph
from .certify import CertificateError, ProblemSpec, load_certificate, load_problem, verify
from .constructions import (blowup_density, geometric_exact, geometric_sample, iterated_density,
                            named_pattern, optimize_weights)
from .constructions.evaluator import DensityValue
from .density import INDUCED, SUBGRAPH, as_target, density
from .enumerate import ForbiddenFamily, enumerate_graphs
from .graph import GraphError, format_graph, parse_graph
from .oracle import density_sequence, turan_h_number
from .sdpa import export_problem, import_solution, round_solution

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


# -- rendering ----------------------------------------------------------------

def render(value):
    """Rationals as ``p/q``; floats with 12 significant digits."""
    if isinstance(value, DensityValue):
        return str(value)
    if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
        return str(Fraction(value))
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _jsonable(x):
    if isinstance(x, DensityValue):
        out = {"value": render(x.value) if x.exact else float(x.value), "exact": x.exact}
        if not x.exact:
            out["error"] = x.error
        return out
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


class Report:
    def __init__(self, fmt: str, output: str | None):
        self.fmt = fmt
        self.output = output
        self.lines: list[str] = []
        self.data: dict = {}

    def line(self, text: str):
        self.lines.append(text)

    def set(self, **kw):
        self.data.update(kw)

    def emit(self):
        text = json.dumps(_jsonable(self.data), indent=1) if self.fmt == "json" else "\n".join(self.lines)
        print(text)
        if self.output:
            Path(self.output).write_text(text + "\n")


# -- argument resolution ----------------------------------------------------

def _target(name: str, arity: int = 3):
    try:
        return list(as_target(named_graph(name, arity)))
    except GraphError as exc:
        raise UsageError(str(exc)) from None


def _family(args, arity: int) -> ForbiddenFamily:
    members = []
    try:
        for name in args.forbid or []:
            members += [(g, SUBGRAPH) for g in as_target(named_graph(name, arity))]
        for name in args.forbid_induced or []:
            members += [(g, INDUCED) for g in as_target(named_graph(name, arity))]
        return ForbiddenFamily(tuple(members))
    except GraphError as exc:
        raise UsageError(str(exc)) from None


def _kind(args):
    arity = 2 if args.directed else args.arity
    return arity, bool(args.directed)


def _pattern(text):
    try:
        return named_pattern(text)
    except GraphError as exc:
        raise UsageError(str(exc)) from None


def _add_family(p):
    p.add_argument("--forbid", action="append", metavar="GRAPH",
                   help="forbidden graph (not even as a subgraph); repeatable")
    p.add_argument("--forbid-induced", action="append", metavar="GRAPH",
                   help="forbidden induced graph; repeatable")


def _add_kind(p):
    p.add_argument("--arity", type=int, default=3, choices=(2, 3))
    p.add_argument("--directed", action="store_true", help="oriented graphs (arity 2)")


# -- subcommands --------------------------------------------------------------

def cmd_enumerate(args, rep):
    arity, directed = _kind(args)
    fam = _family(args, arity)
    graphs = enumerate_graphs(args.n, arity, directed, fam)
    rep.set(n=args.n, count=len(graphs), graphs=[format_graph(g) for g in graphs])
    rep.line(f"{len(graphs)} classes")
    if args.list:
        rep.lines += [format_graph(g) for g in graphs]


def cmd_density(args, rep):
    try:
        g = parse_graph(args.graph)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    hs = _target(args.target, g.arity)
    v = density(hs, g)
    rep.set(value=v)
    rep.line(render(v))


def _density_cmd(fn):
    def run(args, rep):
        p = _pattern(args.pattern)
        hs = _target(args.target, p.arity)
        v = fn(p, hs)
        rep.set(value=v)
        rep.line(render(v))
    return run


def cmd_optimize(args, rep):
    p = _pattern(args.pattern)
    hs = _target(args.target, p.arity)
    res = optimize_weights(p, hs, tol=args.tol)
    rep.set(weights=[float(w) for w in res.weights], value=res.value)
    rep.line("weights " + ",".join(f"{w:.12g}" for w in res.weights))
    rep.line(f"value {render(res.value)}")


def cmd_geometric(args, rep):
    if args.sample:
        st = geometric_sample(args.sample, args.trials, args.seed)
        rep.set(n=st.n, trials=st.trials, seed=st.seed, edge_density=list(st.edge_density),
                classes={h: {_key_text(k): list(v) for k, v in c.items()} for h, c in st.classes.items()})
        rep.line(f"edge {st.edge_density[0]:.12g} ± {st.edge_density[1]:.2g}")
        for h, c in st.classes.items():
            for k, (m, se) in c.items():
                rep.line(f"{_key_text(k)} {m:.12g} ± {se:.2g}")
        return
    d = geometric_exact(args.h, args.seed)
    rep.set(h=d.h, rank=d.rank, faces=d.faces, edge_marginal=d.edge_marginal(),
            classes={format_graph(d.graphs[k]): p for k, p in d.probabilities.items()})
    for k, p in d.probabilities.items():
        rep.line(f"{format_graph(d.graphs[k])} {p}")
    rep.line(f"edge marginal {d.edge_marginal()}")


def _key_text(key):
    return format_graph(graph_from_key(key))


def _problem_spec(args) -> ProblemSpec:
    if args.problem:
        return load_problem(args.problem)
    if args.order is None or args.target is None:
        raise UsageError("give --problem FILE or both --order and --target")
    arity, directed = _kind(args)
    return ProblemSpec.of(args.order, _family(args, arity), _target(args.target, arity))


def cmd_sdp_export(args, rep):
    spec = _problem_spec(args)
    problem = spec.assemble()
    export_problem(problem, args.out)
    if args.problem_out:
        Path(args.problem_out).write_text(spec.to_json())
    rep.set(sdpa=args.out, graphs=len(problem.graphs), types=len(problem.types),
            blocks=[len(t.flags) for t in problem.types])
    rep.line(f"wrote {args.out}: {len(problem.graphs)} constraints, "
             f"{len(problem.types)} types with block sizes {[len(t.flags) for t in problem.types]}")


def cmd_sdp_round(args, rep):
    problem = load_problem(args.problem).assemble()
    sol = import_solution(problem, args.solution)
    cert = round_solution(problem, sol, args.denom_bound)
    Path(args.out).write_text(cert.to_json())
    rep.set(bound=cert.bound, solver_bound=sol.bound, certificate=args.out)
    rep.line(f"bound {cert.bound} (solver {sol.bound:.12g}); wrote {args.out}")


def cmd_verify(args, rep):
    cert = load_certificate(args.cert)
    problem = load_problem(args.problem).assemble()
    v = verify(cert, problem)
    rep.set(valid=v.valid, certified_bound=v.certified_bound, claimed_bound=cert.bound,
            worst_graph=v.worst_graph, reasons=list(v.reasons))
    rep.line(f"{'valid' if v.valid else 'INVALID'}: certified bound {v.certified_bound} "
             f"(claimed {cert.bound}, worst graph {v.worst_graph})")
    rep.lines += list(v.reasons)
    return 0 if v.valid else 1


def cmd_oracle(args, rep):
    arity, directed = _kind(args)
    fam = _family(args, arity)
    hs = _target(args.target, arity)
    if args.up_to:
        seq = density_sequence(fam, hs, range(hs[0].n, args.up_to + 1))
        rep.set(sequence=seq)
        rep.line(" ".join(render(x) for x in seq))
        return
    res = turan_h_number(args.n, fam, hs)
    rep.set(n=res.n, max_count=res.max_count, max_density=res.max_density,
            witnesses=[format_graph(g) for g in res.witnesses])
    rep.line(f"max count {res.max_count}, density {render(res.max_density)}")
    rep.lines += [format_graph(g) for g in res.witnesses]


def cmd_reproduce(args, rep):
    from .reproduce import run_table, table
    rows = table()
    if args.criterion:
        rows = [r for r in rows if r.criterion in args.criterion]
    results = []
    failures = run_table(rows, results.append)
    rep.lines += results
    rep.set(rows=results, failures=failures)
    rep.line(f"{len(rows) - failures}/{len(rows)} rows pass")
    return 1 if failures else 0


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="turanh", description="Turán H-density toolkit")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--output", help="also write the report to this file")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="isomorphism classes of family-free graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true", help="print every class")
    _add_kind(p)
    _add_family(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("density", help="induced density of a target in a graph")
    p.add_argument("--target", required=True)
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_density)

    for name, fn, helptext in (("blowup", blowup_density, "limit density of a blow-up"),
                               ("iterate", iterated_density, "limit density of an iterated blow-up")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--pattern", required=True, help="pattern text or library name")
        p.add_argument("--target", required=True)
        p.set_defaults(func=_density_cmd(fn))

    p = sub.add_parser("optimize", help="best part weights for a target")
    p.add_argument("--pattern", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("geometric", help="random chord-parity construction")
    p.add_argument("--h", type=int, default=4, help="exact distribution on h points (4..6)")
    p.add_argument("--sample", type=int, metavar="N", help="Monte Carlo on N points instead")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_geometric)

    for name, fn in (("sdp-export", cmd_sdp_export),):
        p = sub.add_parser(name, help="assemble and export a semi-definite problem")
        p.add_argument("--problem", help="problem file (JSON)")
        p.add_argument("--order", type=int)
        p.add_argument("--target")
        p.add_argument("--out", required=True, help="SDPA sparse output path")
        p.add_argument("--problem-out", help="also write the problem file")
        _add_kind(p)
        _add_family(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("sdp-round", help="round a solver solution to an exact certificate")
    p.add_argument("--problem", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--denom-bound", type=int, default=2 ** 20)
    p.set_defaults(func=cmd_sdp_round)

    p = sub.add_parser("verify", help="check a certificate exactly")
    p.add_argument("--cert", required=True)
    p.add_argument("--problem", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive maximum induced count")
    p.add_argument("--n", type=int)
    p.add_argument("--up-to", type=int, help="density sequence from |target| up to this order")
    p.add_argument("--target", required=True)
    _add_kind(p)
    _add_family(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reproduce", help="recompute the reproduction table")
    p.add_argument("--criterion", type=int, action="append", help="only rows of this criterion")
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "oracle" and not (args.n or args.up_to):
        ap.error("oracle needs --n or --up-to")
    if getattr(args, "tol", 1.0) < 1e-12:
        ap.error("--tol must be at least 1e-12")
    rep = Report(args.format, args.output)
    try:
        code = args.func(args, rep) or 0
    except UsageError as exc:
        print(f"turanh {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, CertificateError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"turanh {args.command}: failed: {exc}", file=sys.stderr)
        return 1
    rep.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
