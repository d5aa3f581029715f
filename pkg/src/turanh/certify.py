"""Exact verification of semi-definite density certificates.

Nothing here trusts floating point: matrices are Fractions, PSD is decided by
an exact LDL^T factorisation (or by checking ``Q == R^T R`` when factors are
supplied), and the bound is recomputed constraint by constraint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .density import INDUCED, SUBGRAPH
from .enumerate import ForbiddenFamily
from .flags import DensityProblem, assemble, constraint_values
from .graph import GraphError, format_graph, parse_graph


class CertificateError(GraphError):
    pass


def _sym_check(m):
    n = len(m)
    if any(len(row) != n for row in m):
        raise CertificateError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise CertificateError(f"matrix is not symmetric at ({i}, {j})")


def check_psd(m) -> bool:
    """Exact PSD test by LDL^T with largest-diagonal symmetric pivoting."""
    _sym_check(m)
    a = [[Fraction(x) for x in row] for row in m]
    live = list(range(len(a)))
    while live:
        if any(a[i][i] < 0 for i in live):
            return False
        p = max(live, key=lambda i: (a[i][i], -i))
        piv = a[p][p]
        if piv == 0:
            # a zero largest diagonal forces the whole remaining block to vanish
            return all(a[i][j] == 0 for i in live for j in live)
        live.remove(p)
        col = {i: a[i][p] for i in live}
        for i in live:
            if col[i] == 0:
                continue
            f = col[i] / piv
            row = a[i]
            for j in live:
                if col[j]:
                    row[j] -= f * col[j]
    return True


def gram(r, width: int | None = None) -> list[list[Fraction]]:
    """``R^T R`` for a rational matrix given as a list of rows."""
    k = width if width is not None else (len(r[0]) if r else 0)
    out = [[Fraction(0)] * k for _ in range(k)]
    for row in r:
        nz = [(j, x) for j, x in enumerate(row) if x]
        for a, xa in nz:
            for b, xb in nz:
                out[a][b] += xa * xb
    return out


@dataclass(frozen=True)
class Certificate:
    order: int
    arity: int
    directed: bool
    forbidden: tuple             # ((graph string, mode), ...)
    target: tuple                # graph strings
    admissible_keys: tuple       # key strings, one per admissible graph in problem order
    bound: Fraction
    types: tuple                 # type graph strings
    flags: tuple                 # per type, flag graph strings
    q_matrices: tuple            # per type, rational symmetric matrix (list of rows)
    r_factors: tuple | None = None

    def to_json(self) -> str:
        def mat(m):
            return [[str(Fraction(x)) for x in row] for row in m]
        doc = {
            "order": self.order,
            "arity": self.arity,
            "directed": self.directed,
            "forbidden": [list(x) for x in self.forbidden],
            "target": list(self.target),
            "admissible_keys": list(self.admissible_keys),
            "bound": str(self.bound),
            "types": list(self.types),
            "flags": [list(f) for f in self.flags],
            "q_matrices": [mat(q) for q in self.q_matrices],
        }
        if self.r_factors is not None:
            doc["r_factors"] = [mat(r) for r in self.r_factors]
        return json.dumps(doc, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"certificate is not valid JSON: {exc}") from None

        def frac(s):
            if not isinstance(s, (str, int)) or isinstance(s, bool):
                raise CertificateError(f"rational entries must be strings, got {s!r}")
            try:
                return Fraction(s)
            except (ValueError, ZeroDivisionError):
                raise CertificateError(f"bad rational {s!r}") from None

        def mat(m):
            return tuple(tuple(frac(x) for x in row) for row in m)

        try:
            r = doc.get("r_factors")
            return cls(
                order=int(doc["order"]),
                arity=int(doc.get("arity", 3)),
                directed=bool(doc.get("directed", False)),
                forbidden=tuple(tuple(x) for x in doc["forbidden"]),
                target=tuple(doc["target"]),
                admissible_keys=tuple(doc["admissible_keys"]),
                bound=frac(doc["bound"]),
                types=tuple(doc["types"]),
                flags=tuple(tuple(f) for f in doc.get("flags", [])),
                q_matrices=tuple(mat(q) for q in doc["q_matrices"]),
                r_factors=None if r is None else tuple(mat(x) for x in r),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, CertificateError):
                raise
            raise CertificateError(f"malformed certificate: {exc}") from None


def key_string(key: tuple) -> str:
    arity, directed, n, labelled, bits = key
    return f"{arity}.{int(directed)}.{n}.{bits:x}"


def fingerprint(problem: DensityProblem) -> dict:
    return {
        "order": problem.order,
        "arity": problem.arity,
        "directed": problem.directed,
        "forbidden": tuple((format_graph(g), mode) for g, mode in problem.family),
        "target": tuple(format_graph(g) for g in problem.target),
        "admissible_keys": tuple(key_string(k) for k in problem.keys()),
        "types": tuple(format_graph(t.sigma) for t in problem.types),
        "flags": tuple(tuple(format_graph(f) for f in t.flags) for t in problem.types),
    }


def certificate_for(problem: DensityProblem, qs, bound: Fraction, rs=None) -> Certificate:
    fp = fingerprint(problem)
    return Certificate(bound=Fraction(bound),
                       q_matrices=tuple(tuple(tuple(Fraction(x) for x in row) for row in q) for q in qs),
                       r_factors=None if rs is None else
                       tuple(tuple(tuple(Fraction(x) for x in row) for row in r) for r in rs),
                       **fp)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    certified_bound: Fraction | None
    worst_graph: int | None
    reasons: tuple = field(default_factory=tuple)


def _check_fingerprint(cert: Certificate, problem: DensityProblem):
    fp = fingerprint(problem)
    for name, want in fp.items():
        got = getattr(cert, name)
        if name == "flags" and not got:
            continue
        if got != want:
            raise CertificateError(f"fingerprint mismatch in {name!r}: certificate and problem differ")


def verify(cert: Certificate, problem: DensityProblem) -> Verdict:
    """Exact check that ``cert`` proves ``density <= cert.bound`` for ``problem``."""
    _check_fingerprint(cert, problem)
    reasons = []
    if not 0 <= cert.bound <= 1:
        reasons.append(f"claimed bound {cert.bound} outside [0, 1]")
    if len(cert.q_matrices) != len(problem.types):
        raise CertificateError("number of matrices does not match the number of types")
    for t, (q, ft) in enumerate(zip(cert.q_matrices, problem.types)):
        k = len(ft.flags)
        if len(q) != k or any(len(row) != k for row in q):
            raise CertificateError(f"matrix {t} has the wrong size (expected {k}x{k})")
    if cert.r_factors is not None and len(cert.r_factors) != len(cert.q_matrices):
        raise CertificateError("number of factors does not match the number of matrices")
    for t, q in enumerate(cert.q_matrices):
        try:
            _sym_check(q)
        except CertificateError as exc:
            reasons.append(f"PSD check failed for type {t}: {exc}")
            continue
        if cert.r_factors is not None:
            r = cert.r_factors[t]
            if any(len(row) != len(q) for row in r):
                raise CertificateError(f"factor {t} has the wrong width")
            if gram(r, len(q)) != [list(row) for row in q]:
                reasons.append(f"PSD check failed for type {t}: Q differs from R^T R")
        elif not check_psd(q):
            reasons.append(f"PSD check failed for type {t}: matrix is not positive semi-definite")
    values = constraint_values(problem, cert.q_matrices)
    best = max(values)
    worst = values.index(best)
    if best > cert.bound:
        reasons.append(f"constraint {worst} evaluates to {best} > claimed bound {cert.bound}")
    return Verdict(not reasons, best, worst, tuple(reasons))


# -- problem files ----------------------------------------------------------

@dataclass(frozen=True)
class ProblemSpec:
    order: int
    arity: int
    directed: bool
    forbidden: tuple          # ((graph string, mode), ...)
    target: tuple             # graph strings

    def family(self) -> ForbiddenFamily:
        return ForbiddenFamily(tuple((parse_graph(g, self.arity), m) for g, m in self.forbidden))

    def targets(self):
        return [parse_graph(g, self.arity) for g in self.target]

    def assemble(self) -> DensityProblem:
        return assemble(self.order, self.family(), self.targets())

    def to_json(self) -> str:
        return json.dumps({"order": self.order, "arity": self.arity, "directed": self.directed,
                           "forbidden": [list(x) for x in self.forbidden],
                           "target": list(self.target)}, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ProblemSpec":
        try:
            doc = json.loads(text)
            forb = tuple((str(g), str(m)) for g, m in doc.get("forbidden", []))
            for _, m in forb:
                if m not in (SUBGRAPH, INDUCED):
                    raise CertificateError(f"unknown containment mode {m!r}")
            return cls(int(doc["order"]), int(doc.get("arity", 3)), bool(doc.get("directed", False)),
                       forb, tuple(doc["target"]))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, CertificateError):
                raise
            raise CertificateError(f"malformed problem file: {exc}") from None

    @classmethod
    def of(cls, order, family, target) -> "ProblemSpec":
        hs = list(target) if isinstance(target, (list, tuple)) else [target]
        fam = family if isinstance(family, ForbiddenFamily) else ForbiddenFamily(tuple(family))
        arity, directed = hs[0].kind
        return cls(order, arity, directed, tuple((format_graph(g), m) for g, m in fam),
                   tuple(format_graph(h) for h in hs))


def load_certificate(path) -> Certificate:
    return Certificate.from_json(Path(path).read_text())


def load_problem(path) -> ProblemSpec:
    return ProblemSpec.from_json(Path(path).read_text())
