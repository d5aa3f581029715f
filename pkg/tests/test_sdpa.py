from fractions import Fraction

import numpy as np
import pytest

from solver_util import solve, solve_and_round
from turanh.catalog import single_edge
from turanh.certify import verify
from turanh.enumerate import ForbiddenFamily
from turanh.flags import assemble
from turanh.graph import UniformGraph, parse_graph
from turanh.sdpa import (SolverFormatError, SolverSolution, block_sizes, export_problem,
                         import_solution, parse_sdpa, parse_solution, rational_factor, round_solution,
                         sdpa_text, solution_text)

TRIANGLE = parse_graph("3:12,13,23", 2)
EDGE2 = parse_graph("2:12", 2)


@pytest.fixture(scope="module")
def mantel():
    return assemble(3, ForbiddenFamily.of(TRIANGLE), EDGE2)


@pytest.fixture(scope="module")
def order4():
    return assemble(4, (), parse_graph("4:123,124"))


def test_block_sizes(mantel):
    assert block_sizes(mantel) == [2, -4]


@pytest.mark.parametrize("which", ["mantel", "order4"])
def test_export_roundtrip(which, request):
    problem = request.getfixturevalue(which)
    parsed = parse_sdpa(sdpa_text(problem))
    k = len(problem.graphs)
    assert parsed.m == k
    # recover each unscaled row from the integer file
    for i in range(k):
        rows = [e for e in parsed.entries[i + 1]]
        scale = next(v for blk, a, b, v in rows if blk == len(parsed.blocks) and a == b == k + 1)
        assert parsed.c[i] / scale == problem.d[i]
        for t in range(len(problem.types)):
            got = {(a - 1, b - 1): -v / scale for blk, a, b, v in rows if blk == t + 1}
            want = {ab: v for ab, v in problem.coefficients[t][i].items() if ab[0] <= ab[1] and v}
            assert got == want


def test_export_is_integral(order4):
    for line in sdpa_text(order4).splitlines()[4:]:
        assert "/" not in line and "." not in line


def test_export_file(tmp_path, mantel):
    export_problem(mantel, tmp_path / "m.dat-s")
    assert (tmp_path / "m.dat-s").read_text() == sdpa_text(mantel)


@pytest.mark.parametrize("text", [
    "",
    "2\n1\n2\n1\n0 1 1 1 1.0\n",
    "1\n1\n2\n1\n0 2 1 1 1\n",
    "1\n1\n2\n1\n0 1 3 1 1\n",
    "1\n1\n-2\n1\n1 1 1 2 1\n",
    "1\n1\n2\n1\n1 1 1 x 1\n",
])
def test_parse_sdpa_errors(text):
    with pytest.raises(SolverFormatError):
        parse_sdpa(text)


def test_parse_sdpa_punctuation():
    p = parse_sdpa('"comment"\n1 = m\n1\n{2}\n(3)\n0 1 1 2 0.5\n')
    assert p.blocks == (2,) and p.c == (3,)
    assert p.entries[0] == [(1, 1, 2, Fraction(1, 2))]


def _write_solution(tmp_path, problem, q, b):
    k = len(problem.graphs)
    diag = np.zeros((k + 1, k + 1))
    diag[k, k] = b
    path = tmp_path / "s.sol"
    path.write_text(solution_text([0.0] * k, list(q) + [diag], block_sizes(problem)))
    return path


def test_solution_roundtrip(tmp_path, mantel):
    q = np.array([[0.5, -0.5], [-0.5, 0.5]])
    sol = import_solution(mantel, _write_solution(tmp_path, mantel, [q], 0.5))
    assert sol.bound == 0.5
    assert np.array_equal(sol.q[0], q)


def test_wrong_block_size(tmp_path, mantel):
    path = tmp_path / "bad.sol"
    path.write_text("0 0 0\n2 1 3 3 1.0\n")
    with pytest.raises(SolverFormatError):
        import_solution(mantel, path)


def test_wrong_y_length(tmp_path, mantel):
    path = tmp_path / "bad.sol"
    path.write_text("0 0\n2 1 1 1 1.0\n")
    with pytest.raises(SolverFormatError):
        import_solution(mantel, path)


def test_bad_matrix_number():
    with pytest.raises(SolverFormatError):
        parse_solution("0\n3 1 1 1 1\n", [1])


def test_identity_rounds_to_identity():
    for bound in (1, 2, 1024):
        r = rational_factor(np.eye(3), bound)
        from turanh.certify import gram
        assert gram(r, 3) == [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]


def test_rounding_rejects_indefinite():
    with pytest.raises(SolverFormatError):
        rational_factor(np.array([[1.0, 2.0], [2.0, 1.0]]), 100)


def test_rounding_shape_checks(mantel):
    with pytest.raises(SolverFormatError):
        round_solution(mantel, SolverSolution(0.5, (np.eye(3),), ()))
    with pytest.raises(SolverFormatError):
        round_solution(mantel, SolverSolution(0.5, (), ()))
    with pytest.raises(SolverFormatError):
        round_solution(mantel, SolverSolution(0.5, (np.eye(2),), ()), 0)


def test_rounding_of_exact_mantel(mantel):
    sol = SolverSolution(0.5, (np.array([[0.5, -0.5], [-0.5, 0.5]]),), ())
    cert = round_solution(mantel, sol)
    assert cert.bound == Fraction(1, 2)
    assert verify(cert, mantel).valid


def test_denominator_monotone(mantel):
    rng = np.random.default_rng(9)
    for _ in range(10):
        a = rng.normal(size=(2, 2))
        sol = SolverSolution(0.0, (a @ a.T,), ())
        coarse = round_solution(mantel, sol, 1).bound
        fine = round_solution(mantel, sol, 2 ** 20).bound
        assert coarse >= fine


@pytest.mark.solver
def test_mantel_pipeline(tmp_path, mantel):
    cert = solve_and_round(mantel, tmp_path)
    v = verify(cert, mantel)
    assert v.valid and v.certified_bound == Fraction(1, 2)


@pytest.mark.solver
def test_solver_value_near_half(tmp_path, mantel):
    dat, sol = tmp_path / "m.dat-s", tmp_path / "m.sol"
    export_problem(mantel, dat)
    solve(dat, sol)
    assert abs(import_solution(mantel, sol).bound - 0.5) < 1e-6


@pytest.mark.solver
def test_pipeline_reproduces_shipped_certificate(tmp_path, mantel):
    from turanh.certify import Certificate
    from turanh.reproduce import shipped
    assert solve_and_round(mantel, tmp_path) == Certificate.from_json(shipped("mantel.cert"))
