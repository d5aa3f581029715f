import json
from fractions import Fraction

import pytest

from turanh.cli import main
from turanh.reproduce import shipped


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_blowup_turan(capsys):
    code, out, _ = run(capsys, "blowup", "--pattern",
                       "parts=3; weights=1/3,1/3,1/3; edges=112,223,331,123", "--target", "K4-")
    assert code == 0 and out.strip() == "16/27"


def test_blowup_by_name(capsys):
    assert run(capsys, "blowup", "--pattern", "k4", "--target", "4.2")[1].strip() == "9/16"


def test_density_c5(capsys):
    code, out, _ = run(capsys, "density", "--target", "4.2", "--graph", "5:123,234,345,145,125")
    assert code == 0 and out.strip() == "1"


def test_iterate(capsys):
    assert run(capsys, "iterate", "--pattern", "h6-iterated", "--target", "4.2")[1].strip() == "24/43"


def test_float_output_has_error(capsys):
    code, out, _ = run(capsys, "optimize", "--pattern", "mubayi-rodl", "--target", "edge")
    assert code == 0
    assert "0.464101615138" in out and "±" in out


def test_json_output(capsys):
    code, out, _ = run(capsys, "--format", "json", "blowup", "--pattern", "turan", "--target", "edge")
    doc = json.loads(out)
    assert doc["value"] == {"value": "5/9", "exact": True}


def test_output_file(capsys, tmp_path):
    path = tmp_path / "r.txt"
    run(capsys, "--output", str(path), "blowup", "--pattern", "turan", "--target", "edge")
    assert path.read_text().strip() == "5/9"


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--list")
    assert code == 0 and out.splitlines()[0] == "5 classes"
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--arity", "2", "--directed")
    assert out.strip() == "7 classes"


def test_geometric(capsys):
    code, out, _ = run(capsys, "--format", "json", "geometric", "--h", "4")
    doc = json.loads(out)
    assert Fraction(doc["edge_marginal"]) == Fraction(1, 2)
    assert sorted(Fraction(v) for v in doc["classes"].values()) == [Fraction(1, 8), Fraction(1, 8),
                                                                     Fraction(3, 4)]


def test_geometric_sample_deterministic(capsys):
    a = run(capsys, "geometric", "--sample", "7", "--trials", "3", "--seed", "5")[1]
    b = run(capsys, "geometric", "--sample", "7", "--trials", "3", "--seed", "5")[1]
    assert a == b


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--up-to", "6", "--target", "K4-", "--forbid", "K4")
    assert code == 0 and out.strip() == "1 4/5 4/5"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["blowup", "--pattern", "turan"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["oracle", "--target", "4.2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["optimize", "--pattern", "cherry", "--target", "edge", "--tol", "1e-14"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "density", "--target", "4.2", "--graph", "5:12x")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "blowup", "--pattern", "parts=2; weights=1/2,1/3; edges=112",
                       "--target", "edge")
    assert code == 2


def test_computation_failure(capsys):
    code, _, err = run(capsys, "verify", "--cert", "/nonexistent.cert", "--problem", "/nonexistent.prob")
    assert code == 1 and "failed" in err


@pytest.fixture
def mantel_files(tmp_path):
    prob, cert = tmp_path / "mantel.prob", tmp_path / "mantel.cert"
    prob.write_text(shipped("mantel.prob"))
    cert.write_text(shipped("mantel.cert"))
    return prob, cert


def test_verify_shipped(capsys, mantel_files):
    prob, cert = mantel_files
    code, out, _ = run(capsys, "verify", "--cert", str(cert), "--problem", str(prob))
    assert code == 0 and out.startswith("valid: certified bound 1/2")


def test_verify_tampered(capsys, mantel_files, tmp_path):
    prob, cert = mantel_files
    doc = json.loads(cert.read_text())
    doc["q_matrices"][0][0][0] = str(-Fraction(doc["q_matrices"][0][0][0]))
    bad = tmp_path / "bad.cert"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", "--cert", str(bad), "--problem", str(prob))
    assert code == 1 and "INVALID" in out and "PSD" in out


def test_export(capsys, tmp_path):
    out_path, prob = tmp_path / "m.dat-s", tmp_path / "m.prob"
    code, out, _ = run(capsys, "sdp-export", "--order", "3", "--arity", "2", "--target", "2:12",
                       "--forbid", "3:12,13,23", "--out", str(out_path), "--problem-out", str(prob))
    assert code == 0 and out_path.exists()
    assert json.loads(prob.read_text()) == json.loads(shipped("mantel.prob"))
    code, _, _ = run(capsys, "sdp-export", "--out", str(out_path))
    assert code == 2


@pytest.mark.solver
def test_full_pipeline(capsys, tmp_path):
    from solver_util import solve
    dat, prob, sol, cert = (tmp_path / x for x in ("m.dat-s", "m.prob", "m.sol", "m.cert"))
    run(capsys, "sdp-export", "--order", "3", "--arity", "2", "--target", "2:12",
        "--forbid", "3:12,13,23", "--out", str(dat), "--problem-out", str(prob))
    solve(dat, sol)
    code, out, _ = run(capsys, "sdp-round", "--problem", str(prob), "--solution", str(sol), "--out", str(cert))
    assert code == 0 and out.startswith("bound 1/2")
    assert run(capsys, "verify", "--cert", str(cert), "--problem", str(prob))[0] == 0


def test_reproduce_matches_api(capsys):
    code, out, _ = run(capsys, "reproduce", "--criterion", "4")
    assert code == 0
    assert "PASS [4] G4: K4-: got 16/27" in out
