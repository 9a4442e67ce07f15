import json

from gmpy2 import mpq

from discarr.cli import run
from discarr.cohomology import os_betti
from discarr.combinatorics import ArrangementParams
from discarr.matrix import Matrix
from discarr.orlik_solomon import mu
from discarr.resolution import assemble_boundary_group, boundary_laurent
from discarr.serialize import (
    betti_from_json,
    dumps,
    group_matrix_from_json,
    laurent_matrix_from_json,
    matrix_from_json,
    matrix_to_json,
    scan_from_csv,
    symbolic_matrix_to_json,
)


def cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dims(capsys):
    assert cli(capsys, "dims", "--n", "4", "--ell", "1")[:2] == (0, "1,6,11,6\n")


def test_mu_one_by_one(capsys):
    code, out, _ = cli(capsys, "mu", "--n", "2", "--ell", "1", "--q", "0", "--weights", "1")
    data = json.loads(out)
    assert code == 0 and data["entries"] == [[0, 0, "1"]]
    assert (data["rows"], data["cols"]) == (1, 1)


def test_verify_linearization_exit_zero(capsys):
    code, out, _ = cli(capsys, "verify-linearization", "--n", "4", "--ell", "1")
    assert code == 0 and "MISMATCH" not in out


def test_bad_length_names_N(capsys):
    code, _, err = cli(capsys, "betti", "--n", "3", "--ell", "1", "--weights", "1,2")
    assert code == 2 and "N=3" in err and "1,2 1,3 2,3" in err


def test_usage_errors(capsys):
    assert cli(capsys, "dims", "--n", "3")[0] == 2
    assert cli(capsys, "dims", "--n", "3", "--ell", "5")[0] == 2
    assert cli(capsys, "betti", "--n", "3", "--ell", "1", "--weights", "1,x,2")[0] == 2
    assert cli(capsys, "mu", "--n", "3", "--ell", "1", "--q", "0")[0] == 2
    assert cli(capsys, "boundary", "--n", "3", "--ell", "1", "--q", "1", "--t", "1,0,2")[0] == 2


def test_betti_and_local_betti(capsys):
    code, out, _ = cli(capsys, "betti", "--n", "3", "--ell", "1", "--weights", "1,1,-2")
    assert code == 0 and json.loads(out)["betti"] == [0, 1, 1]
    code, out, _ = cli(capsys, "local-betti", "--n", "3", "--ell", "1", "--weights", "1/2,1/2,-1", "--primes", "5,7,11")
    data = json.loads(out)
    assert data["betti"] == [0, 1, 1] and data["provenance"]["consensus"]["agree"]
    code, out, _ = cli(capsys, "local-betti", "--n", "3", "--ell", "1", "--t", "1,1,1")
    assert json.loads(out)["betti"] == [1, 3, 2]


def test_boundary_forms(capsys):
    code, out, _ = cli(capsys, "boundary", "--n", "3", "--ell", "1", "--q", "1", "--t", "2,3,1/2")
    assert code == 0 and json.loads(out)["entries"] == [[0, 0, "1"], [1, 0, "2"], [2, 0, "-1/2"]]
    code, out, _ = cli(capsys, "boundary", "--n", "2", "--ell", "1", "--q", "1")
    assert json.loads(out)["entries"] == [[0, 0, [["-1", [0]], ["1", [1]]]]]
    code, out, _ = cli(capsys, "boundary", "--n", "2", "--ell", "1", "--q", "1", "--form", "group")
    assert json.loads(out)["entries"] == [[0, 0, [["-1", []], ["1", [[1, 2, 1]]]]]]
    code, out, _ = cli(capsys, "boundary", "--n", "2", "--ell", "1", "--q", "1", "--weights", "7")
    assert json.loads(out)["entries"] == [[0, 0, "7"]]


def test_basis(capsys):
    code, out, _ = cli(capsys, "basis", "--n", "3", "--ell", "1", "--q", "2")
    assert json.loads(out) == [[[1, 2], [1, 3]], [[1, 2], [2, 3]]]


def test_scan_csv_rows(capsys):
    argv = ["resonance-scan", "--n", "3", "--ell", "1", "--k", "1", "--sampler", "random", "--count", "10",
            "--seed", "4", "--format", "csv"]
    code, out, err = cli(capsys, *argv)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 11
    assert lines[0] == "lambda_1_2,lambda_1_3,lambda_2_3,k,m,member,b_k"
    assert "seed 4" in err
    assert cli(capsys, *argv)[1] == out
    header, rows = scan_from_csv(out)
    assert all(r["member"] == (sum(r["lambda"]) == 0 and any(r["lambda"])) for r in rows)


def test_scan_json_and_fix(capsys):
    code, out, _ = cli(capsys, "resonance-scan", "--n", "3", "--ell", "1", "--k", "1", "--values=-1,0,1",
                       "--fix", "1,2=1")
    data = json.loads(out)
    assert data["seed"] == 0 and len(data["records"]) == 9
    assert all(r["lambda"][0] == "1" for r in data["records"])
    assert cli(capsys, "resonance-scan", "--n", "3", "--ell", "1", "--k", "1", "--fix", "oops")[0] == 2


def test_sandwich_and_probe(capsys):
    code, out, _ = cli(capsys, "sandwich", "--n", "3", "--ell", "1", "--weights", "1/2,1/2,-1")
    data = json.loads(out)
    assert code == 0 and data["lower"] == [0, 1, 1] and data["upper"] == [1, 3, 2]
    code, out, _ = cli(capsys, "tangent-cone", "--n", "3", "--ell", "1", "--k", "1", "--weights", "1,1,-2")
    data = json.loads(out)
    assert code == 0 and data["member"] and all(r["b_k"] >= 1 for r in data["rows"])


def test_verify_resolution_prints_seed(capsys, tmp_path):
    out_file = tmp_path / "res.txt"
    code, _, err = cli(capsys, "verify-resolution", "--n", "3", "--ell", "1", "--samples", "2", "--seed", "9",
                       "--output", str(out_file))
    assert code == 0 and "seed 9" in err
    assert out_file.read_text().startswith("seed: 9\n")


def test_weights_file(capsys, tmp_path):
    f = tmp_path / "w.json"
    f.write_text('["1", "1", "-2"]')
    code, out, _ = cli(capsys, "betti", "--n", "3", "--ell", "1", "--weights-file", str(f))
    assert json.loads(out)["betti"] == [0, 1, 1]


def test_output_is_byte_stable(capsys):
    argv = ["betti", "--n", "4", "--ell", "2", "--weights", "1/2,-3/2,2,0,1"]
    assert cli(capsys, *argv)[1] == cli(capsys, *argv)[1]


def test_matrix_roundtrip():
    P = ArrangementParams(4, 1)
    M = mu(P, 1, [mpq(-3, 2), 1, 0, 2, mpq(5, 7), -1])
    text = dumps(matrix_to_json(M, 4, 1, 1))
    meta, back = matrix_from_json(text)
    assert back == M and meta == {"n": 4, "ell": 1, "q": 1}
    assert '"-3/2"' in text or '"3/2"' in text
    assert dumps(matrix_to_json(back, 4, 1, 1)) == text
    assert json.loads(dumps(matrix_to_json(Matrix(2, 3), 2, 1, 0)))["entries"] == []


def test_symbolic_roundtrip():
    P = ArrangementParams(3, 1)
    L = boundary_laurent(P, 2)
    assert laurent_matrix_from_json(dumps(symbolic_matrix_to_json(L, 3, 1, 2)), P.N) == L
    G = assemble_boundary_group(P, 2)
    assert group_matrix_from_json(dumps(symbolic_matrix_to_json(G, 3, 1, 2))) == G


def test_betti_roundtrip():
    rep = os_betti(ArrangementParams(3, 1), [1, 1, -2])
    text = dumps(rep.as_dict())
    assert betti_from_json(text) == json.loads(text)
    assert dumps(betti_from_json(text)) == text
