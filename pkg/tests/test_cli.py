import json
import subprocess
import sys

import pytest

import cases
from charvar import io as cio
from charvar.cli import main
from charvar.generators import boundary_of_simplex, coned_polygon
from charvar.polynomial import IntPolynomial


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out.strip(), err


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return p
    return write


def test_poincare_text(capsys):
    assert run(capsys, "poincare", "su2", "--r", 4) == (0, "1 + 4t^6 + t^9", "")
    assert run(capsys, "poincare", "su2", "--r", 1)[1] == "1"


def test_poincare_json_reparses(capsys):
    code, out, _ = run(capsys, "poincare", "su2", "--r", 5, "--json", "--check-duality")
    data = json.loads(out)
    assert str(IntPolynomial.from_json(data["poincare"])) == "1 + 10t^6 + t^8 + 5t^9 + t^12"
    assert [m[0] for m in data["duality"]["mismatches"]] == [3, 4]
    assert all(isinstance(c, str) for c in data["poincare"]["coeffs"])


def test_poincare_table_and_duality_text(capsys):
    code, out, _ = run(capsys, "poincare", "su2", "--r", 3, "--table", "--check-duality")
    assert code == 0
    assert out.splitlines()[0].split() == ["k", "b_k"]
    assert "duality: b_k = b_{6-k}" in out


def test_homotopy_golden(capsys):
    code, out, _ = run(capsys, "homotopy", "--family", "su", "--n", 2, "--r", 4, "--k", 4)
    assert (code, out) == (0, '{"free_rank":1,"invariant_factors":[2,2,2,2]}')
    code, out, _ = run(capsys, "homotopy", "--family", "gl", "--n", 3, "--r", 3, "--k", 2,
                       "--full")
    data = json.loads(out)
    assert data["kind"] == "GROUP" and data["invariant_factors"] == [3]
    assert "SL(3)" in data["range_note"]


def test_pi1_and_codim(capsys):
    assert json.loads(run(capsys, "pi1", "--family", "gl", "--n", 2, "--r", 3)[1]) == \
        {"free_rank": 3, "invariant_factors": []}
    code, _, err = run(capsys, "pi1", "--family", "sl", "--n", 2, "--r", 2, "--irr")
    assert code == 1 and "r >= 3" in err
    out = json.loads(run(capsys, "codim", "--family", "sl", "--n", 2, "--r", 2)[1])
    assert out["singular"] == 3


def test_homology_golden(capsys, files):
    p = files("bt.json", cio.complex_to_json(boundary_of_simplex(3)))
    assert run(capsys, "homology", "--complex", p)[:2] == (0, "[Z, 0, Z]")
    code, out, _ = run(capsys, "homology", "--complex", p, "--json")
    assert json.loads(out)[2] == {"free_rank": 1, "invariant_factors": []}


def test_pi1_complex(capsys, files):
    p = files("c.json", cio.complex_to_json(coned_polygon(4)))
    code, out, _ = run(capsys, "pi1-complex", "--complex", p, "--basepoint", "c")
    data = json.loads(out)
    assert data["basepoint"] == "c"
    assert data["abelianization"] == {"free_rank": 0, "invariant_factors": []}
    assert run(capsys, "pi1-complex", "--complex", p, "--basepoint", "nope")[0] == 1


def test_usage_and_schema_errors_exit_1(capsys, tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["homotopy", "--family", "so", "--n", "2", "--r", "2", "--k", "2"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"maximal_simplices": [["a", "b"]\n')
    code, _, err = run(capsys, "homology", "--complex", bad)
    assert code == 1 and "bad.json:2:" in err
    code, _, err = run(capsys, "homology", "--complex", tmp_path / "missing.json")
    assert code == 1


def test_pushoff_and_verify(capsys, files, tmp_path):
    prob = files("prob.json", cio.problem_to_json(cases.sphere_through_vertex()))
    h, cert = tmp_path / "h.json", tmp_path / "cert.json"
    code, out, _ = run(capsys, "pushoff", "--problem", prob, "--out", h, "--certificate", cert)
    assert code == 0 and json.loads(out)["status"] == "OK"
    code, out, _ = run(capsys, "verify-certificate", "--problem", prob, "--h", h,
                       "--certificate", cert)
    assert code == 0 and json.loads(out)["valid"] is True
    data = json.loads(cert.read_text())
    data["moves"] = data["moves"][:-1]
    cert.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify-certificate", "--problem", prob, "--h", h,
                       "--certificate", cert)
    assert code == 2 and json.loads(out)["valid"] is False


def test_pushoff_from_separate_files(capsys, files):
    data = cio.problem_to_json(cases.coned_hexagon_circle())
    paths = {k: files(f"{k}.json", v) for k, v in data.items()}
    code, out, _ = run(capsys, "pushoff", "--complex", paths["complex"],
                       "--subcomplex", paths["subcomplex"], "--surface", paths["surface"],
                       "--map", paths["map"])
    assert code == 0
    code, _, err = run(capsys, "pushoff", "--complex", paths["complex"])
    assert code == 1 and "--subcomplex" in err


def test_obstructed_exit_3(capsys, files):
    prob = files("p.json", cio.problem_to_json(cases.suspended_hexagon_over_cone()))
    code, out, _ = run(capsys, "pushoff", "--problem", prob, "--budget", 4,
                       "--node-limit", 2000)
    assert code == 3
    data = json.loads(out)
    assert data["stage"] == "step3" and data["evidence"]["punctured_star_h1"] == "Z"


def test_check_hypotheses_exit_codes(capsys, files):
    X = coned_polygon(6)
    px = files("x.json", cio.complex_to_json(X))
    py = files("y.json", [["c"]])
    code, out, _ = run(capsys, "check-hypotheses", "--complex", px, "--subcomplex", py)
    assert code == 2 and json.loads(out)["verdict"] == "FAIL"
    px = files("x4.json", cio.complex_to_json(boundary_of_simplex(4)))
    py = files("y4.json", {"simplices": [["v0"]]})
    code, out, _ = run(capsys, "check-hypotheses", "--complex", px, "--subcomplex", py)
    assert code == 0 and json.loads(out)["verdict"] == "OK"


def test_table_is_deterministic_and_parallel_safe(capsys):
    args = ["table", "homotopy", "--family", "su", "sl", "--n", "2-3", "--r", "3-4",
            "--k", "2-6"]
    seq = run(capsys, *args)[1]
    par = run(capsys, *args, "--jobs", 2)[1]
    assert seq == par
    assert "pi_k(irreducible locus)" in seq.splitlines()[0]
    csv_out = run(capsys, "table", "poincare", "--r", "1-4", "--format", "csv")[1]
    assert csv_out.splitlines()[4] == "4,1 + 4t^6 + t^9,9,3"


def test_generate_problem_uses_seed(capsys, monkeypatch):
    monkeypatch.setenv("CHARVAR_SEED", "11")
    a = run(capsys, "generate-problem")[1]
    b = run(capsys, "generate-problem", "--seed", 11)[1]
    assert a == b
    data = json.loads(a)
    problem = cio.problem_from_json(data)
    assert data["meta"]["seed"] == 11 and problem.Y.vertices


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "charvar", "poincare", "su2", "--r", "3"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "1 + t^6"
