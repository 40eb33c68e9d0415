import json
import random
import subprocess
import sys

import pytest

from implicitkit.cli import JobSpec, run
from implicitkit.corpus import EXAMPLE_G, EXAMPLE_MATRIX, STEINER_AFFINE
from implicitkit.errors import InputError

E_QUAD = ["X1^2", "X1*X2", "X2^2", "X1*X3"]


def job_file(tmp_path, data, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_implicitize_simple(tmp_path):
    code, rep = run(["implicitize", "--input", job_file(tmp_path, {"field": "GF(101)", "n": 3,
                                                                    "f": E_QUAD})])
    assert code == 0
    assert rep["H"] == "T1*T3 + 100*T2^2"
    assert (rep["G"], rep["deg_lambda"], rep["eta"]) == ("1", 1, 1)
    assert rep["base_points"][0]["coords"] == ["0", "0", "1"]
    assert all(v != "fail" for v in rep["checks"].values())


def test_implicitize_line(tmp_path):
    code, rep = run(["implicitize", "--input",
                     job_file(tmp_path, {"field": "QQ", "n": 2, "f": ["X1", "X2", "X1+X2"]})])
    assert code == 0
    assert (rep["H"], rep["deg_lambda"]) == ("T1 + T2 - T3", 1)


def test_implicitize_matrix_example(tmp_path, R3):
    data = {"field": "GF(13)", "n": 3, "f": [], "affine_matrix": EXAMPLE_MATRIX,
            "extension_bound": 1}
    code, rep = run(["implicitize", "--input", job_file(tmp_path, data)])
    assert code == 0, rep
    assert R3.parse(rep["G"]) == R3.parse(EXAMPLE_G)
    assert R3.parse(rep["H"]).degree() == 6
    extraneous = [p for p in rep["base_points"] if p["e_x"] - p["d_x"] == 1]
    assert sorted(p["coords"][2] for p in extraneous) == ["5", "8"]


def test_malformed_input_exit_1(tmp_path):
    code, rep = run(["implicitize", "--input",
                     job_file(tmp_path, {"field": "GF(101)", "n": 3, "f": ["X1^2+"]})])
    assert code == 1
    assert rep["error"]["code"] == "parse_error"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["implicitize", "--input", str(bad)])[0] == 1
    assert run(["implicitize", "--input", str(tmp_path / "missing.json")])[0] == 1
    code, rep = run(["implicitize", "--input",
                     job_file(tmp_path, {"field": "GF(101)", "n": 3, "f": ["X1", "X2"]})])
    assert code == 1


def test_jobspec_validation():
    with pytest.raises(InputError):
        JobSpec.from_dict({"field": "GF(101)"})
    with pytest.raises(InputError):
        JobSpec.from_dict({"field": "GF(101)", "n": 3, "f": E_QUAD, "nu": "two"})


def test_hypothesis_violation_exit_2(tmp_path):
    rng = random.Random(3)
    quartic = lambda: "+".join(f"{rng.randrange(1, 101)}*X1^{4 - k}*X2^{k}" for k in range(5))
    f = [f"X3*{c}+{quartic()}" for c in ["X1^3", "X1^2*X2", "X1*X2^2", "X2^3"]]
    code, rep = run(["implicitize", "--input", job_file(tmp_path, {"field": "GF(101)", "n": 3,
                                                                    "f": f})])
    assert code == 2
    assert rep["error"]["code"] == "not_locally_n_generated"
    code, rep = run(["implicitize", "--input",
                     job_file(tmp_path, {"field": "QQ", "n": 3,
                                         "f": ["X1^2", "X1*X2", "X1*X3", "X1*X2+X1*X3"]})])
    assert code == 2
    assert rep["error"]["code"] == "infinite_base_locus"


def test_resultant_mu_basis(tmp_path):
    code, rep = run(["resultant", "--input",
                     job_file(tmp_path, {"field": "QQ", "n": 2, "f": ["X1^2", "X1*X2", "X2^2"]})])
    assert code == 0
    assert rep["mu"] == [1, 1]
    assert rep["resultant"] == "T1*T3 - T2^2"


def test_resultant_affine_matrix(tmp_path):
    data = {"field": "QQ", "n": 3, "f": [], "affine_matrix": STEINER_AFFINE}
    code, rep = run(["resultant", "--prop34", "--input", job_file(tmp_path, data)])
    assert code == 0
    assert rep["cond_a"] is True and rep["cond_b"] is False
    assert rep["resultant_degree"] == 8
    assert rep["checks"]["resultant_vanishes_on_image"] == "pass"


def test_verify(tmp_path):
    path = job_file(tmp_path, {"field": "QQ", "n": 2, "f": ["X1^2", "X1*X2", "X2^2"]})
    code, rep = run(["verify", "--input", path, "--candidate", "T1*T3-T2^2"])
    assert code == 0 and rep["vanishes_on_image"] is True
    code, rep = run(["verify", "--input", path, "--candidate", "T1*T3-T2"])
    assert rep["vanishes_on_image"] is False


def _cli(args, stdin=None):
    return subprocess.run([sys.executable, "-m", "implicitkit", *args], input=stdin,
                          capture_output=True, text=True, timeout=300)


def test_cli_is_deterministic(tmp_path):
    path = job_file(tmp_path, {"field": "GF(101)", "n": 3, "f": E_QUAD})
    first = _cli(["implicitize", "--quiet", "--input", path])
    second = _cli(["implicitize", "--quiet", "--input", path])
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert first.stderr == ""


def test_cli_reads_stdin():
    proc = _cli(["implicitize", "--input", "-"],
                stdin=json.dumps({"field": "QQ", "n": 2, "f": ["X1", "X2", "X1+X2"]}))
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["H"] == "T1 + T2 - T3"
    assert proc.stderr
