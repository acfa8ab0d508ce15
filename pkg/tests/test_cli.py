import io
import json
import subprocess
import sys

import numpy as np
import pytest

from symblob import serialize
from symblob.cli import main
from symblob.specialize import numeric_generator_matrices, random_pi, solve_sigma
from symblob.tensor import dimension

ONES_FLAGS = ["--delta", "16", "--delta-l", "4", "--delta-r", "4",
              "--kappa-l", "4", "--kappa-r", "4", "--kappa", "4"]


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def write_sigma(path, sigma=None, pi=None):
    obj = {"sigma": sigma or {k: [1.0, 0.0] for k in "abcdxyzw"}}
    if pi is not None:
        obj["pi"] = pi
    path.write_text(json.dumps(obj))
    return path


def test_verify_n2():
    code, text = run("verify", "--n", "2")
    assert code == 0
    assert "8/8 relations pass" in text


def test_verify_perturbed_k():
    code, text = run("verify", "--n", "2", "--theta", "perturb:K", "--json")
    assert code == 1
    rep = json.loads(text)
    serialize.validate(rep, "verify_report")
    failed = sorted(r["id"] for r in rep["relations"] if not r["passed"])
    assert failed == ["IJI", "JIJ"]
    assert all(r["witness"] is not None for r in rep["relations"] if not r["passed"])


def test_verify_json_has_no_timings_by_default():
    code, text = run("verify", "--n", "1", "--json")
    rep = json.loads(text)
    serialize.validate(rep, "verify_report")
    assert "seconds" not in rep
    code, text = run("verify", "--n", "1", "--json", "--timings")
    assert "seconds" in json.loads(text)


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "0"],
    ["verify", "--n", "two"],
    ["verify", "--n", "2", "--theta", "perturb:Q"],
    ["lemmas", "--n", "99"],
    ["solve", "--delta", "1"],
    ["solve", *ONES_FLAGS[:-1], "1,2,3"],
    ["solve", *ONES_FLAGS, "--x0", "0"],
    [],
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_lemmas():
    assert run("lemmas", "--n", "1", "--trials", "10")[0] == 0
    a = run("lemmas", "--n", "2", "--trials", "10", "--seed", "7")
    b = run("lemmas", "--n", "2", "--trials", "10", "--seed", "7")
    assert a == b
    code, text = run("lemmas", "--n", "1", "--trials", "3", "--json")
    serialize.validate(json.loads(text), "lemmas_report")


def test_lemmas_subprocess_byte_identical():
    cmd = [sys.executable, "-m", "symblob", "lemmas", "--n", "2", "--trials", "10", "--seed", "7"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_solve_all_ones():
    code, text = run("solve", *ONES_FLAGS, "--json")
    assert code == 0
    sol = json.loads(text)
    serialize.validate(sol, "solution")
    assert sol["residuals"]["max"] < 1e-8
    assert sol["accepted"]


def test_solve_zero_pi():
    flags = ["--delta", "0", "--delta-l", "0", "--delta-r", "0",
             "--kappa-l", "0", "--kappa-r", "0", "--kappa", "0"]
    code, text = run("solve", *flags, "--json")
    assert code == 0
    assert json.loads(text)["residuals"]["max"] < 1e-8


def test_solve_complex_and_negative_flags():
    code, text = run("solve", "--delta=-3,2", "--delta-l", "1,1", "--delta-r=-0.5",
                     "--kappa-l", "2,-1", "--kappa-r", "0,3", "--kappa=-4,-4", "--json")
    assert code == 0
    sol = json.loads(text)
    assert sol["pi"]["delta"] == [-3.0, 2.0]
    assert sol["residuals"]["max"] < 1e-8


def test_solve_human_output():
    code, text = run("solve", *ONES_FLAGS)
    assert code == 0
    assert text.startswith("accepted")


def test_matrices_triplets(tmp_path):
    sig = write_sigma(tmp_path / "sigma.json")
    out = tmp_path / "out"
    code, text = run("matrices", "--n", "1", "--sigma-file", str(sig), "--out", str(out), "--json")
    assert code == 0
    manifest = json.loads(text)
    serialize.validate(manifest, "manifest")
    assert manifest["files"] == {"e": "e.triplets", "f": "f.triplets"}
    assert json.loads((out / "manifest.json").read_text()) == manifest
    mats = numeric_generator_matrices(1, serialize.sigma_from_json(manifest["sigma"]))
    for g, name in manifest["files"].items():
        with open(out / name) as fh:
            m = serialize.read_numeric_triplets(fh, dimension(1))
        assert (m != mats[g]).nnz == 0
    e = mats["e"]
    assert len(set(e.nonzero()[1])) == 4
    assert json.loads((out / "verify_report.json").read_text())["passed"]


def test_matrices_json_round_trip(tmp_path):
    sol = solve_sigma(random_pi(np.random.default_rng(1)))
    sig = write_sigma(tmp_path / "s.json", serialize.sigma_to_json(sol.sigma),
                      serialize.pi_to_json(sol.pi))
    out = tmp_path / "m"
    code, _ = run("matrices", "--n", "2", "--sigma-file", str(sig), "--out", str(out),
                  "--format", "json")
    assert code == 0
    mats = numeric_generator_matrices(2, sol.sigma)
    for g in ("e", "U1", "f"):
        obj = json.loads((out / f"{g}.json").read_text())
        serialize.validate(obj, "matrix")
        assert (serialize.numeric_matrix_from_json(obj) != mats[g]).nnz == 0


def test_matrices_wrong_pi_fails(tmp_path):
    pi = {k: [4.0, 0.0] for k in ("delta", "delta_l", "delta_r", "kappa_l", "kappa_r", "kappa")}
    pi["delta"] = [17.0, 0.0]
    sig = write_sigma(tmp_path / "s.json", pi=pi)
    code, _ = run("matrices", "--n", "2", "--sigma-file", str(sig), "--out", str(tmp_path / "o"))
    assert code == 1


def test_matrices_bad_inputs(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"sigma": {"a": "one"}}))
    out = str(tmp_path / "o")
    assert run("matrices", "--n", "1", "--sigma-file", str(bad), "--out", out)[0] == 2
    assert run("matrices", "--n", "1", "--sigma-file", str(tmp_path / "nope.json"),
               "--out", out)[0] == 2
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    assert run("matrices", "--n", "1", "--sigma-file", str(garbage), "--out", out)[0] == 2
    zero = write_sigma(tmp_path / "zero.json", {**{k: [1.0, 0.0] for k in "abcdxyzw"},
                                                "a": [0.0, 0.0]})
    assert run("matrices", "--n", "1", "--sigma-file", str(zero), "--out", out)[0] == 2


def test_exit_codes_match_reports_randomized():
    rng = np.random.default_rng(2024)
    coords = ["default", "perturb:D", "perturb:D_L", "perturb:D_R", "perturb:K_L",
              "perturb:K_R", "perturb:K"]
    for _ in range(20):
        kind = rng.choice(["verify", "lemmas", "solve"])
        if kind == "verify":
            n = int(rng.integers(1, 3))
            theta = str(rng.choice(coords))
            code, text = run("verify", "--n", str(n), "--theta", theta, "--json")
            rep = json.loads(text)
            serialize.validate(rep, "verify_report")
        elif kind == "lemmas":
            code, text = run("lemmas", "--n", "1", "--trials", "2",
                             "--seed", str(int(rng.integers(0, 1000))), "--json")
            rep = json.loads(text)
            serialize.validate(rep, "lemmas_report")
        else:
            pi = random_pi(rng)
            flags = []
            for flag, v in zip(("delta", "delta-l", "delta-r", "kappa-l", "kappa-r", "kappa"),
                               (pi.delta, pi.delta_l, pi.delta_r, pi.kappa_l, pi.kappa_r,
                                pi.kappa)):
                flags.append(f"--{flag}={v.real!r},{v.imag!r}")
            code, text = run("solve", *flags, "--json")
            rep = json.loads(text)
            serialize.validate(rep, "solution")
            rep = {"passed": rep["accepted"]}
        assert code == (0 if rep["passed"] else 1)
