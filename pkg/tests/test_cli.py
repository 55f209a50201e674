import json
import subprocess
import sys

import pytest

BASE = [sys.executable, "-m", "mixedhurwitz.cli"]


def run(*args, check=True):
    proc = subprocess.run(BASE + list(args), capture_output=True, text=True)
    if check:
        assert proc.returncode == 0, proc.stderr
    return proc


def test_compute_example():
    p = run("compute", "--base-genus", "1", "--source-genus", "2",
            "--degree", "3", "--k", "0", "--l", "2", "--m", "0", "--connected")
    assert json.loads(p.stdout) == {"value": "13"}


def test_compute_oracle_agrees():
    common = ["compute", "--base-genus", "1", "--source-genus", "2",
              "--degree", "2", "--k", "2", "--connected"]
    a = json.loads(run(*common).stdout)
    b = json.loads(run(*common, "--method", "oracle").stdout)
    assert a == b == {"value": "2"}


def test_qseries_example():
    p = run("qseries", "--base-genus", "1", "--source-genus", "2",
            "--k", "2", "--l", "0", "--m", "0", "--qmax", "5")
    doc = json.loads(p.stdout)
    assert doc["coefficients"] == ["0", "0", "2", "16", "60", "160"]


def test_qseries_csv():
    p = run("--format", "csv", "qseries", "--base-genus", "1",
            "--source-genus", "2", "--k", "2", "--qmax", "3")
    lines = p.stdout.strip().splitlines()
    assert lines[0] == "degree,coefficient"
    assert lines[-1] == "3,16"


def test_fit_first_appendix_polynomial():
    p = run("fit", "--source-genus", "2", "--k", "2", "--qmax", "12",
            "--weight", "6", "--bracket")
    doc = json.loads(p.stdout)
    assert doc["weight_bound"] == 6
    terms = {(t["P"], t["Q"], t["R"]): t["coeff"] for t in doc["terms"]}
    assert terms[(3, 0, 0)] == "1/5184"
    assert terms[(1, 1, 0)] == "-1/8640"
    assert terms[(0, 0, 1)] == "-1/12960"


def test_toprec_document():
    p = run("toprec", "--g", "0", "--n", "3", "--mu", "1,1,2")
    doc = json.loads(p.stdout)
    assert doc == {"C": "-48",
                   "checks": {"cut_and_join": "-48", "oracle": "-48"}}


def test_double_document():
    p = run("double", "--variant", "monotone", "--mu", "3", "--nu", "2,1",
            "--genus", "0")
    assert json.loads(p.stdout) == {"value": "1"}


def test_tropical_list():
    p = run("tropical", "--genus", "2", "--degree", "2",
            "--variant", "strict", "--list")
    doc = json.loads(p.stdout)
    assert doc["total"] == "0"
    assert len(doc["covers"]) == 5
    for c in doc["covers"]:
        assert set(c) == {"vertices", "edges", "aut", "multiplicity"}


def test_qc_verify_prints_zero():
    p = run("qc", "verify", "--variant", "strict", "--genus", "1",
            "--dmax", "6", "--bmax", "6")
    assert p.stdout.strip() == "0"


def test_verify_suite():
    p = run("verify", "--suite", "golden-series")
    assert "failures: 0" in p.stdout


def test_exit_codes():
    bad = run("compute", "--base-genus", "1", "--source-genus", "2",
              "--degree", "2", "--k", "1", check=False)
    assert bad.returncode == 2          # k+l+m != b
    res = run("--oracle-dmax", "4", "compute", "--base-genus", "0",
              "--source-genus", "0", "--degree", "5", "--profiles", "5",
              "--l", "4", "--method", "oracle", check=False)
    assert res.returncode == 3          # above the oracle limit


def test_byte_identical_documents():
    args = ["toprec", "--g", "1", "--n", "1", "--mu", "2"]
    assert run(*args).stdout == run(*args).stdout


def test_cache_lifecycle(tmp_path):
    d = str(tmp_path)
    p = run("--cache-dir", d, "cache", "build", "--dmax", "3")
    built = json.loads(p.stdout)["built"]
    assert len(built) == 3
    p = run("--cache-dir", d, "cache", "info")
    assert json.loads(p.stdout)["files"] == [
        "chartable-1.json", "chartable-2.json", "chartable-3.json"]
    p = run("--cache-dir", d, "cache", "clear")
    assert len(json.loads(p.stdout)["removed"]) == 3
    p = run("--cache-dir", d, "cache", "info")
    assert json.loads(p.stdout)["files"] == []
