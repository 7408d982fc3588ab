import json
import subprocess
import sys

import pytest

from qsuper import cli
from qsuper.pairing import Report
from qsuper.supercore import ParityDatum, element_from_json, parse_element

D01 = ParityDatum.from_bits("01")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_nf_example(capsys):
    code, out, _ = run(capsys, "nf", "x[2,1] x[1,2]", "--n", "2", "--parity", "01")
    assert code == 0
    assert out.strip() == "-1 * x[1,2] x[2,1]"


def test_basis_json(capsys):
    code, out, _ = run(capsys, "basis", "--n", "2", "--parity", "01", "--degree", "2", "--json")
    data = json.loads(out)
    assert code == 0 and len(data) == 8
    assert {"1,1": 2} in data and {"1,2": 1, "2,1": 1} in data
    assert {"1,2": 2} not in data


def test_verify_j_orth_json(capsys):
    code, out, _ = run(capsys, "verify", "j-orth", "--n", "2", "--parity", "01", "--depth", "3", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["suite"] == "j-orth" and data["cases_failed"] == 0 and data["cases_total"] > 0


def test_verify_failure_exits_one(capsys, monkeypatch):
    def failing(name, datum, args, phi):
        rep = Report(name, datum.bits, "standard")
        rep.record(False, "a", "b", "1")
        return rep

    monkeypatch.setattr(cli, "run_suite", failing)
    code, out, _ = run(capsys, "verify", "skew", "--parity", "01", "--json")
    assert code == 1
    assert json.loads(out)["failures"] == [{"lhs": "a", "rhs": "b", "value": "1"}]


def test_nf_json_round_trips(capsys):
    code, out, _ = run(capsys, "nf", "x[2,2] x[1,1]", "--parity", "01", "--json")
    assert code == 0
    from_json = element_from_json(json.loads(out), D01)
    _, text, _ = run(capsys, "nf", "x[2,2] x[1,1]", "--parity", "01")
    assert parse_element(text.strip(), D01) == from_json
    assert len(from_json.terms) == 2


def test_multi_mode_nf(capsys):
    _, out, _ = run(capsys, "nf", "x[1,2] x[1,1]", "--parity", "01", "--mode", "multi")
    assert out.strip() == "1*q^(-1 + phi[1,2]) * x[1,1] x[1,2]"


def test_mul_and_coprod(capsys):
    _, out, _ = run(capsys, "mul", "x[1,2]", "x[1,2]", "--parity", "01")
    assert out.strip() == "0"
    code, out, _ = run(capsys, "coprod", "x[1,1]", "--parity", "01", "--json")
    terms = json.loads(out)
    assert code == 0 and len(terms) == 2
    assert {(t["left"], t["right"]) for t in terms} == {("x[1,1]", "x[1,1]"), ("x[1,2]", "x[2,1]")}
    code, out, _ = run(capsys, "coprod", "E[1]", "--parity", "01")
    assert code == 0 and "E[1]" in out


def test_pair_poisson_deform_rep(capsys):
    _, out, _ = run(capsys, "pair", "x[1,3]", "E[1] E[2]", "--n", "3")
    assert out.strip() == "1"
    _, out, _ = run(capsys, "poisson", "x[1,1]", "x[1,2]", "--parity", "00")
    assert out.strip() == "1 * x[1,1] x[1,2]"
    _, out, _ = run(capsys, "deform-mul", "x[1,2]", "x[2,1]", "--parity", "01")
    assert out.strip() == "1*q^(phi[1,2]) * x[1,2] x[2,1]"
    code, out, _ = run(capsys, "rep", "E[1]", "--parity", "01", "--json")
    assert code == 0 and json.loads(out) == [["0", "1"], ["0", "0"]]


def test_phi_file(capsys, tmp_path):
    good = tmp_path / "phi.json"
    good.write_text(json.dumps([["0", "2"], ["-2", "0"]]))
    _, out, _ = run(capsys, "poisson", "x[1,1]", "x[1,2]", "--parity", "00", "--mode", "multi", "--phi", str(good))
    assert out.strip() == "-1 * x[1,1] x[1,2]"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([["0", "2"], ["2", "0"]]))
    assert run(capsys, "nf", "x[1,1]", "--parity", "00", "--phi", str(bad))[0] == 3
    diag = tmp_path / "diag.json"
    diag.write_text(json.dumps([["1", "0"], ["0", "0"]]))
    assert run(capsys, "nf", "x[1,1]", "--parity", "00", "--phi", str(diag))[0] == 3
    assert run(capsys, "nf", "x[1,1]", "--parity", "00", "--phi", str(tmp_path / "missing.json"))[0] == 2


@pytest.mark.parametrize("argv, code", [
    (["nf", "x[3,1]", "--parity", "01"], 3),
    (["nf", "x[1,1", "--parity", "01"], 3),
    (["nf", "E[1]", "--parity", "01"], 3),
    (["nf", "x[1,1]", "--parity", "0a"], 2),
    (["nf", "x[1,1]", "--parity", "01", "--n", "3"], 2),
    (["basis", "--parity", "01"], 2),
    (["poisson", "x[1,1]", "x[1,2]", "--mode", "multi"], 2),
    (["frobnicate"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_verify_all_small(capsys, monkeypatch):
    monkeypatch.setenv("QSUPER_THREADS", "2")
    code, out, _ = run(capsys, "verify", "all", "--parity", "01", "--json")
    data = json.loads(out)
    assert code == 0
    assert [r["suite"] for r in data] == sorted(r["suite"] for r in data)
    assert all(r["cases_failed"] == 0 for r in data)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qsuper", "nf", "x[2,1] x[1,2]", "--parity", "01"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.strip() == "-1 * x[1,2] x[2,1]"
