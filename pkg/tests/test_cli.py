import csv
import io
import json

import pytest

from opclt.cli import run

TWO_POINT = {"type": "atomic", "atoms": [{"x": "-1", "w": "1/2"}, {"x": "1", "w": "1/2"}]}
SEMIGROUP = {"type": "semigroup", "omega": {"re": "0", "im": "1/2"}}


@pytest.fixture
def files(tmp_path):
    m = tmp_path / "twopoint.json"
    k = tmp_path / "semigroup_i_over_2.json"
    m.write_text(json.dumps(TWO_POINT))
    k.write_text(json.dumps(SEMIGROUP))
    return str(m), str(k)


def out_of(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr()


def test_converge_csv(capsys, files):
    m, k = files
    code, cap = out_of(capsys, ["clt", "converge", "--measure", m, "--operator", k, "--l", "2", "--m", "2", "--Ns", "10,100,1000"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(cap.out)))
    assert list(rows[0]) == ["N", "re(cN)", "im(cN)", "abs_err"]
    for r in rows:
        assert float(r["abs_err"]) == pytest.approx(1 / (2 * int(r["N"])), rel=1e-15)


def test_hermite_table(capsys):
    code, cap = out_of(capsys, ["hermite", "table", "--max", "4"])
    rows = json.loads(cap.out)
    assert code == 0 and rows[-1]["H"] == "x^4 - 6*x^2 + 3" and rows[-1]["H(0)"] == "3"


def test_kmatrix_and_limit(capsys, files):
    m, k = files
    code, cap = out_of(capsys, ["kmatrix", "--measure", m, "--operator", k, "--cutoff", "6"])
    data = json.loads(cap.out)
    assert code == 0 and data["hypotheses"]["ok"]
    assert data["entries"][1][1] == {"re": "0", "im": "1/2"}
    code, cap = out_of(capsys, ["clt", "limit", "--measure", m, "--operator", k, "--lmax", "3"])
    data = json.loads(cap.out)
    assert data["params"]["lambda"] == {"re": "1", "im": "0"}
    assert data["limit"][2][2] == {"re": "-1/2", "im": "0"}
    code, cap = out_of(capsys, ["clt", "finite-n", "--measure", m, "--operator", k, "--N", "4", "--lmax", "2"])
    assert json.loads(cap.out)["finite_n"][2][2] == {"re": "-3/8", "im": "0"}


def test_exact_values_roundtrip(capsys, files):
    from opclt.algebra import ComplexScalar

    m, k = files
    run(["kmatrix", "--measure", m, "--operator", k, "--cutoff", "4"])
    for row in json.loads(capsys.readouterr().out)["entries"]:
        for v in row:
            assert ComplexScalar.from_json(v).to_json() == v


def test_gauss(capsys):
    code, cap = out_of(capsys, ["gauss", "kernel", "--tau", "0", "--omega", "1/2", "--lambda", "1"])
    data = json.loads(cap.out)
    assert code == 0 and data["A"]["re"] == "1/3" and data["C"]["re"] == "2/3"
    code, cap = out_of(capsys, ["gauss", "apply", "--omega", "1/2", "--poly", "0,-3,0,1", "--at", "0.7"])
    data = json.loads(cap.out)
    assert float(data["kernel"]["re"]) == pytest.approx(-0.219625)


def test_hyper(capsys, files):
    m, _ = files
    code, cap = out_of(capsys, ["hyper", "epperson", "--p", "3/2", "--q", "3", "--omega-grid", "0,0,0,1,3"])
    assert code == 0 and cap.out.splitlines()[0] == "re,im,slack,ok"
    code, cap = out_of(capsys, ["hyper", "two-point", "--p", "3/2", "--q", "3"])
    assert json.loads(cap.out)["contraction"] is True
    code, cap = out_of(capsys, ["--seed", "7", "hyper", "transfer", "--measure", m, "--omega", "0,1/2", "--p", "2", "--q", "2"])
    data = json.loads(cap.out)
    assert data["seed"] == 7 and data["epperson"]


def test_determinism(capsys, files):
    m, _ = files
    argv = ["hyper", "transfer", "--measure", m, "--omega", "0.3j", "--p", "2", "--q", "4"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first


def test_exit_codes(capsys, tmp_path, files):
    _, k = files
    code, cap = out_of(capsys, ["kmatrix", "--measure", str(tmp_path / "missing.json"), "--operator", k])
    assert code == 2 and "missing.json" in cap.err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"type": "atomic", "atoms": [{"x": "0", "w": "1/2"}, {"x": "1", "w": "1/2"}]}))
    code, cap = out_of(capsys, ["kmatrix", "--measure", str(bad), "--operator", k])
    assert code == 1 and "mean" in cap.err
    code, cap = out_of(capsys, ["gauss", "kernel", "--tau", "-1", "--omega", "0", "--lambda", "1"])
    assert code == 1 and "Re tau" in cap.err
    code, _ = out_of(capsys, ["nonsense"])
    assert code == 2
