import json

import pytest

from cyclic_cellular import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if code != 2 and out.lstrip().startswith("{") else out)


def test_dims_wreath(capsys):
    code, doc = run(capsys, "dims", "--target", "wreath", "--A", "S2", "--n", "2")
    assert code == 0
    assert doc["command"] == "dims" and doc["ok"]
    assert doc["result"]["dim"] == 8
    assert set(doc) == {"command", "ok", "result", "timing"}


def test_dims_abrauer_and_brauer(capsys):
    _, doc = run(capsys, "abrauer", "dims", "--A", "S2", "--n", "3")
    assert doc["result"]["dim"] == 120
    _, doc = run(capsys, "dims", "--target", "brauer", "--A", "R1", "--n", "4")
    assert doc["result"]["dim"] == 105


def test_gram_s3(capsys):
    code, doc = run(capsys, "gram", "--target", "S3", "--level", "[2,1]")
    assert code == 0
    assert doc["result"]["gram"][0]["matrix"] == [["2", "-1"], ["-1", "2"]]


def test_gram_patho_is_zero(capsys):
    _, doc = run(capsys, "gram", "--target", "patho", "--level", "2")
    (g,) = doc["result"]["gram"]
    assert g["zero"] and g["matrix"] == [["0", "0"], ["0", "0"]]


def test_mul_s2(capsys):
    code, doc = run(capsys, "mul", "--target", "S2", "m0", "m0")
    assert code == 0
    assert doc["result"]["product"] == "2*m0"


def test_brauer_commands(capsys):
    e1 = "[(1,2),(1b,2b)]"
    _, doc = run(capsys, "mul", "--target", "brauer", "--A", "S2", "--n", "2", e1, e1)
    assert doc["result"]["product"] == "d*[(1,2),(1b,2b)] labels=[m1, m1]"
    _, doc = run(capsys, "trace", "--target", "brauer", "--A", "S2", e1)
    assert doc["result"]["trace"] == "d"
    _, doc = run(capsys, "close", "--A", "R1", e1)
    assert doc["ok"]


def test_cellmod_sign(capsys):
    _, doc = run(capsys, "cellmod", "--target", "S2", "--lam", "[1,1]")
    assert doc["result"]["action"][0]["matrix"] == [["-1"]]


@pytest.mark.parametrize("argv", [["verify", "--target", "C2"], ["verify", "--target", "patho"],
                                  ["wreath", "verify", "--A", "S2", "--n", "2", "--induced"],
                                  ["abrauer", "verify", "--A", "S2", "--n", "2"]])
def test_verify_succeeds(capsys, argv):
    code, doc = run(capsys, *argv)
    assert code == 0 and doc["ok"]
    assert {"cellular", "cyclic", "checks", "strict", "violations"} <= set(doc["result"])


def test_verify_diagnostics(capsys):
    _, doc = run(capsys, "verify", "--target", "C2")
    diag = doc["result"]["abelian_diagnostic"]
    assert doc["result"]["cyclic"] and diag["trivial_involution"]
    _, doc = run(capsys, "verify", "--target", "patho")
    assert doc["result"]["cellular"] and not doc["result"]["cyclic"]


def test_verification_failure_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(cli, "verify_cell_datum", lambda *a, **k: False)
    code, doc = run(capsys, "verify", "--target", "S2")
    assert code == 1 and not doc["ok"]


@pytest.mark.parametrize("argv", [["mul", "--target", "S2", "m0", "m9"], ["gram", "--target", "S3", "--level", "[5]"],
                                  ["dims", "--target", "wreath"], ["verify", "--target", "S2", "--jobs", "0"],
                                  ["frobnicate"]])
def test_usage_errors_exit_two(capsys, argv):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_output_is_deterministic(capsys):
    argv = ["verify", "--target", "wreath", "--A", "C2", "--n", "2", "--sample", "5", "--seed", "3"]
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    a.pop("timing"), b.pop("timing")
    assert a == b


def test_pretty_output(capsys):
    code, text = run(capsys, "gram", "--target", "S3", "--level", "[2,1]", "--pretty")
    assert code == 0
    assert "matrix:" in text and "-1" in text
