import io
import json

import pytest

from unicircle.cli import RunConfig, UsageError, main, parse_k_range


def run(argv, monkeypatch=None):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_roots_json(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"precision_bits": 128, "coeffs": [["1", "0"], ["0", "0"], ["1", "0"]]}))
    code, text = run(["roots", "--input", str(f)])
    assert code == 0
    doc = json.loads(text)
    assert doc["schema"] == "unicircle/1"
    assert sorted(float(im) for _, im in doc["result"]["roots"]) == [-1.0, 1.0]


def test_roots_from_coeff_list(tmp_path):
    f = tmp_path / "p.json"
    f.write_text("[1, 0, 1]")
    assert run(["roots", "--input", str(f)])[0] == 0


def test_criteria_only():
    code, text = run(["criteria", "--coeffs", "1,1,1", "--only", "cohn,lakatos"])
    assert code == 0
    res = json.loads(text)["result"]
    assert [r["criterion_id"] for r in res] == ["cohn", "lakatos"]
    assert all(r["holds"] for r in res)


def test_criteria_all():
    code, text = run(["criteria", "--coeffs", "1,2,1", "--all"])
    assert code == 0 and len(json.loads(text)["result"]) == 6


def test_certify_w_family():
    code, text = run(["certify", "--family", "W", "--k", "6", "--r", "3", "--c", "0.52", "--samples", "65536"])
    assert code == 0
    assert json.loads(text)["result"]["valid"] is True


def test_certify_failure_exit_1():
    code, _ = run(["certify", "--family", "P", "--k", "11", "--r", "4", "--c", "0.5", "--samples", "4096"])
    assert code == 1


def test_verify_family_P():
    code, text = run(["verify-family", "--family", "P", "--k", "2..30", "--samples", "1048576"])
    assert code == 0
    rows = json.loads(text)["result"]
    assert [r["k"] for r in rows] == list(range(2, 31))
    assert all(r["certificate"] for r in rows if r["k"] >= 11)


def test_verify_family_parallel_keeps_order():
    code, text = run(["verify-family", "--family", "W", "--k", "2..7", "--parallelism", "2", "--samples", "65536"])
    assert code == 0
    assert [r["k"] for r in json.loads(text)["result"]] == list(range(2, 8))


def test_families_scan_csv():
    code, text = run(["families", "scan-lemma3", "--k", "4..6", "--format", "csv"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("# schema=unicircle/1")
    assert lines[1] == "part,k,j,lhs,rhs,margin,flagged"


def test_criteria_csv_rows():
    code, text = run(["criteria", "--coeffs", "1,1,1,1", "--all", "--format", "csv"])
    assert code == 0
    lines = text.splitlines()
    assert lines[1] == "criterion,applicable,holds,is_iff,margin"
    assert lines[2].startswith("cohn,True,True,True,")
    assert len(lines) == 2 + 6


def test_families_build_and_ramanujan():
    assert run(["families", "build", "--family", "Q", "--k", "3"])[0] == 0
    code, text = run(["families", "ramanujan", "--k", "2,3", "--precision", "128"])
    assert code == 0
    vals = json.loads(text)["result"]
    assert all(float(v) < 1e-25 for per_k in vals.values() for v in per_k.values())


def test_special():
    code, text = run(["special", "bernoulli", "--n", "12"])
    assert code == 0 and json.loads(text)["result"]["value"] == "-691/2730"
    code, text = run(["special", "zeta", "--n", "3", "--precision", "128"])
    assert json.loads(text)["result"]["value"].startswith("1.2020569031595942853997")


def test_usage_errors():
    assert run(["nope"])[0] == 2
    assert run(["roots"])[0] == 2
    assert run(["special", "zeta", "--n", "1"])[0] == 2
    assert run(["verify-family", "--family", "P", "--k", "x..y"])[0] == 2
    assert run(["roots", "--coeffs", "1,1", "--precision", "16"])[0] == 2


def test_config_layering(tmp_path, monkeypatch):
    monkeypatch.setenv("UNICIRCLE_PRECISION_BITS", "128")
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"samples": 4096, "precision_bits": 192}))
    code, text = run(["special", "euler", "--n", "4", "--config", str(cfg)])
    doc = json.loads(text)
    assert doc["precision_bits"] == 192 and doc["samples"] == 4096
    code, text = run(["special", "euler", "--n", "4", "--config", str(cfg), "--precision", "160"])
    assert json.loads(text)["precision_bits"] == 160
    code, text = run(["special", "euler", "--n", "4"])
    assert json.loads(text)["precision_bits"] == 128


def test_bad_config_key(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"bogus": 1}')
    assert run(["special", "euler", "--n", "2", "--config", str(cfg)])[0] == 2


def test_run_config_invariants():
    with pytest.raises(UsageError):
        RunConfig(parallelism=0)
    with pytest.raises(UsageError):
        RunConfig(samples=10)
    assert RunConfig().tol == 1e-20


def test_k_range_parser():
    assert parse_k_range("2..4") == [2, 3, 4]
    assert parse_k_range("7") == [7]
    assert parse_k_range("2,5") == [2, 5]
