import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from meshalg.cli import EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, EXIT_UNSUPPORTED, main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        rc = main(list(argv))
    return rc, out.getvalue(), err.getvalue()


def test_classify_json():
    rc, out, _ = run_cli(
        "classify", "--family", "E", "--rank", "7", "--m", "4", "--t", "1", "--char", "0"
    )
    assert rc == EXIT_OK
    data = json.loads(out)
    assert data["schema"] == 1
    assert data["symmetric"] is True
    assert data["period"] == 12


def test_classify_tsv_has_stable_columns():
    rc, out, _ = run_cli(
        "classify", "--family", "A", "--rank", "3", "--m", "1", "--t", "1", "--format", "tsv"
    )
    assert rc == EXIT_OK
    header, row = out.strip().splitlines()
    assert header.split("\t")[0] == "family"
    assert row.split("\t")[:4] == ["A", "3", "1", "1"]


def test_exit_codes():
    rc, _, err = run_cli("classify", "--family", "A", "--rank", "1", "--m", "1", "--t", "1")
    assert rc == EXIT_UNSUPPORTED and "A1" in err
    rc, _, _ = run_cli("classify", "--family", "D", "--rank", "3", "--m", "1", "--t", "1")
    assert rc == EXIT_INVALID
    rc, _, _ = run_cli("classify", "--family", "E", "--rank", "7", "--m", "1", "--t", "2")
    assert rc == EXIT_INVALID


def test_verify_ok_and_deterministic_payload():
    args = ("verify", "--family", "A", "--rank", "3", "--m", "1", "--t", "1")
    rc1, out1, _ = run_cli(*args)
    rc2, out2, _ = run_cli(*args)
    assert rc1 == rc2 == EXIT_OK
    d1, d2 = json.loads(out1), json.loads(out2)
    assert d1["all_match"] and d2["all_match"]
    d1.pop("timing")
    d2.pop("timing")
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)
    # round-trip reproduces bytes
    assert json.loads(json.dumps(d1)) == d1


def test_verify_anchor_values():
    rc, out, _ = run_cli("verify", "--family", "A", "--rank", "2", "--m", "2", "--t", "1")
    assert rc == EXIT_OK
    data = json.loads(out)
    period = next(c for c in data["checks"] if c["check"] == "period")
    assert period["oracle"] == 4 and period["match"]
    rc, out, _ = run_cli("verify", "--family", "D", "--rank", "4", "--m", "2", "--t", "3")
    data = json.loads(out)
    assert rc == EXIT_OK
    period = next(c for c in data["checks"] if c["check"] == "period")
    assert period["oracle"] == 6


def test_table_tsv_and_json():
    rc, out, _ = run_cli(
        "table", "--family", "A", "--rank", "3-6", "--m", "1-6", "--t", "1,2", "--format", "tsv"
    )
    assert rc == EXIT_OK
    lines = [l for l in out.strip().splitlines() if not l.startswith("#")]
    assert len(lines) - 1 >= 40  # 4 ranks x 6 m x 2 t
    rc, out_json, _ = run_cli(
        "table", "--family", "A", "--rank", "3-6", "--m", "1-6", "--t", "1,2"
    )
    data = json.loads(out_json)
    assert data["schema"] == 1
    assert len(data["rows"]) == len(lines) - 1
    # deterministic bytes
    rc2, out_json2, _ = run_cli(
        "table", "--family", "A", "--rank", "3-6", "--m", "1-6", "--t", "1,2"
    )
    assert out_json == out_json2


def test_table_row_examples():
    rc, out, _ = run_cli("table", "--family", "E", "--rank", "6", "--m", "1", "--t", "2")
    data = json.loads(out)
    row = data["rows"][0]
    # gcd(2m, m + 6) = gcd(2, 7) = 1 -> stably CY
    assert row["stably_calabi_yau"] is True
    rc, out, _ = run_cli("table", "--family", "D", "--rank", "4", "--m", "1-5", "--t", "3")
    data = json.loads(out)
    assert all(not r["stably_calabi_yau"] for r in data["rows"])
    assert len(data["rows"]) == 5


def test_table_flags_invalid_rows():
    rc, out, _ = run_cli("table", "--family", "A", "--rank", "1-2", "--m", "1", "--t", "1")
    data = json.loads(out)
    assert len(data["rows"]) == 1  # A2 survives
    assert len(data["skipped"]) == 1  # A1 flagged, never dropped silently
    assert data["skipped"][0]["rank"] == 1


def test_export_structure():
    rc, out, _ = run_cli("export", "--family", "A", "--rank", "3", "--m", "1", "--t", "1")
    assert rc == EXIT_OK
    data = json.loads(out)
    assert data["dimension"] == 10
    assert all(len(t) == 4 and isinstance(t[3], str) for t in data["structure_constants"])


def test_verify_mismatch_exit_code(monkeypatch):
    import meshalg.homlab as homlab

    def fake_verify(*args, **kwargs):
        return {
            "schema": 1,
            "checks": [{"check": "period", "formula": 6, "oracle": 9, "match": False}],
            "all_match": False,
            "timing": {"seconds": 0.0},
        }

    monkeypatch.setattr(homlab, "verify_instance", fake_verify)
    rc, out, err = run_cli("verify", "--family", "A", "--rank", "3", "--m", "1", "--t", "1")
    assert rc == EXIT_MISMATCH
    assert "period" in err


def test_verify_window_check():
    rc, out, _ = run_cli(
        "verify", "--family", "A", "--rank", "4", "--m", "1", "--t", "1", "--window", "10"
    )
    assert rc == EXIT_OK
    data = json.loads(out)
    names = [c["check"] for c in data["checks"]]
    assert "nakayama_permutation" in names
