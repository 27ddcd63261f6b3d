from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from homlp.cache import CacheAuditError, InstanceKey, ResultCache
from homlp.cli import interval_rows, main


def run(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv: str) -> tuple[int, dict]:
    code, out = run(capsys, *argv)
    return code, json.loads(out)


# ---------------------------------------------------------------------------
# s


@pytest.mark.parametrize("N, s", [("C(5)", "4/5"), ("K(11/4)", "17/22"), ("K(2)", "1")])
def test_s_command(capsys, N, s):
    code, rec = run_json(capsys, "s", "--M", "K(2)", "--N", N)
    assert code == 0
    assert rec["s"] == s and rec["schema"] == "homlp/1"
    assert {"M", "N", "omega", "binding", "method", "elapsed_ms"} <= set(rec)


@pytest.mark.parametrize("method", ["exhaustive", "congen", "generic"])
def test_s_methods_agree(capsys, method):
    code, rec = run_json(capsys, "s", "--M", "K(2)", "--N", "K(8/3)", "--method", method, "--no-cache")
    assert code == 0 and rec["s"] == "4/5"


def test_parse_error_exit_code(capsys):
    code, rec = run_json(capsys, "s", "--M", "K(2)", "--N", "K(11/4")
    assert code == 2 and rec["error"] == "parse"


def test_domain_error_exit_code(capsys):
    code, rec = run_json(capsys, "s", "--M", "K(2)", "--N", "K(8/2)")
    assert code == 2 and rec["error"] == "domain"


def test_budget_exit_code(capsys):
    code, rec = run_json(capsys, "s", "--M", "C(5)", "--N", "K(11/4)", "--method", "congen", "--budget", "10", "--no-cache")
    assert code == 3 and rec["error"] == "budget" and rec["budget"] == 10


def test_budget_flag_beats_environment(capsys, monkeypatch):
    monkeypatch.setenv("HOMLP_BUDGET", "10")
    code, _ = run_json(capsys, "s", "--M", "K(2)", "--N", "K(11/4)", "--method", "congen", "--no-cache")
    assert code == 3
    code, rec = run_json(capsys, "s", "--M", "K(2)", "--N", "K(11/4)", "--method", "congen", "--no-cache", "--budget", "1e7")
    assert code == 0 and rec["s"] == "17/22"


# ---------------------------------------------------------------------------
# chi


@pytest.mark.parametrize("G, chi", [("Q(3/2)", "3/2"), ("C(5)", "5/4"), ("K(2)", "1")])
def test_chi_command(capsys, G, chi):
    code, rec = run_json(capsys, "chi", "--H", "K(2)", "--G", G)
    assert code == 0 and rec["chi"] == chi


def test_chi_cross_check(capsys):
    code, rec = run_json(capsys, "chi", "--H", "K(2)", "--G", "C(7)", "--method", "s", "cover", "hyper")
    assert code == 0 and rec["agree"]
    assert rec["methods"] == {"s": "7/6", "cover": "7/6", "hyper": "7/6"}


def test_chi_with_edgeless_target_is_infinite(capsys):
    code, rec = run_json(capsys, "chi", "--H", '{"n": 2, "edges": []}', "--G", "K(3)", "--method", "s", "cover", "hyper")
    assert code == 0 and rec["chi"] == "inf" and rec["agree"]


# ---------------------------------------------------------------------------
# intervals, refute, verify


def test_interval_table_csv(capsys):
    code, out = run(capsys, "intervals", "--k-max", "4", "--format", "csv")
    assert code == 0
    assert out == "r_low,r_high,s_num,s_den\n9/4,16/7,8,9\n7/3,12/5,6,7\n5/2,8/3,4,5\n"


def test_interval_table_json_with_endpoint_check(capsys):
    code, rec = run_json(capsys, "intervals", "--k-max", "3", "--check")
    assert code == 0
    rows = rec["intervals"]
    assert [(r["r_low"], r["r_high"], r["s"]) for r in rows] == [("7/3", "12/5", "6/7"), ("5/2", "8/3", "4/5")]
    assert all(r["s_at_low"] == r["s_at_high"] == r["s"] for r in rows)


def test_interval_rows_domain():
    from homlp.errors import DomainError

    with pytest.raises(DomainError):
        interval_rows(1)


def test_refute_command(capsys):
    code, rec = run_json(capsys, "refute", "--G", "K(11/4)")
    assert code == 0 and rec["conclusion"] == "refuted" and rec["parity"] == "even"


def test_verify_core_report(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, _ = run(capsys, "verify", "--suite", "core", "--output", str(out), "--no-timings")
    rec = json.loads(out.read_text())
    assert code == 0 and rec["ok"] and rec["unexpected"] == []
    claims = [f["claim"] for f in rec["findings"]]
    assert claims == sorted(claims) and len(claims) == len(set(claims))
    assert all("elapsed_ms" not in f for f in rec["findings"])
    # a second run gives the same bytes
    out2 = tmp_path / "report2.json"
    run(capsys, "verify", "--suite", "core", "--output", str(out2), "--no-timings")
    assert out.read_bytes() == out2.read_bytes()


# ---------------------------------------------------------------------------
# cache


def test_cache_hit_is_byte_identical(capsys, tmp_path):
    args = ("s", "--M", "K(2)", "--N", "K(11/4)", "--cache-dir", str(tmp_path), "--audit-rate", "0")
    _, first = run(capsys, *args)
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    _, second = run(capsys, *args)
    assert first == second


def test_cache_key_depends_on_method(capsys, tmp_path):
    run(capsys, "s", "--M", "K(2)", "--N", "C(5)", "--cache-dir", str(tmp_path))
    run(capsys, "s", "--M", "K(2)", "--N", "C(5)", "--method", "congen", "--cache-dir", str(tmp_path))
    assert len(list(tmp_path.glob("*.json"))) == 2


def test_no_cache_writes_nothing(capsys, tmp_path):
    run(capsys, "s", "--M", "K(2)", "--N", "C(5)", "--cache-dir", str(tmp_path), "--no-cache")
    assert not list(tmp_path.iterdir())


def test_audit_catches_a_tampered_record(capsys, tmp_path):
    args = ("s", "--M", "K(2)", "--N", "C(5)", "--cache-dir", str(tmp_path))
    run(capsys, *args)
    (path,) = tmp_path.glob("*.json")
    record = json.loads(path.read_text())
    record["result"]["s"] = "5/6"
    path.write_text(json.dumps(record))
    code, rec = run_json(capsys, *args, "--audit-rate", "1")
    assert code == 1 and rec["error"] == "internal"
    # without auditing the stale record is served as is
    code, rec = run_json(capsys, *args, "--audit-rate", "0")
    assert code == 0 and rec["s"] == "5/6"


def test_cache_object(tmp_path):
    cache = ResultCache(tmp_path, audit_rate=1.0)
    key = InstanceKey("op", {"a": 1})
    assert cache.fetch(key, lambda: {"v": 1, "elapsed_ms": 5}) == ({"v": 1, "elapsed_ms": 5}, False)
    # elapsed time may differ between runs; other fields may not
    assert cache.fetch(key, lambda: {"v": 1, "elapsed_ms": 9}) == ({"v": 1, "elapsed_ms": 5}, True)
    with pytest.raises(CacheAuditError):
        cache.fetch(key, lambda: {"v": 2, "elapsed_ms": 5})
    assert cache.hits == 2 and cache.audits == 2
    with pytest.raises(ValueError):
        ResultCache(tmp_path, audit_rate=2)


def test_cache_ignores_a_record_for_another_key(tmp_path):
    cache = ResultCache(tmp_path)
    key = InstanceKey("op", {"a": 1})
    cache.put(key, {"v": 1})
    path = next(Path(tmp_path).glob("*.json"))
    rec = json.loads(path.read_text())
    rec["key"] = "something else"
    path.write_text(json.dumps(rec))
    assert cache.get(key) is None


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "homlp", "s", "--M", "K(2)", "--N", "C(5)", "--no-cache"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["s"] == "4/5"
