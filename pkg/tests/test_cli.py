import json
import subprocess
import sys

import pytest

from gf2cdiff.cli import run_cli
from gf2cdiff.records import parse_report


@pytest.fixture
def cache_dir(tmp_path):
    return str(tmp_path / "cache")


def run(capsysbinary, *argv):
    code = run_cli(list(argv))
    out = capsysbinary.readouterr()
    return code, out.out, out.err


def test_verify_apcn_n2(capsysbinary, cache_dir):
    code, out, _ = run(capsysbinary, "verify", "apcn", "--n", "2", "--cache-dir", cache_dir)
    assert code == 0
    rep = parse_report(out)
    assert rep.prop_id == "APCN" and rep.passed and rep.cases_checked == 16


def test_spectrum_single_c(capsysbinary, cache_dir):
    code, out, _ = run(capsysbinary, "spectrum", "--n", "1", "--c", "0x8",
                       "--cache-dir", cache_dir)
    assert code == 0
    assert parse_report(out).omega == (6, 4, 6)


def test_spectrum_csv_row(capsysbinary, cache_dir):
    code, out, _ = run(capsysbinary, "spectrum", "--n", "1", "--c", "0x8",
                       "--format", "csv", "--no-cache")
    row = out.decode().splitlines()[1].split(",")
    assert row[:8] == ["0x13", "1", "13", "0x8", "2", "6", "4", "6"]
    assert row[8].isdigit()


def test_verify_prop5_symbolic(capsysbinary, cache_dir):
    code, out, _ = run(capsysbinary, "verify", "prop", "--id", "5", "--n", "1",
                       "--mode", "symbolic", "--cache-dir", cache_dir)
    assert code == 0
    rep = parse_report(out)
    assert rep.mode == "symbolic" and rep.cases_total == 4 * 16


def test_verify_prop1_emits_both_parts(capsysbinary, cache_dir):
    code, out, _ = run(capsysbinary, "verify", "prop", "--id", "1", "--n", "1",
                       "--cache-dir", cache_dir)
    assert code == 0
    assert [r.prop_id for r in parse_report(out)] == ["P1a", "P1b"]


def test_prop4_literal_exits_one(capsysbinary, cache_dir):
    code, out, _ = run(capsysbinary, "verify", "prop", "--id", "4", "--n", "1",
                       "--cache-dir", cache_dir)
    assert code == 1
    assert len(parse_report(out).counterexamples) == 8
    code, _, _ = run(capsysbinary, "verify", "prop", "--id", "4", "--n", "1",
                     "--domain", "trace_zero", "--cache-dir", cache_dir)
    assert code == 0


def test_verify_prop_single_c(capsysbinary, cache_dir):
    code, out, _ = run(capsysbinary, "verify", "prop", "--id", "alpha-quadratic", "--n", "2",
                       "--c", "0x26", "--no-cache")
    assert code == 0
    assert parse_report(out).c_hex == "0x26"
    code, _, err = run(capsysbinary, "verify", "prop", "--id", "2", "--n", "1",
                       "--c", "0x2", "--no-cache")
    assert code == 2 and b"unit circle" in err


def test_congruence_range(capsysbinary):
    code, out, _ = run(capsysbinary, "verify", "congruence", "--n-max", "16", "--no-cache")
    assert code == 0
    assert len(parse_report(out)) == 16


def test_field_info(capsysbinary):
    code, out, _ = run(capsysbinary, "field", "info", "--m", "4")
    info = json.loads(out)
    assert info == {"degree": 4, "generator": "0x2", "modulus": "0x13",
                    "order_factors": [3, 5], "size": 16}
    code, out, _ = run(capsysbinary, "field", "info", "--modulus", "0x1f", "--format", "table")
    assert code == 0 and b"0x1f" in out


def test_catalog(capsysbinary, cache_dir):
    code, out, _ = run(capsysbinary, "catalog", "--family", "tower", "--m", "8",
                       "--cache-dir", cache_dir)
    res = json.loads(out)
    assert code == 0 and len(res["apcn_c"]) == 16 and res["report"]["prop_id"] == "CATALOG"
    code, out, _ = run(capsysbinary, "catalog", "--family", "inverse", "--m", "4",
                       "--c-set", "all", "--format", "csv", "--no-cache")
    assert code == 0 and len(out.decode().splitlines()) == 15


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["verify", "apcn"], ["verify", "apcn", "--n", "9"],
    ["spectrum", "--n", "1", "--c", "zz"], ["catalog", "--family", "gold", "--m", "8"],
    ["field", "info", "--m", "4", "--modulus", "0x15"],
    ["spectrum", "--m", "5"], ["verify", "apcn", "--n", "1", "--threads", "0"],
    ["verify", "prop", "--id", "8", "--n", "1"],
])
def test_usage_errors_exit_two(capsysbinary, argv):
    code, _, err = run(capsysbinary, *argv)
    assert code == 2
    assert err


def test_help_exits_zero(capsysbinary):
    code, out, _ = run(capsysbinary, "--help")
    assert code == 0 and b"verify" in out


def test_output_file(tmp_path, capsysbinary):
    path = tmp_path / "r.json"
    code, out, _ = run(capsysbinary, "verify", "apcn", "--n", "1", "--no-cache",
                       "--output", str(path))
    assert code == 0 and out == b""
    assert parse_report(path.read_bytes()).passed


def test_cache_hit_is_byte_identical(capsysbinary, cache_dir):
    argv = ["spectrum", "--n", "2", "--cache-dir", cache_dir]
    _, first, _ = run(capsysbinary, *argv)
    _, second, _ = run(capsysbinary, *argv)
    assert first == second
    det = argv + ["--deterministic"]
    _, cached, _ = run(capsysbinary, *det)
    _, fresh, _ = run(capsysbinary, "spectrum", "--n", "2", "--no-cache", "--deterministic")
    assert cached == fresh
    _, cached, _ = run(capsysbinary, "verify", "prop", "--id", "6", "--n", "2",
                       "--cache-dir", cache_dir, "--deterministic")
    _, again, _ = run(capsysbinary, "verify", "prop", "--id", "6", "--n", "2",
                      "--cache-dir", cache_dir, "--deterministic")
    _, fresh, _ = run(capsysbinary, "verify", "prop", "--id", "6", "--n", "2",
                      "--no-cache", "--deterministic")
    assert cached == again == fresh


def test_cache_is_incremental_per_c(capsysbinary, cache_dir):
    from pathlib import Path
    run(capsysbinary, "spectrum", "--n", "2", "--c", "0x26", "--cache-dir", cache_dir)
    assert len(list(Path(cache_dir).rglob("*.json"))) == 1
    run(capsysbinary, "spectrum", "--n", "2", "--cache-dir", cache_dir)
    assert len(list(Path(cache_dir).rglob("*.json"))) == 16


def test_corrupt_cache_entry_is_a_miss(capsysbinary, cache_dir):
    from pathlib import Path
    argv = ["spectrum", "--n", "1", "--c", "0x8", "--cache-dir", cache_dir, "--deterministic"]
    _, first, _ = run(capsysbinary, *argv)
    for p in Path(cache_dir).rglob("*.json"):
        p.write_text("{not json")
    _, second, _ = run(capsysbinary, *argv)
    assert first == second


def test_output_independent_of_threads(capsysbinary, monkeypatch):
    base = ["spectrum", "--n", "2", "--no-cache", "--deterministic"]
    _, one, _ = run(capsysbinary, *base, "--threads", "1")
    _, four, _ = run(capsysbinary, *base, "--threads", "4")
    monkeypatch.setenv("FFA_THREADS", "3")
    _, env, _ = run(capsysbinary, *base)
    assert one == four == env
    base = ["verify", "prop", "--id", "7", "--n", "2", "--no-cache", "--deterministic"]
    _, one, _ = run(capsysbinary, *base, "--threads", "1")
    _, four, _ = run(capsysbinary, *base, "--threads", "4")
    assert one == four


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "gf2cdiff", "verify", "apcn", "--n", "1",
                           "--no-cache", "--format", "table"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "APCN" in proc.stdout
