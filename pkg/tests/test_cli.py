import json
import subprocess
import sys
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zerotransfer import tables
from zerotransfer.cli import _n_list, _parse_family, main
from zerotransfer.arithmetic import H0, ID, SIGMA, sigma
from zerotransfer.tables import Config, build, round_half_away, to_csv, to_json


# -- rendering ---------------------------------------------------------------------


@pytest.mark.parametrize("value,decimals,want", [
    (Fraction(5, 2), 0, "3"),
    (Fraction(-5, 2), 0, "-3"),
    (Fraction(1, 8), 2, "0.13"),
    (Fraction(-1, 8), 2, "-0.13"),
    (-0.00000004, 6, "0.000000"),
    (0.0, 4, "0.0000"),
    (-3.41421356, 4, "-3.4142"),
    (1.0, 9, "1.000000000"),
])
def test_round_half_away(value, decimals, want):
    assert round_half_away(value, decimals) == want


@given(st.fractions(min_value=-10**6, max_value=10**6), st.integers(0, 8))
def test_rounding_is_within_half_an_ulp(q, decimals):
    s = round_half_away(q, decimals)
    assert abs(Fraction(Decimal(s)) - q) <= Fraction(1, 2 * 10**decimals)
    assert not s.startswith("-") or Fraction(Decimal(s)) != 0


def test_csv_and_json_carry_the_same_rows():
    res = build("alphabeta", Config(), [2, 3, 4])
    text = to_csv(res)
    assert text.splitlines()[0] == "n,alpha,beta,alpha_ratio,beta_ratio"
    assert "\r" not in text and text.endswith("\n")
    assert text.splitlines()[2] == "3,-3.0000,-1.0000,0.7887,0.6340"
    doc = json.loads(to_json(res))
    assert doc["columns"] == res["columns"]
    assert doc["rows"][1] == [3, -3.0, -1.0, 0.7887, 0.634]


def test_decimals_override():
    res = build("alphabeta", Config(decimals=2), [4])
    assert res["rows"] == [["4", "-3.41", "-0.59", "0.76", "0.53"]]


def test_default_and_extended_ranges():
    spec = tables.TABLES["alphabeta"]
    assert spec.n_range() == tuple(range(2, 11)) + (20, 100)
    assert spec.n_range(True)[-2:] == (120, 200)
    with pytest.raises(tables.ExtendedRangeError):
        build("alphabeta", Config(), [120])
    with pytest.raises(ValueError):
        build("alphabeta", Config(), [1])
    with pytest.raises(KeyError):
        build("nope", Config())


def test_workers_do_not_change_output():
    one = build("szego", Config(workers=1), [2, 5, 9])
    two = build("szego", Config(workers=2), [2, 5, 9])
    assert one == two


def test_szego_parameters_reach_the_table():
    base = build("szego", Config(), [5])["rows"][0]
    moved = build("szego", Config(szego_exponent=-0.5), [5])["rows"][0]
    assert base[:3] == moved[:3] and base[3] != moved[3]


def test_figure_rows_sorted_and_complete():
    rows = build("figAA", Config(), [4])["rows"]
    q = [r for r in rows if r[0] == "Q:parity"]
    assert len(q) == 3 and [r[2] for r in q] == ["0", "1", "2"]
    keys = [(Decimal(r[3]), Decimal(r[4])) for r in q]
    assert keys == sorted(keys)


# -- argument handling ---------------------------------------------------------------


def test_n_list_ranges():
    assert _n_list(["2-4", "7", "9,11"]) == [2, 3, 4, 7, 9, 11]
    assert _n_list(None) is None


def test_parse_family():
    assert _parse_family("Q:sigma") == (SIGMA, H0)
    assert _parse_family("P:sigma") == (SIGMA, ID)
    assert _parse_family("P:sigma2:sigma") == (sigma(2), SIGMA)


@pytest.mark.parametrize("argv", [
    ["zeros", "X:sigma", "3"],
    ["zeros", "Q:zeta", "3"],
    ["zeros", "Q:sigma", "0"],
    ["table", "alphabeta", "--n", "150"],
    ["table", "unknown"],
    ["verify", "nothing"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2


# -- commands ------------------------------------------------------------------------


def test_table_to_file_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["table", "lehmerQ", "--out", str(a)]) == 0
    assert main(["table", "lehmerQ", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == "n,value" and lines[20] == "20,122" and len(lines) == 21


def test_json_format(tmp_path):
    out = tmp_path / "t.json"
    assert main(["table", "betraege", "--n", "2", "3", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["rows"] == [[2, 1.0], [3, 1.732050808]]


def test_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    out = tmp_path / "t.csv"
    cfg.write_text(json.dumps({"decimals": 3, "n": [4], "out": str(out)}))
    assert main(["table", "alphabeta", "--config", str(cfg)]) == 0
    assert out.read_text().splitlines()[1] == "4,-3.414,-0.586,0.757,0.533"
    cfg.write_text(json.dumps({"colour": "blue"}))
    assert main(["table", "alphabeta", "--config", str(cfg)]) == 2


def test_cache_command_and_warm_runs(tmp_path, monkeypatch):
    cache = tmp_path / "cache"
    assert main(["cache", "Q:sigma", "12", "--out", str(cache)]) == 0
    assert any(cache.iterdir())
    monkeypatch.setenv(tables.CACHE_ENV, str(cache))
    cold, warm = tmp_path / "cold.csv", tmp_path / "warm.csv"
    assert main(["table", "observation", "--n", "2", "3", "5", "--out", str(cold)]) == 0
    assert main(["table", "observation", "--n", "2", "3", "5", "--out", str(warm)]) == 0
    monkeypatch.delenv(tables.CACHE_ENV)
    plain = tmp_path / "plain.csv"
    assert main(["table", "observation", "--n", "2", "3", "5", "--out", str(plain)]) == 0
    assert cold.read_bytes() == warm.read_bytes() == plain.read_bytes()
    assert main(["cache", "Q:sigma", "3"]) == 2


def test_zeros_report(tmp_path):
    out = tmp_path / "z.json"
    assert main(["zeros", "Q:sigma", "5", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["family"] == "Q:sigma" and data["n"] == 5
    assert abs(data["max_complex_magnitude"] - 7.418833) < 1e-6


def test_verify_lemma_jsonl(tmp_path):
    out = tmp_path / "lemma.jsonl"
    assert main(["verify", "lemma", "--count", "25", "--seed", "4", "--out", str(out)]) == 0
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(records) == 25
    for r in records:
        assert {"g", "h", "n", "x", "y", "residual", "ok", "seed"} <= set(r)
        assert r["ok"] and r["residual"] == "0/1" and r["seed"] == 4


def test_verify_lehmer(tmp_path):
    out = tmp_path / "l.jsonl"
    assert main(["verify", "lehmer", "--n-max", "30", "--out", str(out)]) == 0
    assert all(json.loads(line)["ok"] for line in out.read_text().splitlines())


def test_module_entry_point(tmp_path):
    out = tmp_path / "a.csv"
    proc = subprocess.run([sys.executable, "-m", "zerotransfer", "table", "alphabeta", "--n", "2-4",
                           "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.read_text().splitlines()[3] == "4,-3.4142,-0.5858,0.7575,0.5325"
    bad = subprocess.run([sys.executable, "-m", "zerotransfer", "table", "alphabeta", "--n", "200"],
                         capture_output=True, text=True)
    assert bad.returncode == 2 and "--extended" in bad.stderr
