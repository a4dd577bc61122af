import json
import subprocess
import sys

import pytest

from residue_lab.cli import build_parser, config_from_args, main
from residue_lab.report import format_value, read_csv, render, to_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_census_range_rows(capsys):
    code, out, _ = run(capsys, "census", "--range", "3:100", "--k-max", "4", "--format", "csv")
    rows = read_csv(out)
    assert code == 0
    assert len(rows) == 24 * (2 + 4 + 8 + 16)
    assert list(rows[0]) == ["p", "k", "pattern", "exact", "t_term", "p_over_2k", "residual", "peralta_bound"]


def test_census_single_prime(capsys):
    code, out, _ = run(capsys, "census", "--p", "11", "--k-max", "2", "--format", "csv")
    row = next(r for r in read_csv(out) if r["k"] == "2" and r["pattern"] == "++")
    assert code == 0
    assert (row["p"], row["exact"], row["t_term"]) == ("11", "2", "2.06612")


def test_census_summary(capsys):
    code, out, _ = run(capsys, "census", "--range", "3:200", "--k-max", "3", "--summary", "--format", "csv")
    rows = read_csv(out)
    assert code == 0 and {r["k"] for r in rows} == {"1", "2", "3"}
    assert "max_abs_residual" in rows[0]


@pytest.mark.parametrize("argv", [
    ("census", "--p", "4", "--k-max", "2"),
    ("census", "--p", "11", "--k-max", "13"),
    ("census", "--k-max", "2"),
    ("nonresidue", "record", "--p", "9"),
    ("charsum", "burgess", "--p", "101", "--n", "10"),
    ("charsum", "burgess", "--p", "10000019", "--r", "9"),
    ("gauss", "--p", "7", "--s", "14"),
    ("verify", "--bound", "20000"),
    ("census", "--p", "7", "--workers", "0"),
    ("bogus",),
])
def test_usage_errors_exit_1(capsys, argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    assert code == 1


def test_not_prime_message(capsys):
    code, _, err = run(capsys, "census", "--p", "4", "--k-max", "2")
    assert code == 1 and "not prime" in err


def test_nonresidue_commands(capsys):
    code, out, _ = run(capsys, "nonresidue", "record", "--p", "3", "--format", "csv")
    assert code == 0 and read_csv(out) == [{"p": "3", "n_p": "2", "scale": "0.10", "c_p": "20.00"}]
    code, out, _ = run(capsys, "nonresidue", "table", "--n-max", "10", "--search-bound", "100000", "--format", "csv")
    rows = read_csv(out)
    assert code == 0
    assert [int(r["p"]) for r in rows] == [3, 7, 23, 71, 311, 479, 1559, 5711, 10559, 18191]
    assert rows[5]["scale"] == "11.23" and rows[5]["c_p"] == "1.16"
    code, out, _ = run(capsys, "nonresidue", "distribution", "--x", "100", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data[0]["count"] == 13 and data[-1]["type"] == "summary"


def test_charsum_commands(capsys):
    code, out, _ = run(capsys, "charsum", "profile", "--p", "7", "--format", "csv")
    (row,) = read_csv(out)
    assert code == 0 and row["max_abs"] == "2" and row["longest_inc_run"] == "2"
    code, out, _ = run(capsys, "charsum", "profile", "--range", "3:3000", "--format", "csv")
    assert code == 0 and len(read_csv(out)) == 429
    code, out, _ = run(capsys, "charsum", "burgess", "--p", "10000019", "--n", "100000", "--r", "2", "--format", "csv")
    assert code == 0 and read_csv(out)[0]["satisfied"] == "true"


def test_gauss_command(capsys):
    code, out, _ = run(capsys, "gauss", "--range", "5:200", "--s", "3", "--format", "csv")
    rows = read_csv(out)
    assert code == 0 and len(rows) == 44
    assert all(r["within_tol"] == "true" for r in rows)
    # s = 3 vanishes mod 3, so the twisted sum is undefined there
    code, _, err = run(capsys, "gauss", "--range", "3:200", "--s", "3")
    assert code == 1 and "nonzero" in err


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--bound", "200", "--format", "csv")
    rows = read_csv(out)
    assert code == 0 and all(r["status"] == "pass" for r in rows)
    code, out, _ = run(capsys, "verify", "--bound", "500", "--only", "gauss", "--only", "twin", "--format", "csv")
    assert code == 0 and [r["identity"] for r in read_csv(out)] == ["gauss", "twin"]


def test_verify_failure_exit_2(capsys, monkeypatch):
    from residue_lab import verify

    monkeypatch.setattr(verify, "twin_count_formula", lambda m, a, e0, e1: -1)
    code, out, err = run(capsys, "verify", "--bound", "50", "--only", "twin", "--format", "csv")
    assert code == 2 and read_csv(out)[0]["status"] == "FAIL" and "twin" in err


def test_census_violation_exit_2(capsys, monkeypatch):
    from residue_lab import census

    monkeypatch.setattr(census, "peralta_bound", lambda k, m: 0.0)
    code, _, err = run(capsys, "census", "--p", "11", "--k-max", "1", "--format", "csv")
    assert code == 2 and "envelope violated" in err


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_output_independent_of_workers(capsys, fmt):
    outs = []
    for workers in ("1", "3"):
        code, out, _ = run(capsys, "census", "--range", "3:300", "--k-max", "3", "--format", fmt,
                           "--workers", workers, "--seed", workers)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_csv_round_trip(capsys):
    _, out, _ = run(capsys, "nonresidue", "table", "--n-max", "8", "--search-bound", "10000", "--format", "csv")
    assert to_csv(read_csv(out)) == out
    _, out, _ = run(capsys, "census", "--range", "3:50", "--k-max", "2", "--format", "csv")
    assert to_csv(read_csv(out)) == out


def test_out_file(tmp_path, capsys):
    path = tmp_path / "census.csv"
    code, out, _ = run(capsys, "census", "--p", "7", "--k-max", "2", "--out", str(path))
    assert code == 0 and out == ""
    # --out without --format falls back to csv
    assert path.read_text().startswith("p,k,pattern,")


def test_format_defaults_and_env(monkeypatch):
    parser = build_parser()
    args = parser.parse_args(["census", "--p", "7"])
    assert config_from_args(args, stdout_isatty=True).fmt == "table"
    assert config_from_args(args, stdout_isatty=False).fmt == "csv"
    monkeypatch.setenv("RESIDUE_LAB_WORKERS", "3")
    assert config_from_args(args, stdout_isatty=False).workers == 3
    args = parser.parse_args(["census", "--p", "7", "--workers", "2"])
    assert config_from_args(args, stdout_isatty=False).workers == 2


def test_piped_module_invocation_defaults_to_csv():
    proc = subprocess.run([sys.executable, "-m", "residue_lab", "charsum", "profile", "--p", "7"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[0] == "p,max_abs,pv_bound,ratio,longest_inc_run,longest_dec_run"


def test_table_format(capsys):
    code, out, _ = run(capsys, "nonresidue", "record", "--p", "479", "--format", "table")
    lines = out.splitlines()
    assert code == 0 and lines[0].split() == ["p", "n_p", "scale", "c_p"]
    assert lines[2].split() == ["479", "13", "11.23", "1.16"]


def test_format_value():
    assert format_value(None) == ""
    assert format_value(True) == "true"
    assert format_value(3) == "3"
    assert format_value(2.0661157) == "2.06612"
    assert format_value(1e-12) == "1e-12"
    assert format_value(0.1033, 2) == "0.10"
    assert render([], "table") == "(no rows)\n"
    with pytest.raises(ValueError):
        render([{"a": 1}], "xml")
