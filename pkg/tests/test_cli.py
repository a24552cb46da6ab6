"""Command-line interface: outputs, exit codes, determinism."""

import json
import math

import pytest

from hsemsum.cli import main, run_sweep, sweep_max_errors


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# sum

def test_sum_default_json(capsys):
    code, out, _ = run_cli(capsys, "sum")
    assert code == 0
    payload = json.loads(out)
    for key in ("hsem_value", "oracle_value", "abs_error", "operator_term",
                "hadamard_term", "error_bound", "elapsed_s"):
        assert key in payload
    assert payload["abs_error"] == abs(payload["hsem_value"]
                                       - payload["oracle_value"])
    assert payload["abs_error"] < 1e-4


def test_sum_csv_format(capsys):
    code, out, _ = run_cli(capsys, "sum", "--format", "csv", "--lambda", "3")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header.split(",")[0] == "hsem_value"
    assert len(header.split(",")) == len(row.split(","))


def test_sum_at_pole_exits_3(capsys):
    code, _, err = run_cli(capsys, "sum", "--nu", "2")
    assert code == 3
    assert "pole" in err.lower()


def test_bad_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sum", "--x", "not-a-point"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# convergence

def test_convergence_csv_and_determinism(tmp_path, capsys):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    args = ["convergence", "--lambdas", "2,4", "--ell-max", "1",
            "--grid-extent", "2"]
    code, table, _ = run_cli(capsys, *args, "--out", str(out1))
    assert code == 0
    code, _, _ = run_cli(capsys, *args, "--out", str(out2))
    assert code == 0
    text = out1.read_text()
    assert text == out2.read_text()  # bit-identical reruns
    lines = text.strip().splitlines()
    assert lines[0] == "nu,lambda,ell,x1,x2,hsem,oracle,abs_error"
    # 2 ells x 2 lambdas x 5x5 grid
    assert len(lines) == 1 + 2 * 2 * 25
    for row in lines[1:3]:
        fields = row.split(",")
        assert abs(float(fields[5]) - float(fields[6])) == float(fields[7])
    assert table.splitlines()[0] == "ell,slope,target,flag"


def test_convergence_single_lambda_has_empty_slope(tmp_path, capsys):
    code, table, _ = run_cli(capsys, "convergence", "--lambdas", "4",
                             "--ell-max", "0", "--grid-extent", "1",
                             "--out", str(tmp_path / "c.csv"))
    assert code == 0
    row = table.strip().splitlines()[1]
    assert row.startswith("0,,")  # no slope from a single point


def test_convergence_unwritable_path_exits_4(tmp_path, capsys):
    code, _, err = run_cli(capsys, "convergence", "--lambdas", "2",
                           "--ell-max", "0", "--grid-extent", "0",
                           "--out", str(tmp_path))
    assert code == 4
    assert "I/O" in err


def test_run_sweep_floor_flag_logic():
    records, slopes = run_sweep(2.001, [8.0, 10.0], 0, 1)
    max_err = sweep_max_errors(records)
    assert set(max_err) == {(0, 8.0), (0, 10.0)}
    assert slopes[0] is not None and slopes[0] < 0.0


# ---------------------------------------------------------------------------
# epstein

def test_epstein_values_and_symmetry_residual(capsys):
    code, out, _ = run_cli(capsys, "epstein", "--nu", "5", "--n", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["z0"] == pytest.approx(5.0903, abs=1e-3)
    assert abs(payload["c1_symmetry_residual"]) < 1e-11 * abs(payload["z0"])
    assert [m["n"] for m in payload["c"]] == [1, 2]


def test_epstein_csv(capsys):
    code, out, _ = run_cli(capsys, "epstein", "--nu", "4", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,value,error_bound"
    assert float(lines[1].split(",")[1]) == pytest.approx(6.0268, abs=1e-3)


def test_epstein_pole_mentions_residue(capsys):
    code, _, err = run_cli(capsys, "epstein", "--nu", "2")
    assert code == 3
    assert "residue" in err


# ---------------------------------------------------------------------------
# bernoulli

def test_bernoulli_grid(tmp_path, capsys):
    out = tmp_path / "grid.csv"
    code, _, _ = run_cli(capsys, "bernoulli", "--ell", "1",
                         "--resolution", "3", "--out", str(out))
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "y1,y2,value"
    assert len(lines) == 1 + 9
    values = {}
    for row in lines[1:]:
        y1, y2, v = row.split(",")
        values[(float(y1), float(y2))] = float(v)
    # periodicity plus evenness: opposite corners agree
    assert values[(0.5, 0.5)] == pytest.approx(values[(-0.5, -0.5)], abs=1e-13)
    # the lattice point is the signed extremum for ell = 1 ((-1)^{ell+1} > 0)
    assert values[(0.0, 0.0)] == max(values.values())
    assert values[(0.0, 0.0)] > 0.0


def test_bernoulli_stdout_and_order_guard(capsys):
    code, out, _ = run_cli(capsys, "bernoulli", "--ell", "2",
                           "--resolution", "2")
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 4
    code, _, err = run_cli(capsys, "bernoulli", "--ell", "0")
    assert code == 2
    assert "ell" in err
