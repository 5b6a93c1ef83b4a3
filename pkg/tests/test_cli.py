import io
import json
import math
import subprocess
import sys

import pytest

from angelesco.cli import EXIT_FAIL, EXIT_OK, EXIT_SOLVER, EXIT_USAGE, main, parse_csv


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def zeros_of(text):
    return [float(line) for line in text.splitlines() if line and not line.startswith("#")]


def test_zeros_closed_form():
    code, text = run("zeros", "--family", "ja", "--a", "-1", "--alpha", "0", "--beta", "0", "--gamma", "0", "--n", "1")
    assert code == EXIT_OK
    assert zeros_of(text) == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)], abs=1e-10)
    assert "method=cascade" in text and "orthogonality_residual" in text


def test_zeros_methods_agree():
    _, fast = run("zeros", "--n", "3", "--alpha", "0.5", "--gamma", "2", "--method", "cascade")
    _, slow = run("zeros", "--n", "3", "--alpha", "0.5", "--gamma", "2", "--method", "gram")
    assert zeros_of(fast) == pytest.approx(zeros_of(slow), abs=1e-10)


def test_zeros_json_and_off_diagonal():
    code, text = run("zeros", "--n", "2", "--m", "1", "--method", "gram", "--format", "json")
    record = json.loads(text)
    assert code == EXIT_OK and record["m"] == 1
    assert len(record["zeros"]["negative"]) == 2 and len(record["zeros"]["positive"]) == 1
    assert record["orthogonality_residual"] < 1e-10


def test_zeros_other_families():
    code, text = run("zeros", "--family", "lh", "--beta", "1", "--n", "1")
    assert code == EXIT_OK and zeros_of(text) == pytest.approx([-1.0, 1.0], abs=1e-10)
    code, text = run("zeros", "--family", "jacobi-laguerre", "--n", "1")
    golden = (1 + math.sqrt(5)) / 2
    assert code == EXIT_OK and zeros_of(text) == pytest.approx([1 - golden, golden], abs=1e-10)


@pytest.mark.parametrize(
    "argv",
    [
        ("zeros", "--alpha", "-2"),
        ("zeros", "--a", "0.5"),
        ("zeros", "--n", "2", "--m", "1", "--method", "cascade"),
        ("zeros", "--family", "xx"),
        ("zeros", "--bogus"),
        ("sweep", "--param", "alpha", "--from", "2", "--to", "1"),
        ("sweep", "--param", "alpha", "--steps", "1"),
        ("sweep", "--param", "gamma", "--family", "lh"),
        ("sweep", "--param", "alpha", "--from", "-1.5", "--to", "0"),
        ("verify",),
        ("verify", "--suite", "nope"),
        ("verify", "--suite", "monotone-beta-symmetric", "--a=-0.5"),
        ("limits", "--family", "ja"),
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == EXIT_USAGE
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] == "usage" and err["message"]


def test_solver_failure_exit_3(monkeypatch, capsys):
    import angelesco.cli as cli
    from angelesco.cascade import CascadeError

    def broken(*args, **kwargs):
        raise CascadeError("level 0 of 1: simulated")

    monkeypatch.setattr(cli, "diagonal_zeros", broken)
    code, _ = run("zeros", "--n", "1")
    assert code == EXIT_SOLVER
    assert json.loads(capsys.readouterr().err)["error"] == "solver"


def test_sweep_csv_shape_and_summary(capsys):
    code, text = run("sweep", "--param", "alpha", "--from", "0", "--to", "3", "--steps", "31", "--n", "2")
    assert code == EXIT_OK
    lines = text.split("\n")
    assert lines[0] == "param,z1,z2,z3,z4" and len(lines) == 33 and lines[-1] == ""
    assert "\r" not in text
    summary = capsys.readouterr().err
    assert summary.count("strictly-increasing") == 4


@pytest.mark.parametrize(
    "extra, expected",
    [
        (("--param", "gamma"), ["strictly-decreasing"] * 4),
        (("--param", "beta", "--alpha", "1", "--gamma", "1"), ["strictly-decreasing"] * 2 + ["strictly-increasing"] * 2),
    ],
)
def test_sweep_expected_directions(extra, expected, capsys):
    code, _ = run("sweep", "--n", "2", "--from", "0", "--to", "3", "--steps", "31", *extra)
    assert code == EXIT_OK
    verdicts = [line.split(": ")[1] for line in capsys.readouterr().err.splitlines()]
    assert verdicts == expected


def test_sweep_csv_json_round_trip_and_determinism():
    args = ("sweep", "--param", "gamma", "--a", "-0.5", "--from", "-0.5", "--to", "2", "--steps", "11", "--n", "3")
    _, csv1 = run(*args)
    _, csv2 = run(*args)
    assert csv1 == csv2
    _, js = run(*args, "--format", "json")
    record = json.loads(js)
    values, rows = parse_csv(csv1)
    assert values == [r["param"] for r in record["rows"]]
    assert rows == [r["zeros"] for r in record["rows"]]
    assert [m["verdict"] for m in record["monotonicity"]] == ["strictly-decreasing"] * 6


def test_sweep_other_families():
    code, text = run("sweep", "--family", "lh", "--param", "beta", "--from", "0", "--to", "1", "--steps", "3", "--n", "1")
    assert code == EXIT_OK and len(parse_csv(text)[1]) == 3
    code, text = run("sweep", "--family", "jl", "--param", "alpha", "--from", "0", "--to", "1", "--steps", "3", "--n", "1")
    assert code == EXIT_OK


def test_sweep_svg_and_out(tmp_path):
    pytest.importorskip("matplotlib")
    svg, csv = tmp_path / "z.svg", tmp_path / "z.csv"
    code, text = run("sweep", "--param", "alpha", "--steps", "5", "--n", "1", "--svg", str(svg), "--out", str(csv))
    assert code == EXIT_OK and text == ""
    assert svg.read_text().lstrip().startswith("<?xml") and "<svg" in svg.read_text()
    assert csv.read_bytes().startswith(b"param,z1,z2\n")


def test_verify_writes_report(tmp_path):
    out = tmp_path / "r.json"
    code, _ = run("verify", "--suite", "interlacing", "--n-max", "5", "--out", str(out))
    report = json.loads(out.read_text())
    assert code == EXIT_OK and report["pass"] is True
    assert set(report) >= {"suite", "grid", "cases", "pass", "elapsed_seconds"}
    case = report["cases"][0]
    assert set(case) == {"inputs", "verdict", "margin", "detail"} and case["margin"] > 0


def test_verify_overrides_and_failure_exit(monkeypatch):
    code, text = run("verify", "--suite", "monotone-alpha", "--n-max", "1", "--a=-1", "--beta=0", "--gamma=0", "--from", "0", "--to", "1", "--steps", "5")
    assert code == EXIT_OK and json.loads(text)["grid"]["steps"] == 5

    import angelesco.verification as verification

    monkeypatch.setattr(verification, "cascade_ladder", lambda *a, **k: (_ for _ in ()).throw(RuntimeError("boom")))
    code, text = run("verify", "--suite", "interlacing", "--n-max", "2", "--a=-1", "--alpha=0", "--beta=0", "--gamma=0")
    assert code == EXIT_FAIL and json.loads(text)["pass"] is False


def test_verify_expansion_diagnostic_always_exits_zero(monkeypatch):
    import angelesco.verification as verification

    monkeypatch.setattr(verification, "expansion_diagnostic", lambda *a: (_ for _ in ()).throw(RuntimeError("boom")))
    code, text = run("verify", "--suite", "expansion-diagnostic", "--n-max", "1")
    assert code == EXIT_OK and json.loads(text)["pass"] is False


def test_limits_command():
    code, text = run("limits", "--family", "lh", "--n", "1")
    record = json.loads(text)
    assert code == EXIT_OK and record["strictly_decreasing"]
    assert record["errors"][1] == pytest.approx(0.005244374842927835, rel=1e-9)
    code, text = run("limits", "--family", "jl", "--n", "1", "--scales", "50,100", "--format", "csv")
    assert code == EXIT_OK and text.startswith("scale,error\n50,")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "angelesco", "zeros", "--n", "1", "--a", "-0.5"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert zeros_of(proc.stdout) == pytest.approx([(1 - math.sqrt(7)) / 6, (1 + math.sqrt(7)) / 6], abs=1e-12)
