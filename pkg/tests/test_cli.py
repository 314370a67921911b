import json
import math

import pytest

from boxgap.cli import EXIT_ERROR, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_OK, err
    return json.loads(out)


# ---------------------------------------------------------------------------
# eval


def test_eval_flat_profile(capsys):
    d = run_json(capsys, "eval", "--weights", "1", "--grid", "0:1:0.1")
    assert d["values"][0] == 0.0  # grid endpoint sits on the jump
    assert all(v == 1.0 for v in d["values"][1:-1])
    assert len(d["grid"]) == 11


def test_eval_equal3_center(capsys):
    d = run_json(capsys, "eval", "--equal", "3", "--at", "center")
    assert d["values"][0] == pytest.approx(1.2990381, abs=5e-8)
    assert d["grid"][0] == pytest.approx(math.sqrt(3) / 2, abs=1e-15)


def test_eval_fourier_plateau(capsys):
    d = run_json(capsys, "eval", "--weights", "0.6,0.8", "--method", "fourier",
                 "--at", "0.7")
    assert d["values"][0] == pytest.approx(1.25, abs=1e-6)
    assert d["method"] == "fourier"


def test_eval_csv(capsys):
    code, out, _ = run(capsys, "eval", "--weights", "1", "--grid", "0:1:0.5",
                       "--format", "csv")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "x,value,method"
    assert len(lines) == 4


# ---------------------------------------------------------------------------
# phi / expect / fbound


def test_phi_center(capsys):
    d = run_json(capsys, "phi", "--equal", "3", "--r", "0")
    assert d["phi"] == pytest.approx(1.2990381, abs=5e-8)


def test_expect_exact(capsys):
    d = run_json(capsys, "expect", "--equal", "4")
    assert d["method"] == "exact"
    assert d["expectation"] == 0.75


def test_expect_mc_seeded(capsys):
    args = ("expect", "--equal", "28", "--method", "monte_carlo",
            "--samples", "20000", "--seed", "4")
    one = run_json(capsys, *args)
    two = run_json(capsys, *args)
    assert one == two
    assert one["stderr"] > 0


def test_fbound_limit(capsys):
    d = run_json(capsys, "fbound", "--s", "10000")
    assert d["f"] == pytest.approx(0.7979, abs=5e-3)
    assert d["quad_error"] <= 1e-4


# ---------------------------------------------------------------------------
# gap / scan / minimize


@pytest.mark.parametrize("flags,expected", [
    (("--equal", "4"), 0.0),
    (("--weights", "0.6,0.8"), 0.0),
    (("--equal", "3"), 0.125),
])
def test_gap_examples_exit_zero(capsys, flags, expected):
    code, out, _ = run(capsys, "gap", *flags)
    assert code == EXIT_OK
    assert json.loads(out)["gap"] == pytest.approx(expected, abs=1e-9)


def test_scan_byte_identical(capsys):
    args = ("scan", "--n", "4", "--c0", "3", "--trials", "25", "--seed", "9")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2  # identical config+seed -> byte-identical JSON


def test_scan_csv_rows(capsys):
    code, out, _ = run(capsys, "scan", "--n", "3", "--c0", "2", "--trials",
                       "10", "--seed", "1", "--format", "csv")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "trial,gap,ratio"
    assert len(lines) == 11


def test_minimize(capsys):
    code, out, _ = run(capsys, "minimize", "--weights", "0.6,0.8",
                       "--c0", "2")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["report"]["gap"] == pytest.approx(0.0, abs=1e-9)


# ---------------------------------------------------------------------------
# probe / converge


def test_probe_threads_match_serial(capsys):
    base = ("probe", "--c0", "1", "--family", "equal", "--n", "1..6")
    _, serial, _ = run(capsys, *base)
    _, threaded, _ = run(capsys, *base, "--threads", "4")
    assert serial == threaded  # ordered merge keeps determinism
    d = json.loads(serial)
    assert d["empirical_N0"] == 4
    assert all(row["min_gap"] >= -1e-9 for row in d["rows"])


def test_probe_range_syntax(capsys):
    d = run_json(capsys, "probe", "--c0", "2", "--family", "geometric",
                 "--n", "2,4")
    assert [r["n"] for r in d["rows"]] == [2, 4]


def test_converge_decreasing(capsys):
    code, out, _ = run(capsys, "converge", "--family", "equal",
                       "--n", "8,16,32", "--format", "csv")
    assert code == EXIT_OK
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    sups = [float(r[1]) for r in rows]
    assert sups[0] > sups[1] > sups[2]


# ---------------------------------------------------------------------------
# files, errors, exit codes


def test_out_file(tmp_path, capsys):
    path = tmp_path / "prof.json"
    code, out, _ = run(capsys, "eval", "--equal", "2", "--at", "center",
                       "--out", str(path))
    assert code == EXIT_OK and out == ""
    d = json.loads(path.read_text())
    assert d["values"][0] == pytest.approx(math.sqrt(2), abs=1e-12)


def test_error_exit_codes(capsys):
    code, _, err = run(capsys, "eval", "--weights=0,1", "--at", "center")
    assert code == EXIT_ERROR and "positive" in err
    code, _, err = run(capsys, "expect", "--equal", "30", "--method", "exact")
    assert code == EXIT_ERROR
    code, _, err = run(capsys, "fbound", "--s", "-1")
    assert code == EXIT_ERROR


def test_mutually_exclusive_weight_flags(capsys):
    with pytest.raises(SystemExit):
        main(["gap", "--equal", "3", "--weights", "1,2"])
