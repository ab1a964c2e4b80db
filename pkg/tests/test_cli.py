import math

import pytest

from oscpairs.cli import (EXIT_CONFIG, EXIT_NUMERIC, EXIT_VERIFY, RunConfig,
                          cmd_analyze, cmd_verify, cmd_zeros, main, to_json)

SCHEMA_KEYS = {"equation", "params", "span", "tolerances", "wronskian",
               "coefficients", "classification", "L", "K", "k1", "k2",
               "objective", "appell_residual", "corollary1", "corollary2",
               "remark_finite_q"}


def test_analyze_constant_report():
    report = cmd_analyze(RunConfig(equation="constant", params={"c": 1.0},
                                   xmax=50.0))
    assert SCHEMA_KEYS <= set(report)
    assert report["classification"] == "L-finite"
    assert abs(report["L"] - 1.0) <= 1e-6
    assert report["wronskian"] == -1.0
    assert set(report["coefficients"]) == {"A", "B", "C"}
    assert "normalization_note" in report
    assert report["config"]["xmax"] == 50.0


def test_analyze_gen_airy():
    report = cmd_analyze(RunConfig(equation="gen-airy", params={"nu": 1.0 / 3.0},
                                   xmax=200.0))
    assert report["classification"] == "L-zero"
    assert report["corollary1"]["status"] == "holds"
    assert report["appell_residual"]["max"] <= 1e-5


def test_analyze_cauchy_euler():
    report = cmd_analyze(RunConfig(equation="cauchy-euler",
                                   params={"gamma": 1.0}, xmax=500.0))
    assert report["classification"] == "L-infinite"
    assert abs(report["K"] - 2.0 / math.sqrt(3.0)) <= 1e-3
    assert report["corollary2"]["status"] == "fails"


def test_analyze_parsed_equation():
    report = cmd_analyze(RunConfig(equation="g^2/x^2", params={"g": 1.0},
                                   x0=1.0, xmax=500.0))
    assert report["classification"] == "L-infinite"
    assert abs(report["K"] - 2.0 / math.sqrt(3.0)) <= 1e-3


def test_json_determinism():
    cfg = dict(equation="constant", params={"c": 1.0}, xmax=50.0, seed=3)
    a = to_json(cmd_analyze(RunConfig(**cfg)))
    b = to_json(cmd_analyze(RunConfig(**cfg)))
    assert a == b


def test_json_float_formatting():
    text = to_json({"a": 1.0, "b": 0.1, "c": None, "d": True, "e": [1, 2.5]})
    assert '"a": 1' in text
    assert '"b": 0.10000000000000001' in text
    assert '"c": null' in text
    assert '"d": true' in text


def test_zeros_csv():
    text = cmd_zeros(RunConfig(equation="constant", params={"c": 1.0},
                               xmax=50.0, fmt="csv"))
    lines = text.strip().split("\n")
    assert lines[0] == "j,x_crit,x_zero,gap,phase_gap"
    assert lines[-1].startswith("# summary:")
    gaps = [float(row.split(",")[3]) for row in lines[1:-1]]
    assert max(gaps) <= 1e-9


def test_config_validation():
    with pytest.raises(Exception):
        cmd_analyze(RunConfig(equation="constant", params={"c": 1.0},
                              xmax=50.0, window_fraction=0.9))


def test_main_exit_codes(tmp_path, capsys):
    # success
    out = tmp_path / "report.json"
    code = main(["analyze", "--eq", "constant", "--param", "c=1",
                 "--xmax", "50", "--out", str(out)])
    assert code == 0
    assert out.read_text().startswith("{")

    # unknown equation name that is not a valid expression either
    code = main(["analyze", "--eq", "nosuch(", "--xmax", "50"])
    assert code == EXIT_CONFIG
    err = capsys.readouterr().err
    assert '"error"' in err and "ParseError" in err

    # parameter out of the oscillatory range
    code = main(["analyze", "--eq", "cauchy-euler", "--param", "gamma=0.4",
                 "--xmax", "100"])
    assert code == EXIT_CONFIG

    # malformed parameter
    code = main(["analyze", "--eq", "constant", "--param", "c"])
    assert code == EXIT_CONFIG

    # numeric failure: parsed q singular inside the span (surfaces either
    # as a domain error or as step-size underflow at the pole)
    code = main(["analyze", "--eq", "1/(x - 5)", "--x0", "1",
                 "--xmax", "20"])
    assert code == EXIT_NUMERIC
    err = capsys.readouterr().err
    assert '"error"' in err


def test_byte_identical_cli_output(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["analyze", "--eq", "constant", "--param", "c=1", "--xmax", "50",
            "--seed", "7"]
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_fast_passes():
    lines, ok = cmd_verify("fast")
    assert ok, "\n".join(line for line in lines if line.startswith("FAIL"))
    assert all(line.startswith(("PASS", "FAIL")) for line in lines)


def test_verify_detects_corrupted_tolerance():
    # a deliberately loose tolerance must surface in the companion
    # residual check and flip the exit status
    lines, ok = cmd_verify("fast", rtol=1e-3)
    assert not ok
    assert any("FAIL" in line and "companion" in line for line in lines)


def test_verify_cli_exit_code():
    assert main(["verify", "--suite", "fast", "--rtol", "1e-3",
                 "--out", "/dev/null"]) == EXIT_VERIFY
