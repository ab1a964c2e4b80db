"""Command-line front end: analyze, zeros, verify.

Reports are JSON (17 significant digits, fixed key order, so identical
configurations produce byte-identical output) or CSV for the gap table.
Exit codes: 0 success, 2 configuration error, 3 numeric failure,
4 verification failure.
"""

import argparse
import sys
from dataclasses import dataclass, field

import numpy as np

from . import verify
from .errors import (EvaluationError, IllConditionedError, IntegrationError,
                     OscpairsError, ParameterError, ParseError,
                     PhaseConsistencyError, WindowError)
from .integrate import integrate_pair, normalize_unit_wronskian
from .phasekit import appell_residual, phase_unwrap
from .principal import find_principal, sufficient_conditions, transform_pair
from .qfunc import CATALOG_NAMES, catalog_get, parse_q
from .zeros import gap_table

NORMALIZATION_NOTE = (
    "Amplitudes refer to the unit-Wronskian normalized pair; a closed-form "
    "pair carrying Wronskian w corresponds to v_unit = v/|w| (e.g. the "
    "x^(1/2) sin/cos(s log x) pair has w = -s, so its unit amplitude is x/s).")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_VERIFY = 4

_CONFIG_ERRORS = (ParameterError, ParseError)
_NUMERIC_ERRORS = (IntegrationError, EvaluationError, WindowError,
                   PhaseConsistencyError, IllConditionedError)


@dataclass
class RunConfig:
    equation: str
    params: dict = field(default_factory=dict)
    x0: float | None = None
    xmax: float = 100.0
    rtol: float = 1e-10
    atol: float = 1e-12
    window_fraction: float = 0.25
    fmt: str = "json"
    seed: int = 0
    out: str | None = None

    def validate(self):
        if not 0.0 < self.window_fraction <= 0.5:
            raise ParameterError(
                f"window fraction must lie in (0, 0.5], got {self.window_fraction}")
        if self.fmt not in ("json", "csv"):
            raise ParameterError(f"format must be json or csv, got {self.fmt!r}")


def build_model(config):
    if config.equation in CATALOG_NAMES:
        return catalog_get(config.equation, config.params, x0=config.x0)
    return parse_q(config.equation, config.params,
                   x0=1.0 if config.x0 is None else config.x0)


def _integrated_pair(config):
    model = build_model(config)
    if not config.xmax > model.x0:
        raise ParameterError(
            f"xmax = {config.xmax} must exceed x0 = {model.x0}")
    traj = integrate_pair(model, (0.0, 1.0), (1.0, 0.0), config.xmax,
                          rtol=config.rtol, atol=config.atol)
    return model, normalize_unit_wronskian(traj)


def _window(config, traj):
    lo = traj.xmax - config.window_fraction * (traj.xmax - traj.x0)
    return (lo, traj.xmax)


def cmd_analyze(config):
    """Integrate the default pair, find and classify the distinguished
    combination, evaluate the hypothesis predicates and the companion
    third-order identity; returns the report as a dict."""
    config.validate()
    model, traj = _integrated_pair(config)
    report = find_principal(traj, window=_window(config, traj))
    sc = sufficient_conditions(model, (model.x0, config.xmax), 64)
    wlo, whi = report.window
    grid = np.linspace(wlo, whi, 64)
    appell = appell_residual(traj, report.coeffs, grid)

    def _pred(p):
        return {"status": p.status, "first_fail_x": p.first_fail_x,
                "n_fail": p.n_fail, "n_checked": p.n_checked, "note": p.note}

    diagnostics = {k: v for k, v in report.diagnostics.items()
                   if k not in ("windows",)}
    return {
        "equation": model.source,
        "params": dict(model.params),
        "span": [model.x0, float(config.xmax)],
        "tolerances": {"rtol": config.rtol, "atol": config.atol},
        "wronskian": traj.w,
        "coefficients": {"A": report.coeffs.A, "B": report.coeffs.B,
                         "C": report.coeffs.C},
        "classification": report.classification,
        "L": report.L,
        "K": report.K,
        "k1": report.k1_est,
        "k2": report.k2_est,
        "objective": report.objective,
        "appell_residual": {"max": appell.max, "rms": appell.rms,
                            "count": appell.count},
        "corollary1": _pred(sc.corollary1),
        "corollary2": _pred(sc.corollary2),
        "remark_finite_q": _pred(sc.remark_finite_q),
        "q_trend": sc.q_trend,
        "window": [wlo, whi],
        "normalization_note": NORMALIZATION_NOTE,
        "diagnostics": diagnostics,
        "config": {"equation": config.equation, "params": dict(config.params),
                   "x0": config.x0, "xmax": config.xmax, "rtol": config.rtol,
                   "atol": config.atol, "window_fraction": config.window_fraction,
                   "format": config.fmt, "seed": config.seed},
    }


def cmd_zeros(config):
    """Gap table of the distinguished pair as CSV text."""
    config.validate()
    model, traj = _integrated_pair(config)
    report = find_principal(traj, window=_window(config, traj))
    principal_pair = transform_pair(traj, report.matrix)
    phase = phase_unwrap(principal_pair)
    table = gap_table(principal_pair, phase, (model.x0, config.xmax))
    return table.to_csv(include_summary=True)


def cmd_verify(suite="fast", seed=0, rtol=None):
    """Run the verification suite; returns (lines, all_passed)."""
    if suite == "fast":
        checks = verify.fast_suite(rtol=rtol)
    elif suite == "all":
        checks = verify.full_suite(seed=seed, rtol=rtol)
    else:
        raise ParameterError(f"suite must be 'fast' or 'all', got {suite!r}")
    lines = [verify.format_check(c) for c in checks]
    return lines, all(c.passed for c in checks)


# ---------------------------------------------------------------------------
# deterministic JSON with 17 significant digits

def _json_scalar(x):
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if x != x or x in (float("inf"), float("-inf")):
            return '"%s"' % repr(x)
        return format(x, ".17g")
    if isinstance(x, str):
        return '"%s"' % x.replace("\\", "\\\\").replace('"', '\\"')
    raise TypeError(f"cannot serialize {type(x)}")


def to_json(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join('%s"%s": %s' % ("  " * (indent + 1), k,
                                           to_json(v, indent + 1))
                           for k, v in obj.items())
        return "{\n%s\n%s}" % (items, pad)
    if isinstance(obj, (list, tuple)):
        return "[%s]" % ", ".join(to_json(v, indent) for v in obj)
    return _json_scalar(obj)


# ---------------------------------------------------------------------------
# argument handling

def _parse_params(pairs):
    params = {}
    for item in pairs or []:
        if "=" not in item:
            raise ParameterError(f"--param expects name=value, got {item!r}")
        key, _, value = item.partition("=")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise ParameterError(f"parameter {key!r} has non-numeric value {value!r}")
    return params


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="oscpairs",
        description="Analyze oscillatory equations y'' + q(x) y = 0: phase "
                    "and amplitude functions, distinguished solution pairs, "
                    "and zero-gap tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--eq", required=True,
                       help="catalog name (%s) or an expression in x"
                            % ", ".join(CATALOG_NAMES))
        p.add_argument("--param", action="append", metavar="NAME=VALUE",
                       help="equation parameter; repeatable")
        p.add_argument("--x0", type=float, default=None)
        p.add_argument("--xmax", type=float, default=100.0)
        p.add_argument("--rtol", type=float, default=1e-10)
        p.add_argument("--atol", type=float, default=1e-12)
        p.add_argument("--window", type=float, default=0.25,
                       help="tail window fraction in (0, 0.5]")
        p.add_argument("--format", choices=("json", "csv"), default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)

    common(sub.add_parser("analyze", help="classification report"))
    common(sub.add_parser("zeros", help="gap table between critical points "
                                        "and companion zeros"))
    pv = sub.add_parser("verify", help="run the verification suite")
    pv.add_argument("--suite", choices=("fast", "all"), default="fast")
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--rtol", type=float, default=None)
    pv.add_argument("--out", default=None)
    return parser


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error_json(exc, code):
    return to_json({"error": type(exc).__name__, "message": str(exc),
                    "exit_code": code}) + "\n"


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK

    try:
        if args.command == "verify":
            lines, ok = cmd_verify(args.suite, seed=args.seed, rtol=args.rtol)
            text = "\n".join(lines) + "\n"
            _emit(text, args.out)
            return EXIT_OK if ok else EXIT_VERIFY

        config = RunConfig(
            equation=args.eq, params=_parse_params(args.param),
            x0=args.x0, xmax=args.xmax, rtol=args.rtol, atol=args.atol,
            window_fraction=args.window,
            fmt=args.format or ("csv" if args.command == "zeros" else "json"),
            seed=args.seed, out=args.out)
        if args.command == "analyze":
            report = cmd_analyze(config)
            _emit(to_json(report) + "\n", config.out)
        else:
            _emit(cmd_zeros(config), config.out)
        return EXIT_OK
    except _CONFIG_ERRORS as exc:
        sys.stderr.write(_error_json(exc, EXIT_CONFIG))
        return EXIT_CONFIG
    except _NUMERIC_ERRORS as exc:
        sys.stderr.write(_error_json(exc, EXIT_NUMERIC))
        return EXIT_NUMERIC
    except OscpairsError as exc:
        sys.stderr.write(_error_json(exc, EXIT_NUMERIC))
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
