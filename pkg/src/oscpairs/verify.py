"""Verification checks: module invariants (fast suite) and the full
acceptance battery (all).

Every check reports a measured value against its bound so failures are
data, not exceptions.  Heavy trajectories are integrated once per
tolerance setting and shared across checks.

Two checks in the full battery compare the unit-Wronskian pipeline
amplitude against reference constants quoted for the classical Bessel
pairs (3/pi and 1/pi).  Those pairs carry Wronskians 1/(nu pi) and 1/pi
rather than 1, so the constants differ from the normalized amplitude by
exactly that factor and the checks fail by it; the companion checks
right below them verify the Wronskian-consistent relationships.
"""

import math
import time
from dataclasses import dataclass
from types import SimpleNamespace

import numpy as np

from .integrate import integrate_pair, normalize_unit_wronskian, sample
from .phasekit import appell_residual, phase_unwrap, prufer_polar
from .principal import find_principal, sufficient_conditions, transform_pair
from .qfunc import catalog_get, parse_q
from .specfun import bessel_jy, example1_v, gamma, modulus
from .zeros import gap_table, zeros_of

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    bound: float
    passed: bool
    detail: str = ""


def format_check(c):
    flag = "PASS" if c.passed else "FAIL"
    line = f"{flag}  {c.name}: measured {c.measured:.6g} vs bound {c.bound:.6g}"
    if c.detail:
        line += f"  [{c.detail}]"
    return line


def _le(name, measured, bound, detail=""):
    measured = float(measured)
    return CheckResult(name, measured, float(bound), measured <= bound, detail)


def _true(name, condition, detail=""):
    return CheckResult(name, 1.0 if condition else 0.0, 1.0, bool(condition), detail)


# ---------------------------------------------------------------------------
# shared catalog runs

_CASES = {
    "constant": ("constant", {"c": 1.0}, 50.0),
    "gen-airy": ("gen-airy", {"nu": 1.0 / 3.0}, 200.0),
    "inverse-x": ("inverse-x", {}, 400.0),
    "cauchy-euler": ("cauchy-euler", {"gamma": 1.0}, 500.0),
    "cauchy-euler-long": ("cauchy-euler", {"gamma": 1.0}, 5e7),
    "gen-airy-0.4": ("gen-airy", {"nu": 0.4}, 200.0),
}

_RUNS = {}


def catalog_run(case, rtol=None):
    """Integrated, normalized, analyzed catalog trajectory (cached)."""
    rtol = DEFAULT_RTOL if rtol is None else rtol
    key = (case, rtol)
    if key not in _RUNS:
        name, params, xmax = _CASES[case]
        model = catalog_get(name, params)
        traj = normalize_unit_wronskian(
            integrate_pair(model, (0.0, 1.0), (1.0, 0.0), xmax,
                           rtol=rtol, atol=DEFAULT_ATOL))
        report = find_principal(traj)
        principal_traj = transform_pair(traj, report.matrix)
        _RUNS[key] = SimpleNamespace(
            name=name, model=model, traj=traj, report=report,
            principal=principal_traj,
            phase=phase_unwrap(traj),
            principal_phase=phase_unwrap(principal_traj))
    return _RUNS[key]


def unimodular_scrambles(seed, n=10, max_norm=4.0):
    """Seeded random matrices with |det| = 1 and bounded Frobenius norm
    (so scrambled pairs keep a usable amount of phase in the window)."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        a, b, c, d = rng.uniform(-1.5, 1.5, 4)
        det = a * d - b * c
        if abs(det) < 0.4:
            continue
        r = abs(det) ** -0.5
        M = (a * r, b * r, c * r, d * r)
        if M[0] ** 2 + M[1] ** 2 + M[2] ** 2 + M[3] ** 2 > max_norm:
            continue
        out.append(M)
    return out


def _unit_combinations(seed, n=5):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        a = rng.uniform(0.3, 3.0)
        c = rng.uniform(-1.5, 1.5)
        out.append((a, (1.0 + c * c) / a, c))
    return out


# ---------------------------------------------------------------------------
# fast suite: module invariants

def _fd_consistency(model):
    lo = model.x0 if model.x0 > 0 else 1.0
    xs = np.geomspace(lo, 1e3 * lo, 64)
    worst = 0.0
    for x in xs:
        h = 1e-5 * (1.0 + x)
        q_m, qp_m, _ = model.evaluate(x - h)
        q_p, qp_p, _ = model.evaluate(x + h)
        _, qp, qpp = model.evaluate(x)
        worst = max(worst, abs((q_p - q_m) / (2 * h) - qp) / (1.0 + abs(qp)))
        worst = max(worst, abs((qp_p - qp_m) / (2 * h) - qpp) / (1.0 + abs(qpp)))
    return worst


def fast_suite(rtol=None):
    checks = []

    worst = 0.0
    for case in ("constant", "gen-airy", "inverse-x", "cauchy-euler"):
        name, params, _ = _CASES[case]
        worst = max(worst, _fd_consistency(catalog_get(name, params)))
    worst = max(worst, _fd_consistency(parse_q("g^2/x^2", {"g": 1.0})))
    checks.append(_le("qfunc finite-difference consistency", worst, 1e-6))

    parsed = parse_q("x^(1/v - 2)/(2*v)^2", {"v": 1.0 / 3.0})
    cat = catalog_get("gen-airy", {"nu": 1.0 / 3.0})
    xs = np.geomspace(1.0, 1000.0, 64)
    rel = max(abs(parsed.q(x) - cat.q(x)) / abs(cat.q(x)) for x in xs)
    checks.append(_le("parsed q agrees with catalog", rel, 1e-12))

    half = catalog_get("gen-airy", {"nu": 0.5})
    one = catalog_get("constant", {"c": 1.0})
    xs = np.linspace(0.5, 100.0, 33)
    checks.append(_le("gen-airy nu=1/2 equals constant",
                      max(abs(half.q(x) - one.q(x)) for x in xs), 1e-15))

    const = catalog_run("constant", rtol)
    xs = np.linspace(0.0, 50.0, 2001)
    st = sample(const.traj, xs)
    checks.append(_le("constant-q closed form (dense)",
                      np.max(np.abs(st[:, 0] - np.sin(xs))), 1e-8))

    ce = catalog_run("cauchy-euler", rtol)
    s = ce.model.params["s"]
    xs = np.geomspace(1.0, 500.0, 101)
    st = sample(ce.traj, xs)
    # default ICs (0, 1) give y1 = sqrt(x) sin(s log x) / s
    exact = np.sqrt(xs) * np.sin(s * np.log(xs)) / s
    checks.append(_le("cauchy-euler closed form",
                      np.max(np.abs(st[:, 0] - exact) / (np.sqrt(xs) / s)),
                      1e-7))

    g = catalog_run("gen-airy", rtol)
    wn = g.traj.wronskian_nodes()
    checks.append(_le("wronskian drift (gen-airy, x to 200)",
                      np.max(np.abs(wn - wn[0])), 1e-8))

    i = len(const.traj.mesh) // 2
    checks.append(_true("sample reproduces nodes exactly",
                        np.array_equal(sample(const.traj, const.traj.mesh[i]),
                                       const.traj.states[i])))

    mid = 0.5 * (g.traj.mesh[:-1] + g.traj.mesh[1:])
    vals = g.traj.evaluate(mid, nder=2)
    q = g.model.q_array(mid)
    res = np.abs(vals["y1pp"] + q * vals["y1"])
    scale = np.maximum(np.abs(vals["y1"]), np.abs(vals["y1p"]))
    checks.append(_le("interpolant midpoint residual",
                      np.max(res / (10.0 * g.traj.rtol * scale + 1e-300)), 1.0,
                      "|y1'' + q y1| <= 10 rtol scale"))

    for case in ("constant", "gen-airy", "inverse-x", "cauchy-euler"):
        run = catalog_run(case, rtol)
        ph = run.phase
        checks.append(_le(f"phase identity v*alpha'=-w ({case})",
                          np.max(np.abs(ph.v * ph.alpha_prime + run.traj.w)), 1e-9))
        y1 = run.traj.states[:, 0] if not ph.swapped else run.traj.states[:, 2]
        rec = np.abs(y1 - ph.eps_sign * np.sqrt(ph.v) * np.sin(ph.alpha))
        checks.append(_le(f"representation residual ({case})",
                          np.max(rec / np.sqrt(ph.v)), 1e-7))
        checks.append(_true(f"alpha strictly monotone ({case})",
                            bool(np.all(np.diff(ph.alpha) > 0))))
        checks.append(_le(f"quadrature vs arctangent ({case})",
                          ph.alpha_mismatch_max, 1e-7))

    grid = np.linspace(5.0, 195.0, 64)
    worst = max(appell_residual(g.traj, combo, grid).max
                for combo in ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 0.5)))
    checks.append(_le("companion-equation linearity (y1^2, y2^2, y1 y2)",
                      worst, 1e-5))
    checks.append(_le("companion residual, constant pair (1,1,0)",
                      appell_residual(const.traj, (1.0, 1.0, 0.0),
                                      np.linspace(1.0, 49.0, 64)).max, 1e-8))

    pp = prufer_polar(const.traj, "y1")
    checks.append(_le("prufer reconstruction rho sin(phi) = y",
                      np.max(np.abs(pp.rho * np.sin(pp.phi)
                                    - const.traj.states[:, 0])), 1e-9))
    gphi = np.gradient(pp.phi, pp.grid)
    model_phi = np.cos(pp.phi) ** 2 + 1.0 * np.sin(pp.phi) ** 2
    checks.append(_le("prufer angle equation (finite differences)",
                      np.max(np.abs(gphi - model_phi)[2:-2]), 1e-5))

    checks.append(_le("gamma(1/2) vs sqrt(pi)",
                      abs(gamma(0.5) - math.sqrt(math.pi)), 1e-12))
    j = bessel_jy(0.5, math.pi / 2)
    checks.append(_le("J_{1/2}(pi/2) closed form", abs(j.J - 2.0 / math.pi), 1e-12))
    worstw = 0.0
    from .specfun import _propagate
    tr = _propagate(1.0 / 3.0, 2.0, 80.0)
    wn = tr.wronskian_nodes()
    worstw = np.max(np.abs(wn - 2.0 / math.pi)) * math.pi / 2.0
    checks.append(_le("bessel wronskian 2/(pi t)", worstw, 1e-9))
    worstm = max(abs(modulus(0.5, t) - 2.0 / math.pi) for t in
                 np.geomspace(0.3, 80.0, 20))
    checks.append(_le("modulus at order 1/2 constant", worstm, 1e-10))

    for case, tag in (("constant", "L-finite"), ("gen-airy", "L-zero"),
                      ("inverse-x", "L-infinite"), ("cauchy-euler", "L-infinite")):
        run = catalog_run(case, rtol)
        checks.append(_true(f"classification tag ({case})",
                            run.report.classification == tag,
                            f"got {run.report.classification}"))

    z = zeros_of(const.traj, "y1", (0.1, 10.0))
    checks.append(_le("zeros of sine solution",
                      np.max(np.abs(z - np.arange(1, 4) * math.pi)), 1e-10))
    z1 = zeros_of(g.principal, "y1", (1.0, 200.0))
    z2 = zeros_of(g.principal, "y2", (1.0, 200.0))
    counts = np.searchsorted(z2, z1[1:]) - np.searchsorted(z2, z1[:-1])
    checks.append(_true("interlacing of pair zeros", bool(np.all(counts == 1))))
    return checks


# ---------------------------------------------------------------------------
# acceptance criteria

def criterion_1(seed=0, rtol=None):
    """Scramble recovery: the distinguished combination is recovered from
    seeded unit-determinant scrambles of the default pair."""
    checks = []
    t0 = time.time()
    for case in ("constant", "gen-airy", "inverse-x", "cauchy-euler-long"):
        run = catalog_run(case, rtol)
        ph = run.principal_phase
        wlo, whi = run.report.window
        tail = (ph.grid >= wlo) & (ph.grid <= whi)
        vref = ph.v[tail]
        worst_v, worst_k = 0.0, 0.0
        for M in unimodular_scrambles(seed + 1):
            scr = transform_pair(run.traj, M)
            rep = find_principal(scr)
            phs = phase_unwrap(transform_pair(scr, rep.matrix))
            worst_v = max(worst_v, float(np.max(
                np.abs(phs.v[tail] - vref) / np.abs(vref))))
            worst_k = max(worst_k, abs(rep.k1_est), abs(rep.k2_est))
        checks.append(_le(f"C1 scramble recovery vbar ({run.name})", worst_v, 1e-5))
        checks.append(_le(f"C1 scramble residual k ({run.name})", worst_k, 1e-5))
    checks.append(_le("C1 runtime (s)", time.time() - t0, 60.0))
    return checks


def criterion_2(rtol=None):
    """Generalized-Airy amplitude against the classical asymptotic
    constant 3/pi and the closed-form Bessel amplitude.

    The 3/pi constant belongs to the raw pair sqrt(x) Z_nu(2 nu
    x^(1/(2nu))), whose Wronskian is 1/(nu pi) = 3/pi, and that pair
    solves y'' + x^(1/nu - 2) y = 0 (no (2 nu)^-2 factor).  For the
    catalog equation under the unit-Wronskian convention the distinguished
    amplitude satisfies v sqrt(x) -> 2 nu = 2/3 instead, so both checks
    fail by that normalization factor; the companions verify the
    factor-consistent relationships.
    """
    run = catalog_run("gen-airy", rtol)
    ph = run.principal_phase
    nu = 1.0 / 3.0
    i100 = int(np.searchsorted(ph.grid, 100.0))
    v100 = ph.v[i100] * math.sqrt(ph.grid[i100])
    target = 3.0 / math.pi
    checks = [_le("C2 pipeline v*sqrt(x) at 100 vs 3/pi",
                  abs(v100 - target) / target, 0.01,
                  f"measured {v100:.6f}; unit-normalized limit is 2nu = {2*nu:.6f}")]
    worst = 0.0
    for x in (10.0, 50.0, 100.0):
        i = int(np.searchsorted(ph.grid, x))
        vp = ph.v[i]
        ve = example1_v(nu, ph.grid[i])
        worst = max(worst, abs(ve - vp) / abs(vp))
    checks.append(_le("C2 example1_v agrees with pipeline", worst, 1e-4,
                      "ratio is 1/(2 nu^2 pi) = 1.4324 (Wronskian mismatch)"))
    # companions: the same comparisons with the Wronskian factor restored
    worst = 0.0
    for x in (10.0, 50.0, 100.0):
        i = int(np.searchsorted(ph.grid, x))
        xg = ph.grid[i]
        t = xg ** (1.0 / (2.0 * nu))
        v_closed = nu * math.pi * (xg / t) * modulus(nu, t)
        worst = max(worst, abs(v_closed - ph.v[i]) / abs(ph.v[i]))
    checks.append(_le("C2+ pipeline vs nu*pi*x*(J^2+Y^2)(x^(3/2))", worst, 1e-4))
    checks.append(_le("C2+ pipeline v*sqrt(x) vs 2*nu",
                      abs(v100 - 2.0 * nu) / (2.0 * nu), 0.01))
    v_closed_100 = example1_v(nu, 100.0) * 10.0
    checks.append(_le("C2+ example1_v*sqrt(x) vs 3/pi",
                      abs(v_closed_100 - target) / target, 0.01))
    return checks


def criterion_3(rtol=None):
    """q = 1/x on [1, 400]: growth classification with vanishing K, and
    the 1/pi amplitude constant (which, like C2, belongs to the raw
    Bessel pair sqrt(x) Z_1(2 sqrt x) with Wronskian 1/pi; the
    unit-normalized amplitude satisfies v/sqrt(x) -> 1)."""
    run = catalog_run("inverse-x", rtol)
    rep = run.report
    checks = [_true("C3 classification L-infinite",
                    rep.classification == "L-infinite",
                    f"got {rep.classification}"),
              _le("C3 K = 0", abs(rep.K) if rep.K is not None else math.inf, 1e-3)]
    ph = run.principal_phase
    v400 = ph.v[-1] / math.sqrt(ph.grid[-1])
    checks.append(_le("C3 v/sqrt(x) at 400 vs 1/pi",
                      abs(v400 - 1.0 / math.pi) / (1.0 / math.pi), 0.01,
                      f"measured {v400:.6f}; unit-normalized limit is 1"))
    checks.append(_le("C3+ v/sqrt(x) at 400 vs 1", abs(v400 - 1.0), 0.01))
    return checks


def criterion_4(rtol=None):
    """Cauchy-Euler gamma = 1 on [1, 500]: growth classification with
    K = 2/sqrt(3) (the unit-normalized closed form x/s, v' = 1/s)."""
    run = catalog_run("cauchy-euler", rtol)
    rep = run.report
    s = run.model.params["s"]
    checks = [_true("C4 classification L-infinite",
                    rep.classification == "L-infinite",
                    f"got {rep.classification}"),
              _le("C4 K = 2/sqrt(3)",
                  abs(rep.K - 1.0 / s) if rep.K is not None else math.inf, 1e-3)]
    from .cli import NORMALIZATION_NOTE, RunConfig, cmd_analyze
    report = cmd_analyze(RunConfig(equation="cauchy-euler",
                                   params={"gamma": 1.0}, xmax=500.0))
    checks.append(_true("C4 report carries the normalization note",
                        report.get("normalization_note") == NORMALIZATION_NOTE))
    return checks


def criterion_5(rtol=None):
    """Zero-gap table for gen-airy: long monotone tail with vanishing
    gaps; among 12 rotated companions, the quarter-turn one wins."""
    run = catalog_run("gen-airy", rtol)
    table = gap_table(run.principal, run.principal_phase, (1.0, 200.0))
    checks = [_true("C5 table has >= 30 rows", len(table.j) >= 30,
                    f"{len(table.j)} rows"),
              _true("C5 monotone decreasing tail (last 10)",
                    bool(np.all(np.diff(table.gap[-10:]) < 0))),
              _le("C5 d_last", table.d_last, 1e-4),
              _true("C5 d_last < d_first/10", table.d_last < table.d_first / 10.0,
                    f"d_first={table.d_first:.3e} d_last={table.d_last:.3e}")]
    crits = table.x_crit[table.x_crit >= 150.0]
    means = []
    for k in range(1, 13):
        ang = k * math.pi / 12.0
        rot = transform_pair(run.principal,
                             (math.cos(ang), math.sin(ang),
                              -math.sin(ang), math.cos(ang)))
        zk = zeros_of(rot, "y1", (145.0, 200.0))
        idx = np.clip(np.searchsorted(zk, crits), 1, len(zk) - 1)
        d = np.minimum(np.abs(zk[idx] - crits), np.abs(crits - zk[idx - 1]))
        means.append(float(np.mean(d)))
    kbest = int(np.argmin(means)) + 1
    checks.append(_true("C5 competitor k=6 minimizes the tail gap", kbest == 6,
                        f"argmin k={kbest}"))
    return checks


def criterion_6(rtol=None):
    """Negative control: Cauchy-Euler phase gaps settle at pi/6, not 0."""
    run = catalog_run("cauchy-euler-long", rtol)
    table = gap_table(run.principal, run.principal_phase, (1.0, 5e7))
    return [_le("C6 phase gap -> pi/6",
                abs(table.delta_last - math.pi / 6.0), 1e-4,
                f"delta_last={table.delta_last:.8f}")]


def criterion_7(seed=0, rtol=None):
    """Companion-equation residual for squares, the cross product and
    random unit-determinant combinations, on every catalog equation."""
    combos = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 0.5)]
    combos += _unit_combinations(seed + 7)
    checks = []
    for case in ("constant", "gen-airy", "inverse-x", "cauchy-euler"):
        run = catalog_run(case, rtol)
        lo, hi = run.traj.x0, run.traj.xmax
        grid = np.linspace(lo + 0.02 * (hi - lo), hi - 0.02 * (hi - lo), 64)
        worst = max(appell_residual(run.traj, combo, grid).max for combo in combos)
        checks.append(_le(f"C7 companion residual ({case})", worst, 1e-5))
    return checks


def criterion_8(rtol=None):
    """Phase identities on all catalog runs."""
    checks = []
    for case in ("constant", "gen-airy", "inverse-x", "cauchy-euler"):
        run = catalog_run(case, rtol)
        ph = run.phase
        checks.append(_le(f"C8 v*alpha' = -w ({case})",
                          np.max(np.abs(ph.v * ph.alpha_prime + run.traj.w)), 1e-9))
        y1 = run.traj.states[:, 0] if not ph.swapped else run.traj.states[:, 2]
        y2 = run.traj.states[:, 2] if not ph.swapped else run.traj.states[:, 0]
        r1 = np.abs(y1 - np.sqrt(ph.v) * np.sin(ph.alpha)) / np.sqrt(ph.v)
        r2 = np.abs(y2 - np.sqrt(ph.v) * np.cos(ph.alpha)) / np.sqrt(ph.v)
        checks.append(_le(f"C8 representation residual ({case})",
                          max(np.max(r1), np.max(r2)), 1e-7))
        checks.append(_true(f"C8 alpha monotone ({case})",
                            bool(np.all(np.diff(ph.alpha) > 0))))
    return checks


def criterion_9(rtol=None):
    """Hypothesis predicates and their conclusions on the catalog."""
    checks = []
    g = catalog_run("gen-airy", rtol)
    sc = sufficient_conditions(g.model, (1.0, 200.0), 64)
    checks.append(_true("C9 gen-airy corollary-1 hypotheses hold",
                        sc.corollary1.status == "holds",
                        sc.corollary1.status))
    ph = g.principal_phase
    checks.append(_true("C9 gen-airy v > 0 and decreasing",
                        bool(np.all(ph.v > 0))
                        and bool(np.all(ph.v_prime <= 1e-8))))
    checks.append(_le("C9 gen-airy v' -> 0 (K)", abs(g.report.K), 1e-4))

    c = catalog_run("constant", rtol)
    sc = sufficient_conditions(c.model, (0.0, 50.0), 64)
    checks.append(_true("C9 constant corollary-2 hypotheses hold",
                        sc.corollary2.status == "holds", sc.corollary2.status))
    checks.append(_true("C9 constant v approaches a finite limit",
                        c.report.classification == "L-finite"
                        and abs(c.report.L - 1.0) <= 1e-6))

    ce = catalog_run("cauchy-euler", rtol)
    sc = sufficient_conditions(ce.model, (1.0, 500.0), 64)
    checks.append(_true("C9 cauchy-euler curvature inequality fails everywhere",
                        sc.corollary2.status == "fails"
                        and sc.corollary2.n_fail == sc.corollary2.n_checked,
                        f"{sc.corollary2.n_fail}/{sc.corollary2.n_checked}"))
    return checks


def criterion_10(rtol=None):
    """Bessel modulus monotonicity and the sign pattern of the decaying
    amplitude (complete-monotonicity spot check)."""
    checks = []
    ts = np.geomspace(0.1, 100.0, 200)
    for nu in (0.1, 0.25, 1.0 / 3.0, 0.45):
        ms = np.array([modulus(nu, t) for t in ts])
        checks.append(_true(f"C10 modulus increasing and < 2/pi (nu={nu:.3g})",
                            bool(np.all(np.diff(ms) > 0))
                            and bool(np.all(ms < 2.0 / math.pi))))
    worst = max(abs(modulus(0.5, t) - 2.0 / math.pi)
                for t in np.geomspace(0.2, 90.0, 20))
    checks.append(_le("C10 modulus at nu=1/2 equals 2/pi", worst, 1e-10))

    run = catalog_run("gen-airy-0.4", rtol)
    ph = run.principal_phase
    grid = np.linspace(2.0, 200.0, 50)
    idx = np.searchsorted(ph.grid, grid)
    v, vp, vpp = ph.v[idx], ph.v_prime[idx], ph.v_second[idx]
    checks.append(_true("C10 sign pattern v>0, v'<0, v''>0 (nu=0.4)",
                        bool(np.all(v > 0)) and bool(np.all(vp < 0))
                        and bool(np.all(vpp > 0))))
    return checks


def full_suite(seed=0, rtol=None):
    checks = list(fast_suite(rtol))
    checks += criterion_1(seed=seed, rtol=rtol)
    checks += criterion_2(rtol=rtol)
    checks += criterion_3(rtol=rtol)
    checks += criterion_4(rtol=rtol)
    checks += criterion_5(rtol=rtol)
    checks += criterion_6(rtol=rtol)
    checks += criterion_7(seed=seed, rtol=rtol)
    checks += criterion_8(rtol=rtol)
    checks += criterion_9(rtol=rtol)
    checks += criterion_10(rtol=rtol)
    return checks
