"""Finding and classifying principal pairs.

A unimodular change of pair (ybar1, ybar2) = M (y1, y2) acts on the
amplitude only through the quadratic form

    vbar = A y1^2 + B y2^2 + 2C y1 y2,
    A = a^2 + c^2,  B = b^2 + d^2,  C = ab + cd,  AB - C^2 = (ad - bc)^2,

so the search for the distinguished pair runs over (A, B, C) with
AB - C^2 = 1 and A > 0, which removes the orthogonal gauge freedom
exactly.  Along any pair,

    2 vbar' = v' (A + B) + cos(2 alpha) (K2 - v' K1) + sin(2 alpha) (K1 + v' K2),
    K1 = A - B,  K2 = 2C,

and the distinguished combination is the one whose vbar' carries no
oscillatory part (K1 = K2 = 0).  The finder minimizes the sample
variance of vbar' over a tail window; the classifier then examines the
limit behaviour of vbar and vbar' over dyadic windows.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IllConditionedError, ParameterError, WindowError
from .integrate import PairTrajectory
from .phasekit import phase_unwrap

_TIE_TOL = 1e-12
_MIN_FULL_SPAN_ALPHA = 0.9 * math.pi  # below this the window is not oscillatory


@dataclass(frozen=True)
class CombinationCoefficients:
    """Quadratic-form coefficients (A, B, C) of a change of pair."""

    A: float
    B: float
    C: float

    @property
    def determinant(self):
        return self.A * self.B - self.C * self.C

    @property
    def unit_determinant(self):
        return self.A > 0 and abs(self.determinant - 1.0) <= 1e-9

    @classmethod
    def unit(cls, A, B, C):
        coeffs = cls(float(A), float(B), float(C))
        if not coeffs.unit_determinant:
            raise ParameterError(
                f"not a unit-determinant combination: A={A}, B={B}, C={C} "
                f"(AB - C^2 = {coeffs.determinant})")
        return coeffs


@dataclass(frozen=True)
class OptimizerSettings:
    residual_tol: float = 1e-3      # |(k1, k2)| above this => undetermined
    grid_p_exponents: tuple = tuple(range(-6, 7))
    grid_m_max: float = 4.0
    grid_m_step: float = 0.5
    n_refine: int = 8               # best starts refined by simplex descent
    simplex_rel_tol: float = 1e-10
    max_iter: int = 400


@dataclass(frozen=True)
class PrincipalReport:
    coeffs: CombinationCoefficients
    classification: str             # L-finite | L-zero | L-infinite | undetermined
    L: float | None
    K: float | None
    k1_est: float
    k2_est: float
    objective: float
    window: tuple
    matrix: tuple                   # (a, b, c, d) realizing the coefficients
    diagnostics: dict = field(default_factory=dict)


def transform_pair(traj, matrix):
    """New trajectory with states combined node-by-node by ((a, b), (c, d)).

    The Wronskian scales by (ad - bc); a singular matrix is rejected.
    """
    a, b, c, d = (float(t) for t in matrix)
    det = a * d - b * c
    if det == 0.0 or abs(det) < 1e-14 * max(abs(a * d), abs(b * c), 1e-300):
        raise ParameterError(f"singular transformation matrix {matrix}")
    y1, p1, y2, p2 = traj.states.T
    states = np.column_stack([a * y1 + b * y2, a * p1 + b * p2,
                              c * y1 + d * y2, c * p1 + d * p2])
    return PairTrajectory(traj.model, traj.mesh.copy(), states,
                          det * traj.w, traj.rtol, traj.atol)


def coefficient_matrix(coeffs):
    """A concrete (a, b, c, d) with a^2+c^2 = A, b^2+d^2 = B, ab+cd = C.

    Exists for any A > 0 with AB - C^2 = 1; the triangular choice
    ((sqrt(A), C/sqrt(A)), (0, 1/sqrt(A))) has determinant 1.
    """
    A, B, C = coeffs.A, coeffs.B, coeffs.C
    if A <= 0:
        raise ParameterError("need A > 0 to realize the combination")
    ra = math.sqrt(A)
    return (ra, C / ra, 0.0, 1.0 / ra)


def _window_indices(grid, window):
    lo, hi = float(window[0]), float(window[1])
    if not hi > lo:
        raise WindowError(f"empty window {window}")
    i0, i1 = np.searchsorted(grid, [lo, hi])
    i1 = min(i1, len(grid))
    if i1 - i0 < 8:
        raise WindowError(f"window {window} contains too few samples ({i1 - i0})")
    return slice(i0, i1)


def decompose_oscillation(traj, phase, coeffs, window, min_periods=3.0):
    """Split vbar' into its v'-proportional and oscillatory parts.

    Least squares of the exact vbar' samples onto {v', sin 2a, cos 2a}
    over the window; the oscillatory 2x2 block is inverted with v'
    replaced by its window mean.  Returns (mean_coeff, k1, k2) where
    mean_coeff estimates (A + B)/2 and (k1, k2) vanish exactly at the
    distinguished combination.  Requires the window to contain at least
    ``min_periods`` full periods of 2*alpha.
    """
    if phase.alpha is None:
        raise ParameterError("phase data lacks alpha; use phase_unwrap")
    A, B, C = (coeffs.A, coeffs.B, coeffs.C) if hasattr(coeffs, "A") else map(float, coeffs)
    sl = _window_indices(phase.grid, window)
    alpha = phase.alpha[sl]
    if abs(alpha[-1] - alpha[0]) < min_periods * math.pi:
        raise WindowError(
            f"window spans {abs(alpha[-1] - alpha[0]) / math.pi:.2f} pi of phase; "
            f"need >= {min_periods} periods of 2*alpha")

    grid = phase.grid[sl]
    vals = traj.evaluate(grid, nder=1) if grid is not traj.mesh else None
    if vals is None:
        y1, d1 = traj.states[sl, 0], traj.states[sl, 1]
        y2, d2 = traj.states[sl, 2], traj.states[sl, 3]
    else:
        y1, d1, y2, d2 = vals["y1"], vals["y1p"], vals["y2"], vals["y2p"]
    vbp = 2.0 * A * y1 * d1 + 2.0 * B * y2 * d2 + 2.0 * C * (d1 * y2 + y1 * d2)
    vp = phase.v_prime[sl]

    sin2, cos2 = np.sin(2.0 * alpha), np.cos(2.0 * alpha)
    m = float(np.mean(vp))
    scale_vp = float(np.sqrt(np.mean(vp * vp)))
    scale_osc = max(float(np.sqrt(np.mean(vbp * vbp))), 1e-300)
    use_vp = scale_vp > 1e-12 * scale_osc

    cols = [vp, sin2, cos2] if use_vp else [sin2, cos2]
    X = np.column_stack(cols)
    gram = X.T @ X
    cond = np.linalg.cond(gram)
    if cond > 1e8:
        raise IllConditionedError(
            f"normal equations condition {cond:.2e} exceeds 1e8")
    sol = np.linalg.solve(gram, X.T @ vbp)
    if use_vp:
        c0, c1, c2 = (float(s) for s in sol)
        mean_coeff = c0
    else:
        c1, c2 = (float(s) for s in sol)
        mean_coeff = None
    # vbar' = v' (A+B)/2 + sin(2a) [K1 + v' K2 / 2] + cos(2a) [K2 - v' K1 / 2]
    # (the pure-oscillation part enters with full weight since v alpha' = 1)
    half_m = 0.5 * m
    den = 1.0 + half_m * half_m
    k1 = (c1 - half_m * c2) / den
    k2 = (half_m * c1 + c2) / den
    return mean_coeff, k1, k2


# ---------------------------------------------------------------------------
# finder

def _nelder_mead(f, x0, step, max_iter, rel_tol):
    """Plain simplex descent in 2-d; deterministic."""
    pts = [np.array(x0, dtype=float),
           np.array([x0[0] + step, x0[1]]),
           np.array([x0[0], x0[1] + step])]
    vals = [f(p) for p in pts]
    for _ in range(max_iter):
        order = np.argsort(vals, kind="stable")
        pts = [pts[i] for i in order]
        vals = [vals[i] for i in order]
        spread = abs(vals[2] - vals[0])
        if spread <= rel_tol * (abs(vals[0]) + 1e-300) + 1e-300:
            size = max(np.max(np.abs(pts[1] - pts[0])), np.max(np.abs(pts[2] - pts[0])))
            if size <= 1e-9:
                break
        centroid = 0.5 * (pts[0] + pts[1])
        xr = centroid + (centroid - pts[2])
        fr = f(xr)
        if fr < vals[0]:
            xe = centroid + 2.0 * (centroid - pts[2])
            fe = f(xe)
            pts[2], vals[2] = (xe, fe) if fe < fr else (xr, fr)
        elif fr < vals[1]:
            pts[2], vals[2] = xr, fr
        else:
            xc = centroid + 0.5 * (pts[2] - centroid)
            fc = f(xc)
            if fc < vals[2]:
                pts[2], vals[2] = xc, fc
            else:
                pts[1] = pts[0] + 0.5 * (pts[1] - pts[0])
                pts[2] = pts[0] + 0.5 * (pts[2] - pts[0])
                vals[1], vals[2] = f(pts[1]), f(pts[2])
    order = np.argsort(vals, kind="stable")
    return pts[order[0]], vals[order[0]]


def _residual_design(phase, window):
    """Slice and design matrix for fitting the sin/cos(2 alpha) content
    of a derivative series over the window.

    The slice is trimmed to a whole number of 2*alpha periods (so smooth
    trends do not leak into the oscillatory amplitudes through boundary
    terms) and the trend is absorbed by a polynomial whose degree grows
    with the number of periods available.
    """
    sl = _window_indices(phase.grid, window)
    alpha = phase.alpha[sl]
    span = abs(alpha[-1] - alpha[0])
    whole = math.pi * math.floor(span / math.pi)
    if whole >= math.pi:
        sgn = 1.0 if alpha[-1] >= alpha[0] else -1.0
        i0 = np.searchsorted(sgn * alpha, sgn * (alpha[-1] - sgn * whole))
        i0 = min(int(i0), len(alpha) - 8)
        alpha = alpha[i0:]
        sl = slice(sl.start + i0, sl.stop)
    x = phase.grid[sl]
    t = 2.0 * (x - x[0]) / (x[-1] - x[0]) - 1.0
    periods = abs(alpha[-1] - alpha[0]) / math.pi
    degree = 7 if periods >= 2.0 else (3 if periods >= 1.0 else 1)
    cols = [t ** k for k in range(degree + 1)]
    cols += [np.sin(2.0 * alpha), np.cos(2.0 * alpha)]
    return sl, np.column_stack(cols)


def _oscillation_residual(phase, window):
    """Amplitudes (k1, k2) of the sin/cos(2 alpha) content of v' over the
    window, after removing the polynomial trend.

    For the distinguished combination v' settles toward a constant and
    both amplitudes vanish; any other unit-determinant combination keeps
    an O(1) oscillating part, so this is the discriminating residual.
    """
    sl, X = _residual_design(phase, window)
    beta, *_ = np.linalg.lstsq(X, phase.v_prime[sl], rcond=None)
    return float(beta[-2]), float(beta[-1])


def _expand_window(phase, window, need_alpha):
    """Grow the window leftward until it spans need_alpha of phase."""
    grid, alpha = phase.grid, phase.alpha
    lo, hi = float(window[0]), float(window[1])
    i1 = min(np.searchsorted(grid, hi), len(grid) - 1)
    i0 = np.searchsorted(grid, lo)
    have = abs(alpha[i1] - alpha[i0]) if i0 < len(grid) else 0.0
    if have >= need_alpha:
        return (lo, hi), False
    total = abs(alpha[i1] - alpha[0])
    if total < need_alpha:
        return (float(grid[0]), hi), True
    sgn = 1.0 if alpha[-1] >= alpha[0] else -1.0
    target = alpha[i1] - sgn * need_alpha
    i0 = np.searchsorted(sgn * alpha, sgn * target)
    i0 = max(0, min(int(i0), i1 - 8))
    return (float(grid[i0]), hi), True


def find_principal(traj, window=None, opts=None):
    """Distinguished unit-determinant combination of an integrated pair.

    Minimizes the sample variance of vbar' over the window, subject to
    AB - C^2 = 1, A > 0, via the chart (p, m) -> (p, (1+m^2)/p, m); a
    coarse multistart grid is refined by simplex descent.  The window
    defaults to the last quarter of the span and grows leftward when it
    holds fewer than 3 periods of 2*alpha (short-span runs still resolve
    the combination when v' is close to constant).
    """
    if not traj.unit_wronskian:
        raise ParameterError("normalize the pair before searching (|w| != 1)")
    opts = opts or OptimizerSettings()
    phase = phase_unwrap(traj)
    x0, xmax = traj.x0, traj.xmax
    if window is None:
        window = (xmax - 0.25 * (xmax - x0), xmax)

    total_alpha = abs(phase.alpha[-1] - phase.alpha[0])
    if total_alpha < _MIN_FULL_SPAN_ALPHA:
        raise WindowError(
            f"trajectory spans only {total_alpha / math.pi:.2f} pi of phase; "
            "not enough oscillation to separate the pair")
    window, expanded = _expand_window(phase, window, 3.0 * math.pi)
    sl = _window_indices(phase.grid, window)
    alpha_span = abs(phase.alpha[sl][-1] - phase.alpha[sl][0])

    y1, d1 = traj.states[sl, 0], traj.states[sl, 1]
    y2, d2 = traj.states[sl, 2], traj.states[sl, 3]
    g = np.vstack([2.0 * y1 * d1, 2.0 * y2 * d2, 2.0 * (d1 * y2 + y1 * d2)])
    mu = g.mean(axis=1)
    cov = (g @ g.T) / g.shape[1] - np.outer(mu, mu)

    def objective(u, m):
        p = math.exp(u)
        A, B, C = p, (1.0 + m * m) / p, m
        w = np.array([A, B, C])
        return float(w @ cov @ w)

    starts = []
    ln2 = math.log(2.0)
    msteps = np.arange(-opts.grid_m_max, opts.grid_m_max + 1e-9, opts.grid_m_step)
    for k in opts.grid_p_exponents:
        for m in msteps:
            u = k * ln2
            starts.append((objective(u, float(m)), u, float(m)))
    starts.sort(key=lambda t: (t[0], abs(t[2]), abs(t[1])))

    best = []
    for j0, u0, m0 in starts[:opts.n_refine]:
        xz, fz = _nelder_mead(lambda x: objective(x[0], x[1]), (u0, m0),
                              0.25, opts.max_iter, opts.simplex_rel_tol)
        best.append((fz, float(xz[0]), float(xz[1])))
    fmin = min(b[0] for b in best)
    ties = [b for b in best if b[0] <= fmin + _TIE_TOL * max(1.0, abs(fmin))]
    # deterministic gauge: prefer small |C|, then small |A - B|
    def tie_key(b):
        p, m = math.exp(b[1]), b[2]
        return (abs(m), abs(p - (1.0 + m * m) / p))
    fbest, ubest, mbest = min(ties, key=tie_key)

    # The variance optimum is biased by the covariance of the smooth
    # trend of vbar' with the oscillatory basis over a finite window.
    # Polish by solving for the combination whose fitted sin/cos(2 alpha)
    # amplitudes vanish: with the phase basis frozen those amplitudes are
    # linear in (A, B, C), leaving a 2x2 Newton problem in (p, m).
    p, m = math.exp(ubest), mbest
    for _ in range(2):
        coeffs = CombinationCoefficients(p, (1.0 + m * m) / p, m)
        transformed = transform_pair(traj, coefficient_matrix(coeffs))
        phase_t = phase_unwrap(transformed)
        sl2, X = _residual_design(phase_t, window)
        y1w, d1w = traj.states[sl2, 0], traj.states[sl2, 1]
        y2w, d2w = traj.states[sl2, 2], traj.states[sl2, 3]
        gcols = np.column_stack([2.0 * y1w * d1w, 2.0 * y2w * d2w,
                                 2.0 * (d1w * y2w + y1w * d2w)])
        amps, *_ = np.linalg.lstsq(X, gcols, rcond=None)
        u, vv, ww = amps[-2:, 0], amps[-2:, 1], amps[-2:, 2]
        ok = True
        for _ in range(5):
            F = p * u + ((1.0 + m * m) / p) * vv + m * ww
            Jac = np.column_stack([u - ((1.0 + m * m) / (p * p)) * vv,
                                   ww + (2.0 * m / p) * vv])
            try:
                delta = np.linalg.solve(Jac, -F)
            except np.linalg.LinAlgError:
                ok = False
                break
            step = float(np.max(np.abs(delta)))
            if not math.isfinite(step) or step > 0.25 * max(p, 1.0):
                ok = False
                break
            p, m = p + float(delta[0]), m + float(delta[1])
            if p <= 0:
                p, m, ok = math.exp(ubest), mbest, False
                break
            if step < 1e-14 * (1.0 + abs(p) + abs(m)):
                break
        if not ok:
            p, m = math.exp(ubest), mbest
            break

    coeffs = CombinationCoefficients(p, (1.0 + m * m) / p, m)
    matrix = coefficient_matrix(coeffs)
    transformed = transform_pair(traj, matrix)
    phase_t = phase_unwrap(transformed)
    k1, k2 = _oscillation_residual(phase_t, window)
    fbest = objective(math.log(p), m)
    tag, L, K, diag = _classify_series(phase_t, tol=1e-3)
    residual = math.hypot(k1, k2)
    if residual > opts.residual_tol:
        tag, L, K = "undetermined", None, None
        diag["residual_above_tol"] = residual
    diag.update({"window_expanded": expanded, "alpha_span": alpha_span})
    return PrincipalReport(coeffs=coeffs, classification=tag, L=L, K=K,
                           k1_est=k1, k2_est=k2, objective=fbest,
                           window=(float(window[0]), float(window[1])),
                           matrix=matrix, diagnostics=diag)


# ---------------------------------------------------------------------------
# classifier

def _windowed_means(grid, values, t_end, t_start, n_windows=4):
    """Length-weighted means over dyadic windows ending at t_end."""
    means, bounds = [], []
    hi = t_end
    for _ in range(n_windows):
        lo = t_start + 0.5 * (hi - t_start)
        if hi - lo <= 0:
            break
        i0, i1 = np.searchsorted(grid, [lo, hi])
        i1 = min(i1, len(grid))
        if i1 - i0 < 4:
            break
        x = grid[i0:i1]
        y = values[i0:i1]
        means.append(float(np.trapezoid(y, x) / (x[-1] - x[0])))
        bounds.append((float(lo), float(hi)))
        hi = lo
    means.reverse()
    bounds.reverse()
    return means, bounds


def _aitken(seq, floor):
    """Limit estimate of a window-mean sequence; exact for geometric decay."""
    if len(seq) < 3:
        return seq[-1]
    a1, a2, a3 = seq[-3], seq[-2], seq[-1]
    d1, d2 = a2 - a1, a3 - a2
    if abs(d2) <= floor:
        return a3
    denom = d2 - d1
    if abs(denom) <= 0.02 * abs(d2):
        return a3  # near-linear drift; no safe extrapolation
    r = d2 / d1 if d1 != 0 else 0.0
    if not -0.99 < r < 0.99:
        return a3
    return a3 - d2 * d2 / denom


def _osc_amplitude(phase, sl):
    """Amplitude of the 2*alpha oscillation in v and v' over a slice."""
    vp = phase.v_prime[sl]
    v = phase.v[sl]
    if phase.alpha is not None:
        s2, c2 = np.sin(2.0 * phase.alpha[sl]), np.cos(2.0 * phase.alpha[sl])
        X = np.column_stack([np.ones_like(s2), s2, c2])
        beta_p, *_ = np.linalg.lstsq(X, vp, rcond=None)
        beta_v, *_ = np.linalg.lstsq(X, v, rcond=None)
        return math.hypot(beta_p[1], beta_p[2]), math.hypot(beta_v[1], beta_v[2])
    det_p = vp - np.polyval(np.polyfit(phase.grid[sl], vp, 1), phase.grid[sl])
    det_v = v - np.polyval(np.polyfit(phase.grid[sl], v, 1), phase.grid[sl])
    return (float(np.sqrt(2.0 * np.mean(det_p ** 2))),
            float(np.sqrt(2.0 * np.mean(det_v ** 2))))


def _classify_series(phase, tol):
    grid = phase.grid
    t0, T = float(grid[0]), float(grid[-1])
    M, bounds = _windowed_means(grid, phase.v, T, t0)
    m, _ = _windowed_means(grid, phase.v_prime, T, t0)
    diag = {"v_means": M, "vp_means": m, "windows": bounds}
    if len(M) < 2:
        diag["reason"] = "span too short for dyadic windows"
        return "undetermined", None, None, diag

    i0 = np.searchsorted(grid, bounds[-1][0])
    sl = slice(i0, len(grid))
    osc_p, osc_v = _osc_amplitude(phase, sl)
    diag["osc_vprime"] = osc_p
    diag["osc_v"] = osc_v

    ratios = [M[i + 1] / M[i] for i in range(len(M) - 1)] if min(M) > 0 else []
    diag["v_mean_ratios"] = ratios
    floor_m = 1e-8 * (1.0 + abs(m[-1]))
    K_est = _aitken(m, floor_m)

    decreasing = ratios and all(r <= 0.95 for r in ratios)
    increasing = ratios and all(r >= 1.05 for r in ratios)
    stable = ratios and all(0.95 < r < 1.05 for r in ratios) \
        and abs(M[-1] - M[-2]) <= tol * max(abs(M[-1]), tol)

    if decreasing and len(M) >= 3:
        lo, hi = min(ratios), max(ratios)
        if hi / max(lo, 1e-300) <= 1.5 or M[-1] < tol:
            return "L-zero", 0.0, K_est, diag
        diag["reason"] = "inconsistent decay rates"
        return "undetermined", None, None, diag
    if stable:
        if osc_v <= 5.0 * tol * max(M[-1], tol) and M[-1] > tol:
            return "L-finite", M[-1], None, diag
        diag["reason"] = "window means stable but v oscillates at window scale"
        return "undetermined", None, None, diag
    if increasing:
        dm = [m[i + 1] - m[i] for i in range(len(m) - 1)]
        converging = (abs(dm[-1]) <= floor_m
                      or (len(dm) >= 2 and abs(dm[-1]) <= 0.95 * abs(dm[-2]) + floor_m))
        if converging and K_est >= -tol and math.isfinite(K_est):
            return "L-infinite", None, max(K_est, 0.0), diag
        diag["reason"] = "v grows but v' does not settle"
        return "undetermined", None, None, diag
    diag["reason"] = "window means neither settle nor trend"
    return "undetermined", None, None, diag


def classify(phase, window=None, tol=1e-3):
    """Limit classification of an amplitude series over dyadic windows.

    Returns (tag, L, K, diagnostics) with tag one of 'L-finite',
    'L-zero', 'L-infinite', 'undetermined'.  Window means of v decide the
    trend; the limit of v' is estimated by extrapolating the window-mean
    sequence (exact when the means decay geometrically, as they do for
    power-law v').  'undetermined' is a first-class outcome, reported
    whenever the indicators conflict.
    """
    grid = phase.grid
    span = float(grid[-1] - grid[0])
    if window is not None:
        wlen = float(window[1]) - float(window[0])
        if span < 3.99 * wlen:
            raise WindowError(
                f"classification span {span} is less than 4x the window {wlen}")
    return _classify_series(phase, tol)


# ---------------------------------------------------------------------------
# hypothesis predicates

@dataclass(frozen=True)
class PredicateResult:
    status: str                  # holds | fails | not-decidable
    first_fail_x: float | None
    n_fail: int
    n_checked: int
    note: str = ""


@dataclass(frozen=True)
class PredicateReport:
    corollary1: PredicateResult
    corollary2: PredicateResult
    remark_finite_q: PredicateResult
    q_trend: str                 # divergent | finite-positive | decaying | unclear
    q_limit_estimate: float | None
    grid: np.ndarray


def _sign_check(values, sign, slack):
    """Count where sign*values < -slack; return (n_fail, first_index)."""
    bad = sign * values < -slack
    n = int(bad.sum())
    first = int(np.argmax(bad)) if n else None
    return n, first


def sufficient_conditions(model, span, grid_n=64):
    """Evaluate the two sufficient-condition hypothesis sets on a log grid.

    corollary1:  q' >= 0, q'' <= 0 and q -> infinity
    corollary2:  q' <= 0 and q q'' - 3 q'^2 >= 0
    remark:      q' >= 0, q'' <= 0 and q tends to a finite positive limit

    Report-only; each predicate comes back with holds / fails (and where)
    / not-decidable, plus the estimated trend of q from the last dyadic
    windows.
    """
    if grid_n < 16:
        raise ParameterError("need grid_n >= 16")
    lo, hi = float(span[0]), float(span[1])
    if not hi > lo:
        raise ParameterError(f"empty span {span}")
    lo_eff = lo if lo > 0 else max(1e-4 * (hi - lo), 1e-12)
    xs = np.geomspace(lo_eff, hi, grid_n)
    q = model.q_array(xs)
    qp = model.q_prime_array(xs)
    qpp = model.q_second_array(xs)
    slack_p = 1e-12 * (1.0 + np.abs(qp))
    slack_pp = 1e-12 * (1.0 + np.abs(qpp))
    h22 = q * qpp - 3.0 * qp * qp
    # slack tied to the size of the terms forming the expression, so the
    # sign test stays decisive where q q'' - 3 q'^2 decays toward zero
    slack_22 = 1e-12 * (np.abs(q * qpp) + 3.0 * qp * qp + 1e-300)

    # trend of q from the last two index-quartile blocks of the log grid
    quarter = grid_n // 4
    m_last = float(np.mean(q[-quarter:]))
    m_prev = float(np.mean(q[-2 * quarter:-quarter]))
    if m_last > 0 and m_prev > 0:
        growth = m_last / m_prev
        if growth > 1.2:
            trend, q_lim = "divergent", None
        elif growth < 1.0 / 1.2:
            trend, q_lim = "decaying", 0.0
        else:
            trend, q_lim = "finite-positive", m_last
    else:
        trend, q_lim = "unclear", None

    n1p, i1p = _sign_check(qp, 1.0, slack_p)     # q' >= 0
    n1pp, i1pp = _sign_check(-qpp, 1.0, slack_pp)  # q'' <= 0
    n1 = n1p + n1pp
    if n1 > 0:
        first = xs[i1p] if n1p else xs[i1pp]
        c1 = PredicateResult("fails", float(first), n1, grid_n,
                             "sign hypotheses fail")
    elif trend == "divergent":
        c1 = PredicateResult("holds", None, 0, grid_n, "")
    else:
        c1 = PredicateResult("not-decidable", None, 0, grid_n,
                             f"signs hold but q trend is {trend}")

    n2p, i2p = _sign_check(-qp, 1.0, slack_p)    # q' <= 0
    n2h, i2h = _sign_check(h22, 1.0, slack_22)   # q q'' - 3 q'^2 >= 0
    if n2p > 0:
        c2 = PredicateResult("fails", float(xs[i2p]), n2p, grid_n,
                             "q' changes sign")
    elif n2h > 0:
        c2 = PredicateResult("fails", float(xs[i2h]), n2h, grid_n,
                             "curvature inequality q q'' - 3 q'^2 >= 0 fails")
    else:
        c2 = PredicateResult("holds", None, 0, grid_n, "")

    if n1 > 0:
        first = xs[i1p] if n1p else xs[i1pp]
        rm = PredicateResult("fails", float(first), n1, grid_n,
                             "sign hypotheses fail")
    elif trend == "finite-positive":
        rm = PredicateResult("holds", None, 0, grid_n,
                             f"q levels off near {q_lim:.6g}")
    else:
        rm = PredicateResult("not-decidable", None, 0, grid_n,
                             f"signs hold but q trend is {trend}")

    return PredicateReport(corollary1=c1, corollary2=c2, remark_finite_q=rm,
                           q_trend=trend, q_limit_estimate=q_lim, grid=xs)
