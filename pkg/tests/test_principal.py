import math

import numpy as np
import pytest

from oscpairs.errors import ParameterError, WindowError
from oscpairs.phasekit import phase_unwrap
from oscpairs.principal import (CombinationCoefficients, classify,
                                coefficient_matrix, decompose_oscillation,
                                find_principal, sufficient_conditions,
                                transform_pair, _oscillation_residual)
from oscpairs.qfunc import catalog_get
from oscpairs.verify import unimodular_scrambles


def test_rotation_preserves_amplitude(run_constant):
    c, s = math.cos(math.pi / 4), math.sin(math.pi / 4)
    rot = transform_pair(run_constant.traj, (c, s, -s, c))
    v0 = run_constant.traj.states[:, 0] ** 2 + run_constant.traj.states[:, 2] ** 2
    v1 = rot.states[:, 0] ** 2 + rot.states[:, 2] ** 2
    assert np.max(np.abs(v1 - v0)) <= 1e-12


def test_shear_preserves_wronskian_changes_amplitude(run_constant):
    # (sin, cos) -> (sin, sin + cos): unit determinant, same Wronskian,
    # amplitude becomes sin^2 + (sin + cos)^2
    sheared = transform_pair(run_constant.traj, (1.0, 0.0, 1.0, 1.0))
    assert sheared.w == pytest.approx(run_constant.traj.w)
    y1 = run_constant.traj.states[:, 0]
    y2 = run_constant.traj.states[:, 2]
    v_expect = y1 ** 2 + (y1 + y2) ** 2
    v_got = sheared.states[:, 0] ** 2 + sheared.states[:, 2] ** 2
    assert np.max(np.abs(v_got - v_expect)) <= 1e-12
    assert np.max(np.abs(v_expect - (y1 ** 2 + y2 ** 2))) > 0.1


def test_scaling_scales_wronskian(run_constant):
    scaled = transform_pair(run_constant.traj, (2.0, 0.0, 0.0, 1.0))
    assert scaled.w == pytest.approx(2.0 * run_constant.traj.w)


def test_singular_matrix_rejected(run_constant):
    with pytest.raises(ParameterError):
        transform_pair(run_constant.traj, (1.0, 2.0, 2.0, 4.0))


def test_combination_coefficients_validation():
    c = CombinationCoefficients.unit(2.0, 1.0, -1.0)
    assert c.unit_determinant
    with pytest.raises(ParameterError):
        CombinationCoefficients.unit(2.0, 1.0, 0.5)


def test_coefficient_matrix_realizes_form():
    c = CombinationCoefficients.unit(2.0, 1.0, -1.0)
    a, b, cc, d = coefficient_matrix(c)
    assert a * a + cc * cc == pytest.approx(c.A)
    assert b * b + d * d == pytest.approx(c.B)
    assert a * b + cc * d == pytest.approx(c.C)
    assert a * d - b * cc == pytest.approx(1.0)


def test_decompose_principal_combination(run_constant):
    ph = phase_unwrap(run_constant.traj)
    _, k1, k2 = decompose_oscillation(run_constant.traj, ph, (1.0, 1.0, 0.0),
                                      (37.5, 50.0))
    assert abs(k1) <= 1e-8 and abs(k2) <= 1e-8


def test_decompose_known_combinations(run_constant):
    # vbar = 2 sin^2 + cos^2/2 = 5/4 - (3/4) cos 2x  =>  vbar' = (3/2) sin 2x
    ph = phase_unwrap(run_constant.traj)
    _, k1, k2 = decompose_oscillation(run_constant.traj, ph, (2.0, 0.5, 0.0),
                                      (37.5, 50.0))
    assert k1 == pytest.approx(1.5, abs=1e-7)
    assert k2 == pytest.approx(0.0, abs=1e-7)
    _, k1, k2 = decompose_oscillation(run_constant.traj, ph, (1.0, 2.0, 1.0),
                                      (37.5, 50.0))
    assert k1 == pytest.approx(-1.0, abs=1e-6)
    assert k2 == pytest.approx(2.0, abs=1e-6)


def test_decompose_window_guard(run_constant):
    ph = phase_unwrap(run_constant.traj)
    with pytest.raises(WindowError):
        decompose_oscillation(run_constant.traj, ph, (1.0, 1.0, 0.0),
                              (49.0, 50.0))


def test_find_principal_identity(run_constant):
    rep = run_constant.report
    assert rep.coeffs.A == pytest.approx(1.0, abs=1e-6)
    assert rep.coeffs.B == pytest.approx(1.0, abs=1e-6)
    assert rep.coeffs.C == pytest.approx(0.0, abs=1e-6)
    assert abs(rep.objective) <= 1e-12


def test_find_principal_diagonal_scramble(run_constant):
    r2 = math.sqrt(2.0)
    scr = transform_pair(run_constant.traj, (r2, 0.0, 0.0, 1.0 / r2))
    rep = find_principal(scr)
    assert rep.coeffs.A == pytest.approx(0.5, abs=1e-6)
    assert rep.coeffs.B == pytest.approx(2.0, abs=1e-6)
    assert rep.coeffs.C == pytest.approx(0.0, abs=1e-6)
    vbar = transform_pair(scr, rep.matrix)
    v = vbar.states[:, 0] ** 2 + vbar.states[:, 2] ** 2
    assert np.max(np.abs(v - 1.0)) <= 1e-8


def test_find_principal_shear_scramble(run_constant):
    # (sin, sin + cos): A sin^2 + B (sin+cos)^2 + 2C sin(sin+cos) = 1
    # forces (A, B, C) = (2, 1, -1)
    scr = transform_pair(run_constant.traj, (1.0, 0.0, 1.0, 1.0))
    rep = find_principal(scr)
    assert rep.coeffs.A == pytest.approx(2.0, abs=1e-6)
    assert rep.coeffs.B == pytest.approx(1.0, abs=1e-6)
    assert rep.coeffs.C == pytest.approx(-1.0, abs=1e-6)


def test_find_principal_matches_lattice_oracle(run_genairy):
    # coarse exhaustive search over the constraint chart must not beat
    # the refined optimum
    traj = run_genairy.traj
    rep = run_genairy.report
    wlo, whi = rep.window
    ph = phase_unwrap(traj)
    sel = (ph.grid >= wlo) & (ph.grid <= whi)
    y1, d1 = traj.states[sel, 0], traj.states[sel, 1]
    y2, d2 = traj.states[sel, 2], traj.states[sel, 3]

    def objective(p, m):
        A, B, C = p, (1 + m * m) / p, m
        vbp = 2 * A * y1 * d1 + 2 * B * y2 * d2 + 2 * C * (d1 * y2 + y1 * d2)
        return float(np.var(vbp))

    best = min(objective(2.0 ** k, m)
               for k in range(-4, 5) for m in np.arange(-2.0, 2.01, 0.25))
    found = objective(rep.coeffs.A, rep.coeffs.C)
    assert found <= best * (1.0 + 1e-9) + 1e-18


def test_classify_constant(run_constant):
    tag, L, K, _ = classify(run_constant.principal_phase)
    assert tag == "L-finite"
    assert L == pytest.approx(1.0, abs=1e-8)


def test_classify_gen_airy(run_genairy):
    tag, L, K, _ = classify(run_genairy.principal_phase)
    assert tag == "L-zero"
    assert abs(K) <= 1e-4


def test_classify_cauchy_euler(run_ce):
    tag, L, K, _ = classify(run_ce.principal_phase)
    assert tag == "L-infinite"
    s = run_ce.model.params["s"]
    assert K == pytest.approx(1.0 / s, abs=1e-4)


def test_classify_window_precondition(run_constant):
    with pytest.raises(WindowError):
        classify(run_constant.principal_phase, window=(10.0, 40.0))


def test_classify_scrambled_constant_is_undetermined(run_constant):
    scr = transform_pair(run_constant.traj, (1.0, 0.0, 1.0, 1.0))
    tag, L, K, diag = classify(phase_unwrap(scr))
    assert tag == "undetermined"


def test_orthogonal_invariance(run_ce):
    # rotations of the distinguished pair keep the tag and the limit
    base_tag, _, base_K, _ = classify(run_ce.principal_phase)
    rng = np.random.default_rng(5)
    for ang in rng.uniform(0.0, math.pi, 3):
        c, s = math.cos(ang), math.sin(ang)
        rot = transform_pair(run_ce.principal, (c, s, -s, c))
        tag, _, K, _ = classify(phase_unwrap(rot))
        assert tag == base_tag
        assert K == pytest.approx(base_K, abs=1e-6)


def test_objective_invariance(run_constant):
    # the variance functional is basis-independent once coefficients are
    # pulled back through the transformation
    traj = run_constant.traj
    S = np.array([[1.3, 0.4], [0.5, (1 + 0.4 * 0.5) / 1.3]])
    S[1, 1] = (1.0 + S[0, 1] * S[1, 0]) / S[0, 0]  # det = 1
    scr = transform_pair(traj, (S[0, 0], S[0, 1], S[1, 0], S[1, 1]))

    def var_of(t, A, B, C):
        sel = t.mesh >= 37.5
        y1, d1 = t.states[sel, 0], t.states[sel, 1]
        y2, d2 = t.states[sel, 2], t.states[sel, 3]
        vbp = 2 * A * y1 * d1 + 2 * B * y2 * d2 + 2 * C * (d1 * y2 + y1 * d2)
        return float(np.var(vbp))

    Q2 = np.array([[1.7, -0.3], [-0.3, (1 + 0.09) / 1.7]])
    Q1 = S.T @ Q2 @ S
    j_direct = var_of(scr, Q2[0, 0], Q2[1, 1], Q2[0, 1])
    j_pulled = var_of(traj, Q1[0, 0], Q1[1, 1], Q1[0, 1])
    assert abs(j_direct - j_pulled) <= 1e-8 * max(1.0, j_direct)


def test_residual_separates_principal_member(run_genairy):
    # a scrambled pair classifies as decaying too, but only the
    # distinguished combination has a vanishing oscillation residual
    M = unimodular_scrambles(99, n=1)[0]
    scr = transform_pair(run_genairy.traj, M)
    ph_scr = phase_unwrap(scr)
    tag, _, _, _ = classify(ph_scr)
    assert tag in ("L-zero", "undetermined")
    k_scr = _oscillation_residual(ph_scr, run_genairy.report.window)
    assert math.hypot(*k_scr) > 1e-2
    rep = find_principal(scr)
    assert math.hypot(rep.k1_est, rep.k2_est) <= 1e-5


def test_scramble_recovery_matches_unscrambled(run_inversex):
    ph_ref = run_inversex.principal_phase
    wlo, whi = run_inversex.report.window
    tail = (ph_ref.grid >= wlo) & (ph_ref.grid <= whi)
    vref = ph_ref.v[tail]
    for M in unimodular_scrambles(7, n=3):
        scr = transform_pair(run_inversex.traj, M)
        rep = find_principal(scr)
        ph = phase_unwrap(transform_pair(scr, rep.matrix))
        assert np.max(np.abs(ph.v[tail] - vref) / vref) <= 1e-5


def test_find_principal_deterministic(run_ce):
    r1 = find_principal(run_ce.traj)
    r2 = find_principal(run_ce.traj)
    assert (r1.coeffs.A, r1.coeffs.B, r1.coeffs.C) == \
        (r2.coeffs.A, r2.coeffs.B, r2.coeffs.C)


def test_sufficient_conditions_gen_airy():
    model = catalog_get("gen-airy", {"nu": 1.0 / 3.0})
    rep = sufficient_conditions(model, (1.0, 200.0))
    assert rep.corollary1.status == "holds"
    assert rep.q_trend == "divergent"


def test_sufficient_conditions_cauchy_euler():
    model = catalog_get("cauchy-euler", {"gamma": 1.0})
    rep = sufficient_conditions(model, (1.0, 500.0))
    assert rep.corollary2.status == "fails"
    assert rep.corollary2.n_fail == rep.corollary2.n_checked
    # q' <= 0 holds; the curvature inequality is what fails:
    # q q'' - 3 q'^2 = -6 gamma^4 / x^6 < 0
    x = 2.0
    q, qp, qpp = model.evaluate(x)
    assert q * qpp - 3 * qp * qp == pytest.approx(-6.0 / x ** 6)


def test_sufficient_conditions_constant():
    model = catalog_get("constant", {"c": 1.0})
    rep = sufficient_conditions(model, (0.0, 50.0))
    assert rep.corollary2.status == "holds"
    assert rep.remark_finite_q.status == "holds"
    assert rep.q_trend == "finite-positive"


def test_sufficient_conditions_grid_guard():
    model = catalog_get("constant", {"c": 1.0})
    with pytest.raises(ParameterError):
        sufficient_conditions(model, (0.0, 50.0), grid_n=8)
