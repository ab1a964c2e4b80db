import math

import numpy as np
import pytest

from oscpairs.errors import ParameterError, WindowError
from oscpairs.zeros import critical_point_residual, gap_table, zeros_of


def test_zeros_of_sine(run_constant):
    z = zeros_of(run_constant.traj, "y1", (0.1, 10.0))
    assert np.max(np.abs(z - np.array([1, 2, 3]) * math.pi)) <= 1e-10


def test_zeros_of_cosine_derivative(run_constant):
    z = zeros_of(run_constant.traj, "y1p", (0.1, 10.0))
    assert np.max(np.abs(z - (np.arange(3) + 0.5) * math.pi)) <= 1e-10


def test_zeros_empty_result(run_constant):
    z = zeros_of(run_constant.traj, "y1", (0.1, 3.0))
    assert len(z) == 0 or np.all(z <= 3.0)
    z = zeros_of(run_constant.traj, "y1", (3.5, 6.0))
    assert len(z) == 0


def test_zeros_invalid_target(run_constant):
    with pytest.raises(ParameterError):
        zeros_of(run_constant.traj, "y5")


def test_cauchy_euler_zero_ratios():
    # zeros of y2 = sqrt(x) cos(s log x) are geometric with ratio e^{pi/s}
    from oscpairs.integrate import integrate_pair
    from oscpairs.qfunc import catalog_get
    model = catalog_get("cauchy-euler", {"gamma": 1.0})
    s = model.params["s"]
    traj = integrate_pair(model, (0.0, s), (1.0, 0.5),
                          math.exp(4.0 * math.pi), rtol=1e-12)
    z = zeros_of(traj, "y2", (1.0, math.exp(4.0 * math.pi)))
    assert len(z) >= 3
    ratios = z[1:] / z[:-1]
    assert np.max(np.abs(ratios - math.exp(math.pi / s))
                  / math.exp(math.pi / s)) <= 1e-8


def test_gap_table_constant(run_constant):
    table = gap_table(run_constant.traj, run_constant.phase, (0.1, 50.0))
    assert np.max(table.gap) <= 1e-9
    assert np.all(np.diff(table.x_crit) > 0)
    assert np.all(table.phase_gap <= math.pi / 2 + 1e-15)


def test_gap_table_gen_airy_tail(run_genairy):
    table = gap_table(run_genairy.principal, run_genairy.principal_phase,
                      (1.0, 200.0))
    assert len(table.j) >= 30
    assert np.all(np.diff(table.gap[-10:]) < 0)
    assert table.d_last <= 1e-4
    assert table.d_last < table.d_first / 10.0


def test_gap_table_cauchy_euler_offset(run_ce_long):
    table = gap_table(run_ce_long.principal, run_ce_long.principal_phase,
                      (1.0, 5e7))
    assert np.max(np.abs(table.phase_gap - math.pi / 6.0)) <= 1e-6


def test_gap_table_too_few_zeros(run_constant):
    with pytest.raises(WindowError):
        gap_table(run_constant.traj, run_constant.phase, (0.1, 8.0))


def test_critical_point_residual_constant(run_constant):
    crit = zeros_of(run_constant.traj, "y1p", (0.1, 50.0))
    stats = critical_point_residual(run_constant.traj, run_constant.phase, crit)
    assert stats.max <= 1e-9


def test_critical_point_residual_cauchy_euler(run_ce_long):
    # both sides of the critical-point condition equal -1/(2s) = -1/sqrt(3)
    ph = run_ce_long.principal_phase
    which = "y2p" if ph.swapped else "y1p"
    crit = zeros_of(run_ce_long.principal, which, (1.0, 5e7))
    stats = critical_point_residual(run_ce_long.principal, ph, crit)
    assert stats.max <= 1e-6
    alpha = ph.alpha_at(crit)
    cot = np.cos(alpha) / np.sin(alpha)
    assert np.max(np.abs(cot + 1.0 / math.sqrt(3.0))) <= 1e-6


def test_critical_point_residual_gen_airy(run_genairy):
    ph = run_genairy.principal_phase
    crit = zeros_of(run_genairy.principal, "y1p", (1.0, 200.0))[:30]
    stats = critical_point_residual(run_genairy.principal, ph, crit)
    assert stats.max <= 1e-6


def test_interlacing(run_genairy):
    z1 = zeros_of(run_genairy.principal, "y1", (1.0, 200.0))
    z2 = zeros_of(run_genairy.principal, "y2", (1.0, 200.0))
    between = np.searchsorted(z2, z1[1:]) - np.searchsorted(z2, z1[:-1])
    assert np.all(between == 1)


def test_zero_count_matches_phase(run_genairy):
    ph = run_genairy.principal_phase
    z1 = zeros_of(run_genairy.principal, "y1", (1.0, 200.0))
    dalpha = ph.alpha[-1] - ph.alpha_at(1.0)
    assert abs(len(z1) - math.floor(dalpha / math.pi)) <= 1


def test_csv_serialization(run_constant):
    table = gap_table(run_constant.traj, run_constant.phase, (0.1, 50.0))
    text = table.to_csv(include_summary=True)
    lines = text.strip().split("\n")
    assert lines[0] == "j,x_crit,x_zero,gap,phase_gap"
    assert lines[-1].startswith("# summary:")
    first = lines[1].split(",")
    assert int(first[0]) == 1
    assert float(first[1]) == pytest.approx(math.pi / 2, abs=1e-9)
    # 17 significant digits survive the round trip
    assert float(first[1]) == table.x_crit[0]
