import math

import numpy as np
import pytest

from oscpairs.errors import ParameterError
from oscpairs.integrate import sample
from oscpairs.specfun import (_propagate, _series_jy, bessel_jy, example1_v,
                              gamma, modulus)

TWO_OVER_PI = 2.0 / math.pi


def test_gamma_half():
    assert abs(gamma(0.5) - math.sqrt(math.pi)) <= 1e-12


def test_gamma_recursion():
    rng = np.random.default_rng(11)
    for z in rng.uniform(0.1, 5.0, 12):
        assert gamma(z + 1.0) == pytest.approx(z * gamma(z), rel=1e-13)
    assert gamma(5.0) == pytest.approx(24.0, rel=1e-13)


def test_half_order_closed_forms():
    # J_{1/2}(t) = sqrt(2/(pi t)) sin t, Y_{1/2}(t) = -sqrt(2/(pi t)) cos t
    v = bessel_jy(0.5, math.pi / 2.0)
    assert v.J == pytest.approx(TWO_OVER_PI, abs=1e-12)
    v = bessel_jy(0.5, math.pi)
    assert v.Y == pytest.approx(math.sqrt(2.0) / math.pi, abs=1e-12)


def test_method_tag_switches_at_two():
    assert bessel_jy(0.3, 1.5).method == "series"
    assert bessel_jy(0.3, 2.5).method == "propagated"


def test_two_route_consistency():
    # series value at t = 2 vs propagation restarted from t = 1
    for nu in (0.2, 1.0 / 3.0, 0.45):
        j2, _, y2, _ = _series_jy(nu, 2.0)
        traj = _propagate(nu, 1.0, 2.5)
        uj, _, uy, _ = sample(traj, 2.0)
        assert abs(uj / math.sqrt(2.0) - j2) <= 1e-10
        assert abs(uy / math.sqrt(2.0) - y2) <= 1e-10


def test_wronskian_relation():
    # u_J u_Y' - u_J' u_Y = 2/pi all along the propagation, which is the
    # normal-form version of J Y' - J' Y = 2/(pi t)
    for nu in (0.1, 1.0 / 3.0, 0.45):
        traj = _propagate(nu, 2.0, 100.0)
        idx = np.unique(np.searchsorted(
            traj.mesh, np.geomspace(2.5, 99.0, 20)))
        w = traj.wronskian_nodes()[idx]
        assert np.max(np.abs(w - TWO_OVER_PI)) <= 1e-9 * TWO_OVER_PI


def test_scipy_oracle():
    special = pytest.importorskip("scipy.special")
    worst = 0.0
    for nu in (0.1, 0.25, 1.0 / 3.0, 0.45, 0.5, 0.9):
        for t in (0.05, 0.5, 1.9, 2.1, 8.0, 31.0, 99.0):
            got = bessel_jy(nu, t)
            worst = max(worst, abs(got.J - special.jv(nu, t)),
                        abs(got.Y - special.yv(nu, t)))
    assert worst <= 1e-10


def test_modulus_half_order_constant():
    for t in (0.3, 1.0, 5.0, 21.0, 80.0):
        assert abs(modulus(0.5, t) - TWO_OVER_PI) <= 1e-10


def test_modulus_increases_to_two_over_pi():
    ts = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0]
    ms = [modulus(1.0 / 3.0, t) for t in ts]
    assert all(m2 > m1 for m1, m2 in zip(ms, ms[1:]))
    assert abs(ms[-1] - TWO_OVER_PI) <= 0.01 * TWO_OVER_PI


def test_modulus_asymptotic_band():
    # loose sanity band |M - 2/pi| <= (2/pi)/(4 t^2) at t = 64
    m = modulus(1.0 / 3.0, 64.0)
    assert abs(m - TWO_OVER_PI) <= TWO_OVER_PI / (4.0 * 64.0 ** 2)


@pytest.mark.parametrize("nu", [0.1, 0.25, 1.0 / 3.0, 0.45])
def test_modulus_monotone_on_log_grid(nu):
    ts = np.geomspace(0.1, 100.0, 200)
    ms = np.array([modulus(nu, t) for t in ts])
    assert np.all(np.diff(ms) > 0)
    assert np.all(ms < TWO_OVER_PI)


def test_example1_v_half_order():
    for x in (0.5, 1.0, 7.3, 50.0):
        assert abs(example1_v(0.5, x) - TWO_OVER_PI) <= 1e-12


def test_example1_v_asymptotic():
    # x^(1/2) v -> 3/pi for nu = 1/3
    nu = 1.0 / 3.0
    v = example1_v(nu, 100.0)
    assert abs(v * 10.0 - 3.0 / math.pi) <= 0.01 * 3.0 / math.pi


def test_example1_v_cross_module_with_wronskian_factor(run_genairy):
    # the catalog equation's distinguished amplitude equals
    # nu*pi * x * (J^2 + Y^2)(x^(1/(2nu))): the closed-form pair carries
    # Wronskian 1/(nu pi), which the unit normalization divides out
    nu = 1.0 / 3.0
    ph = run_genairy.principal_phase
    for x in (10.0, 50.0, 100.0):
        i = int(np.searchsorted(ph.grid, x))
        xg = float(ph.grid[i])
        t = xg ** (1.0 / (2.0 * nu))
        v_closed = nu * math.pi * (xg / t) * modulus(nu, t)
        assert abs(v_closed - ph.v[i]) / abs(ph.v[i]) <= 1e-4


def test_complete_monotonicity_spot_check():
    from oscpairs.verify import catalog_run
    run = catalog_run("gen-airy-0.4")
    ph = run.principal_phase
    idx = np.searchsorted(ph.grid, np.linspace(2.0, 200.0, 50))
    assert np.all(ph.v[idx] > 0)
    assert np.all(ph.v_prime[idx] < 0)
    assert np.all(ph.v_second[idx] > 0)


def test_validation():
    with pytest.raises(ParameterError):
        bessel_jy(0.0, 1.0)
    with pytest.raises(ParameterError):
        bessel_jy(1.0, 1.0)
    with pytest.raises(ParameterError):
        bessel_jy(0.3, 0.0)
    with pytest.raises(ParameterError):
        example1_v(0.6, 1.0)
    with pytest.raises(ParameterError):
        example1_v(0.3, -1.0)
