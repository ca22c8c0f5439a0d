import math

import numpy as np
import pytest

from orbitlab.cli import sample_orbit
from orbitlab.core.errors import BracketError, OracleConvergenceError, TrajectoryTooShortError
from orbitlab.core.model import PhysicalParams, SeparationConstants, PotentialKind
from orbitlab.oracle.quadrature import (
    SecondOrderODE,
    TurningPointIntegral,
    energy_along_orbit,
    integrate_angle,
    integrate_turning_point,
    invert_monotone,
    local_wavenumber,
    ode_residual,
)
from orbitlab.radial.kepler import radial_turning_points, t_of_w

from .conftest import load_figure


@pytest.mark.parametrize("integrand, lower, upper, expected", [
    (lambda x: 1.0 / math.sqrt(1.0 - x * x), -1.0, 1.0, math.pi),
    (lambda x: math.sqrt(1.0 - x * x), -1.0, 1.0, math.pi / 2),
    (lambda x: 1.0 / math.sqrt((x - 2.0) * (5.0 - x)), 2.0, 5.0, math.pi),
    (lambda x: math.sqrt((x - 0.5) * (3.5 - x)), 0.5, 3.5, math.pi * 9.0 / 8.0),
    (lambda x: x / math.sqrt((x - 1.0) * (4.0 - x)), 1.0, 4.0, math.pi * 5.0 / 2.0),
])
def test_turning_point_integrals(integrand, lower, upper, expected):
    result = integrate_turning_point(TurningPointIntegral(integrand, lower, upper))
    assert result.value == pytest.approx(expected, rel=1e-12)
    assert result.error < 1e-10


def test_turning_point_integral_with_stop():
    integral = TurningPointIntegral(lambda x: 1.0 / math.sqrt(1.0 - x * x), -1.0, 1.0)
    assert integrate_turning_point(integral, stop=0.0).value == pytest.approx(math.pi / 2, rel=1e-12)
    assert integrate_turning_point(integral, stop=1.0).value == pytest.approx(math.pi, rel=1e-12)


def test_turning_point_integral_rejects_bad_input():
    with pytest.raises(ValueError):
        integrate_turning_point(TurningPointIntegral(lambda x: 1.0, 2.0, 2.0))
    with pytest.raises(ValueError):
        integrate_turning_point(TurningPointIntegral(lambda x: 1.0, 3.0, 2.0))
    with pytest.raises(ValueError):
        integrate_turning_point(TurningPointIntegral(lambda x: 1.0, 0.0, 1.0), tol=0.0)


def test_turning_point_integral_reports_convergence_failure():
    integral = TurningPointIntegral(lambda x: 1.0 / math.sqrt(1.0 - x * x) * math.sin(40 * x) ** 2, -1.0, 1.0)
    with pytest.raises(OracleConvergenceError) as excinfo:
        integrate_turning_point(integral, tol=1e-300)
    assert excinfo.value.tolerance == 1e-300


def test_integrate_angle_over_several_periods():
    result = integrate_angle(lambda x: math.cos(x) ** 2, 0.0, 5 * math.pi, math.pi)
    assert result.value == pytest.approx(5 * math.pi / 2, rel=1e-13)
    reverse = integrate_angle(lambda x: math.cos(x) ** 2, 5 * math.pi, 0.0, math.pi)
    assert reverse.value == pytest.approx(-5 * math.pi / 2, rel=1e-13)
    assert integrate_angle(math.cos, 1.0, 1.0, math.pi).value == 0.0


def test_invert_monotone():
    assert invert_monotone(lambda x: x ** 3, 8.0, (0.0, 3.0)) == pytest.approx(2.0, abs=1e-13)
    assert invert_monotone(lambda x: -x, -1.0, (0.0, 1.0)) == 1.0
    with pytest.raises(BracketError):
        invert_monotone(lambda x: x ** 3, 100.0, (0.0, 3.0))


def test_invert_monotone_recovers_half_period():
    params = PhysicalParams(mu=1.0, kappa=20.0, rho=10.0)
    consts = SeparationConstants(3.0, 3.0, 2.0)
    orbit = radial_turning_points(params, consts)
    w = invert_monotone(lambda x: float(t_of_w(params, orbit, x)), orbit.period_t / 2, (0.0, 2 * math.pi))
    assert w == pytest.approx(math.pi, abs=1e-12)


def test_ode_residual_of_exact_solution():
    ode = SecondOrderODE(a=np.ones_like, b=np.zeros_like, c=lambda x: -np.ones_like(x))
    grid = np.linspace(0.5, 5.0, 40)
    assert ode_residual(ode, lambda x: np.exp(-x), grid) < 1e-9
    assert ode_residual(ode, lambda x: np.sin(x), grid) > 0.5


def test_local_wavenumber_sums_term_magnitudes():
    ode = SecondOrderODE(
        a=lambda x: np.full_like(x, 2.0),
        b=lambda x: np.full_like(x, 4.0),
        c=lambda x: np.full_like(x, 8.0),
        c_terms=(lambda x: np.full_like(x, 18.0), lambda x: np.full_like(x, -10.0)),
    )
    # sqrt((18 + 10)/2) + ½·4/2
    np.testing.assert_allclose(local_wavenumber(ode, np.array([0.5, 3.0])), math.sqrt(14.0) + 1.0)


def test_ode_residual_resolves_fast_decay():
    omega = 200.0
    ode = SecondOrderODE(a=np.ones_like, b=np.zeros_like, c=lambda x: np.full_like(x, -omega ** 2))
    grid = np.linspace(0.1, 1.0, 50)
    assert ode_residual(ode, lambda x: np.exp(-omega * x), grid) < 1e-8
    assert ode_residual(ode, lambda x: np.exp(-1.01 * omega * x), grid) > 1e-3


def test_ode_residual_scales_by_largest_summand():
    # c = −1 拆成两项大数，残差相对于单项量级
    ode = SecondOrderODE(
        a=np.ones_like,
        b=np.zeros_like,
        c=lambda x: -np.ones_like(x),
        c_terms=(lambda x: np.full_like(x, 1e6), lambda x: np.full_like(x, -1e6 - 1.0)),
    )
    grid = np.linspace(0.5, 5.0, 40)
    assert ode_residual(ode, lambda x: np.exp(-x), grid) < 1e-11
    assert ode_residual(ode, lambda x: np.exp(-2.0 * x), grid) == pytest.approx(3e-6, rel=1e-3)


@pytest.mark.parametrize("name", ["fig1a", "fig2a", "fig3a", "fig4a"])
def test_energy_is_conserved_along_orbit(name):
    params, consts, kind = load_figure(name)
    traj = sample_orbit(params, consts, kind, 4000, 1.0, 1)
    assert energy_along_orbit(params, traj, kind) < 1e-5


def test_energy_on_circular_orbit():
    params = PhysicalParams(mu=1.0, kappa=2.0)
    consts = SeparationConstants(energy_abs=0.5, alpha_theta=2.0, alpha_phi=2.0)
    traj = sample_orbit(params, consts, PotentialKind.COTANGENT, 4000, 1.0, 1)
    np.testing.assert_allclose(traj.r, 2.0, rtol=1e-12)
    assert energy_along_orbit(params, traj, PotentialKind.COTANGENT) < 1e-10


def test_energy_check_needs_five_samples(fig1a):
    params, consts, kind = fig1a
    traj = sample_orbit(params, consts, kind, 4, 1.0, 1)
    with pytest.raises(TrajectoryTooShortError):
        energy_along_orbit(params, traj, kind)
