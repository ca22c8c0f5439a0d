import math

import numpy as np
import pytest
from scipy.optimize import brentq

from orbitlab.core.errors import DegenerateOrbitError
from orbitlab.core.model import PhysicalParams, SeparationConstants, PotentialKind
from orbitlab.orbits.kibler import (
    QuadricKind,
    kibler_constants,
    phi_of_psi,
    quadric_residual,
    quadric_surface,
    sample_orbit_kibler,
    theta_extrema_kibler,
    theta_of_psi,
)
from orbitlab.oracle.quadrature import integrate_angle

from .conftest import load_figure, random_bound_sets


def test_constants_figure_four(fig4a):
    params, consts, _ = fig4a
    constants = kibler_constants(params, consts)
    assert constants.M == pytest.approx(0.2, rel=1e-15)
    assert constants.N == pytest.approx(math.sqrt(0.4), rel=1e-14)


def test_theta_of_psi_quarter_turn(fig3a):
    params, consts, _ = fig3a
    constants = kibler_constants(params, consts)
    assert theta_of_psi(constants, math.pi / 2) == pytest.approx(math.acos(3.0 / 64.0), abs=1e-14)


def test_theta_extrema(fig4a):
    params, consts, _ = fig4a
    theta1, theta2 = theta_extrema_kibler(kibler_constants(params, consts))
    assert theta1 == pytest.approx(math.acos(0.2 + math.sqrt(0.4)), abs=1e-13)
    assert theta2 == pytest.approx(math.acos(0.2 - math.sqrt(0.4)), abs=1e-13)


def test_phi_of_psi_is_continuous_and_monotone(fig3a):
    params, consts, _ = fig3a
    constants = kibler_constants(params, consts)
    assert phi_of_psi(constants, 0.0) == 0.0

    psi = np.linspace(0.0, 6 * math.pi, 6001)
    phi = phi_of_psi(constants, psi)
    assert np.all(np.diff(phi) > 0)
    for k in (1, 3, 5):
        left = phi_of_psi(constants, k * math.pi - 1e-9)
        right = phi_of_psi(constants, k * math.pi + 1e-9)
        assert abs(right - left) < 1e-7


def test_phi_advance_per_cycle(fig3a):
    params, consts, _ = fig3a
    constants = kibler_constants(params, consts)
    M, N = constants.M, constants.N
    expected = math.pi * consts.alpha_phi / consts.alpha_theta * (
        1 / math.sqrt((1 + M) ** 2 - N ** 2) + 1 / math.sqrt((1 - M) ** 2 - N ** 2)
    )
    assert phi_of_psi(constants, 2 * math.pi) == pytest.approx(expected, rel=1e-13)
    assert constants.phi_per_cycle == pytest.approx(expected, rel=1e-13)


def test_kepler_limit_closes_after_one_cycle():
    params = PhysicalParams(mu=1.0, kappa=20.0)
    consts = SeparationConstants(energy_abs=3.0, alpha_theta=8.0, alpha_phi=5.0)
    constants = kibler_constants(params, consts)
    assert constants.M == 0.0
    assert phi_of_psi(constants, 2 * math.pi) == pytest.approx(2 * math.pi, rel=1e-14)


@pytest.mark.parametrize("name", ["fig3a", "fig3b", "fig4a", "fig4b"])
def test_phi_of_psi_matches_quadrature(name):
    params, consts, _ = load_figure(name)
    constants = kibler_constants(params, consts)
    scale = consts.alpha_phi / consts.alpha_theta

    def dphi_dpsi(psi):
        v = constants.M + constants.N * math.cos(psi)
        return scale / ((1 - v) * (1 + v))

    for psi in np.linspace(0.1, 6 * math.pi, 40):
        reference = integrate_angle(dphi_dpsi, 0.0, psi, 2 * math.pi).value
        assert abs(phi_of_psi(constants, psi) - reference) < 1e-9


def test_phi_of_psi_matches_quadrature_on_random_sets(kibler_sets):
    for params, consts in kibler_sets[:20]:
        constants = kibler_constants(params, consts)

        def dphi_dpsi(psi):
            return float(constants.dphi_dpsi(psi))

        for psi in np.linspace(0.5, 6 * math.pi, 7):
            reference = integrate_angle(dphi_dpsi, 0.0, psi, 2 * math.pi).value
            assert abs(phi_of_psi(constants, psi) - reference) < 1e-9


def test_dphi_dpsi_matches_finite_difference(fig4a):
    params, consts, _ = fig4a
    constants = kibler_constants(params, consts)
    rng = np.random.default_rng(2)
    h = 1e-5
    for psi in rng.uniform(0.0, 6 * math.pi, 200):
        numeric = (phi_of_psi(constants, psi + h) - phi_of_psi(constants, psi - h)) / (2 * h)
        assert numeric == pytest.approx(float(constants.dphi_dpsi(psi)), rel=1e-6)


def test_surface_classification():
    params, consts, _ = load_figure("fig3a")
    assert quadric_surface(params, consts).kind is QuadricKind.ELLIPSOID
    params, consts, _ = load_figure("fig3b")
    assert quadric_surface(params, consts).kind is QuadricKind.ELLIPSOID
    for name in ("fig4a", "fig4b"):
        params, consts, _ = load_figure(name)
        surface = quadric_surface(params, consts)
        assert surface.kind is QuadricKind.HYPERBOLOID_TWO_SHEETS
        assert surface.to_dict()["kind"] == "hyperboloid_two_sheets"


def test_surface_constants(fig3a):
    params, consts, _ = fig3a
    surface = quadric_surface(params, consts)
    constants = kibler_constants(params, consts)
    r1, r2 = surface.r1, surface.r2
    assert surface.p == pytest.approx(r1 + r2 - (r2 - r1) * constants.M / constants.N, rel=1e-14)
    assert surface.q == pytest.approx((r2 - r1) / constants.N, rel=1e-14)
    assert surface.special_limit is None
    assert len(surface.semi_axes) == 2


def test_paraboloid_between_ellipsoid_and_hyperboloid(fig4a):
    params, consts, _ = fig4a

    def discriminant(rho):
        shifted = PhysicalParams(mu=params.mu, kappa=params.kappa, rho=rho)
        surface = quadric_surface(shifted, consts)
        return (surface.p ** 2 - surface.q ** 2) / surface.p ** 2

    assert discriminant(1.0) > 0
    assert discriminant(20.0) < 0
    rho = brentq(discriminant, 1.0, 20.0, xtol=1e-15)
    surface = quadric_surface(PhysicalParams(mu=params.mu, kappa=params.kappa, rho=rho), consts)
    assert surface.kind is QuadricKind.PARABOLOID
    assert surface.semi_axes is None
    assert surface.z_shift is None


def test_rho_zero_is_flagged():
    params = PhysicalParams(mu=1.0, kappa=20.0)
    consts = SeparationConstants(energy_abs=3.0, alpha_theta=8.0, alpha_phi=5.0)
    assert quadric_surface(params, consts).special_limit == "rho_zero_hartmann_limit"


def test_pinned_theta_has_no_quadric():
    params = PhysicalParams(mu=1.0, kappa=20.0)
    consts = SeparationConstants(energy_abs=3.0, alpha_theta=5.0, alpha_phi=5.0)
    with pytest.raises(DegenerateOrbitError):
        quadric_surface(params, consts)


def test_phi_diverges_when_orbit_touches_pole():
    params = PhysicalParams(mu=1.0, kappa=20.0, rho=2.0)
    consts = SeparationConstants(energy_abs=3.0, alpha_theta=3.0, alpha_phi=2.0)
    constants = kibler_constants(params, consts)
    with pytest.raises(DegenerateOrbitError):
        phi_of_psi(constants, 1.0)


@pytest.mark.parametrize("name", ["fig3a", "fig3b", "fig4a", "fig4b"])
def test_sampled_orbit_lies_on_quadric(name):
    params, consts, _ = load_figure(name)
    surface = quadric_surface(params, consts)
    traj = sample_orbit_kibler(params, consts, 4 * math.pi, 5000)
    assert np.max(quadric_residual(surface, traj.x, traj.y, traj.z)) < 1e-9


def test_sampled_orbit_lies_on_quadric_with_gamma():
    for params, consts in random_bound_sets(PotentialKind.KIBLER, 10, seed=13, with_gamma=True):
        surface = quadric_surface(params, consts)
        traj = sample_orbit_kibler(params, consts, 2 * math.pi, 500)
        assert np.max(quadric_residual(surface, traj.x, traj.y, traj.z)) < 1e-8


def test_sample_orbit_settings(fig3a):
    params, consts, _ = fig3a
    traj = sample_orbit_kibler(params, consts, 2 * math.pi, 100, orientation=-1)
    assert traj.settings["driver"] == "psi"
    assert traj.settings["orientation"] == -1
    assert np.all(np.diff(traj.phi) < 0)
    assert np.all(np.diff(traj.t) > 0)
