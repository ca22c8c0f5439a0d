import math

import numpy as np
import pytest

from orbitlab.core.errors import BoundOrbitError, InvalidParameterError
from orbitlab.core.model import (
    PhysicalParams,
    SeparationConstants,
    QuantumNumbers,
    PotentialKind,
    effective_alpha_phi,
    potential_energy,
    validate,
    validate_cotangent,
    validate_kibler,
)


def test_effective_alpha_phi_with_gamma():
    params = PhysicalParams(mu=1.0, kappa=10.0, gamma=6.0)
    consts = SeparationConstants(energy_abs=3.0, alpha_theta=5.0, alpha_phi=2.0)
    assert effective_alpha_phi(params, consts) == pytest.approx(4.0, rel=1e-15)


def test_effective_alpha_phi_without_gamma_is_alpha_phi():
    params = PhysicalParams(mu=1.0, kappa=10.0)
    consts = SeparationConstants(energy_abs=3.0, alpha_theta=5.0, alpha_phi=2.5)
    assert effective_alpha_phi(params, consts) == 2.5


@pytest.mark.parametrize("kwargs", [
    {"mu": 0.0, "kappa": 1.0},
    {"mu": 1.0, "kappa": -1.0},
    {"mu": 1.0, "kappa": 1.0, "rho": -0.1},
    {"mu": 1.0, "kappa": 1.0, "gamma": -1.0},
    {"mu": 1.0, "kappa": 1.0, "hbar": 0.0},
    {"mu": math.nan, "kappa": 1.0},
])
def test_physical_params_rejects_invalid(kwargs):
    with pytest.raises(InvalidParameterError):
        PhysicalParams(**kwargs)


def test_separation_constants_rejects_non_bound_energy():
    with pytest.raises(InvalidParameterError):
        SeparationConstants(energy_abs=0.0, alpha_theta=1.0, alpha_phi=1.0)
    with pytest.raises(InvalidParameterError):
        SeparationConstants(energy_abs=1.0, alpha_theta=-1.0, alpha_phi=1.0)


def test_energy_is_negative_abs():
    assert SeparationConstants(3.0, 1.0, 1.0).energy == -3.0


def test_quantum_numbers_validation_and_actions():
    qn = QuantumNumbers(1, 2, -3)
    assert qn.actions(hbar=2.0) == (3.0, 5.0, 6.0)
    with pytest.raises(InvalidParameterError):
        QuantumNumbers(-1, 0, 0)
    with pytest.raises(InvalidParameterError):
        QuantumNumbers(0, 1.5, 0)
    with pytest.raises(InvalidParameterError):
        QuantumNumbers(True, 0, 0)


def test_cotangent_radial_violation():
    params = PhysicalParams(mu=1.0, kappa=20.0, rho=10.0)
    consts = SeparationConstants(energy_abs=100.0, alpha_theta=3.0, alpha_phi=2.0)
    report = validate_cotangent(params, consts)
    assert not report.is_bound
    assert [c.name for c in report.violated_constraints] == ["i"]
    radial = report.checks[0]
    assert radial.lhs == pytest.approx(9.0)
    assert radial.rhs == pytest.approx(2.0)


def test_kibler_azimuthal_violation():
    params = PhysicalParams(mu=1.0, kappa=20.0, rho=20.0)
    consts = SeparationConstants(energy_abs=3.0, alpha_theta=8.0, alpha_phi=5.0)
    report = validate_kibler(params, consts)
    assert [c.name for c in report.violated_constraints] == ["iii"]
    azimuthal = [c for c in report.checks if c.name == "iii"][0]
    assert azimuthal.lhs == pytest.approx(25.0)
    assert azimuthal.rhs == pytest.approx(40.0)


def test_raise_if_unbound_names_first_violation():
    params = PhysicalParams(mu=1.0, kappa=20.0, rho=10.0)
    consts = SeparationConstants(energy_abs=100.0, alpha_theta=3.0, alpha_phi=2.0)
    with pytest.raises(BoundOrbitError) as excinfo:
        validate_cotangent(params, consts).raise_if_unbound()
    assert excinfo.value.constraint == "i"
    assert excinfo.value.lhs == pytest.approx(9.0)


def test_figure_parameters_are_bound(figure):
    params, consts, kind = figure
    report = validate(params, consts, kind)
    assert report.is_bound
    assert report.to_dict()["violated_constraints"] == []


@pytest.mark.parametrize("kind", list(PotentialKind))
def test_kepler_limit_accepts_exactly_the_kepler_set(kind):
    rng = np.random.default_rng(3)
    for _ in range(500):
        mu, kappa, energy_abs = rng.uniform(0.5, 2.0, size=3)
        alpha_theta = rng.uniform(0.1, 5.0)
        alpha_phi = rng.uniform(0.0, 5.0)
        params = PhysicalParams(mu=mu, kappa=kappa)
        consts = SeparationConstants(energy_abs, alpha_theta, alpha_phi)
        expected = alpha_phi <= alpha_theta and alpha_theta ** 2 <= kappa ** 2 * mu / (2 * energy_abs)
        assert validate(params, consts, kind).is_bound == expected


def test_cotangent_polar_constraint_matches_rewritten_bound():
    rng = np.random.default_rng(5)
    for _ in range(500):
        mu = rng.uniform(0.5, 2.0)
        rho = rng.uniform(0.0, 10.0)
        alpha_theta = rng.uniform(0.1, 5.0)
        alpha_phi = rng.uniform(0.0, 8.0)
        params = PhysicalParams(mu=mu, kappa=100.0, rho=rho)
        consts = SeparationConstants(0.01, alpha_theta, alpha_phi)
        polar = [c for c in validate_cotangent(params, consts).checks if c.name == "ii"][0]
        bound = 0.5 * (math.sqrt(alpha_theta ** 4 + 4 * mu ** 2 * rho ** 2) + alpha_theta ** 2)
        assert polar.satisfied == (alpha_phi ** 2 <= bound)


def test_gamma_lower_bound_is_reported_as_derived():
    params = PhysicalParams(mu=1.0, kappa=10.0, rho=20.0, gamma=12.0)
    consts = SeparationConstants(energy_abs=3.0, alpha_theta=3.0, alpha_phi=2.0)
    report = validate_cotangent(params, consts)
    derived = [c for c in report.checks if c.derived]
    assert [c.name for c in derived] == ["gamma_lower_bound"]
    assert derived[0].lhs == pytest.approx((4 * 144 - 400) / 24.0)
    assert "gamma_lower_bound" not in [c.name for c in report.violated_constraints]


def test_boundary_cases_are_flagged_degenerate():
    # α_θ² = κ²μ/(2|ε|)：圆轨道
    params = PhysicalParams(mu=1.0, kappa=2.0)
    consts = SeparationConstants(energy_abs=0.5, alpha_theta=2.0, alpha_phi=1.0)
    report = validate_cotangent(params, consts)
    assert report.is_bound
    assert "circular_radius" in report.degenerate

    # α̃_φ² = 2μρ：Makarov-Kibler 轨道触及极轴
    params = PhysicalParams(mu=1.0, kappa=20.0, rho=2.0)
    consts = SeparationConstants(energy_abs=3.0, alpha_theta=3.0, alpha_phi=2.0)
    report = validate_kibler(params, consts)
    assert report.is_bound
    assert "touches_pole" in report.degenerate


def test_potential_energy_forms():
    params = PhysicalParams(mu=1.0, kappa=2.0, rho=0.5, gamma=0.25)
    r, theta = 1.5, 0.7
    cot = math.cos(theta) / math.sin(theta)
    sin_sq = math.sin(theta) ** 2
    expected_a = -2.0 / r + (-0.5 * cot + 0.25 / sin_sq) / r ** 2
    expected_b = -2.0 / r + (-0.5 * math.cos(theta) + 0.25) / (sin_sq * r ** 2)
    assert potential_energy(params, PotentialKind.COTANGENT, r, theta) == pytest.approx(expected_a)
    assert potential_energy(params, PotentialKind.KIBLER, r, theta) == pytest.approx(expected_b)
