import math

import numpy as np
import pytest

from orbitlab.quantum.polynomials import (
    jacobi,
    jacobi_ode_residual,
    laguerre,
    laguerre_ode_residual,
    relative_coefficient_residual,
    romanovski,
    romanovski_ode_residual,
)


def test_low_degree_laguerre():
    np.testing.assert_allclose(laguerre(0, 2.5).coef, [1.0])
    np.testing.assert_allclose(laguerre(1, 2.5).coef, [3.5, -1.0])
    np.testing.assert_allclose(laguerre(2, 1.0).coef, [3.0, -3.0, 0.5], rtol=1e-15)


def test_low_degree_jacobi():
    alpha, beta = 0.7, 1.9
    expected = [(alpha - beta) / 2, (alpha + beta + 2) / 2]
    np.testing.assert_allclose(jacobi(1, alpha, beta).coef, expected, rtol=1e-15)
    np.testing.assert_allclose(jacobi(2, 0.0, 0.0).coef, [-0.5, 0.0, 1.5], atol=1e-15)


def test_jacobi_value_at_one():
    # P_n(1) = C(n+α, n)
    alpha, beta = 1.5, 0.25
    for n in range(6):
        expected = math.gamma(n + alpha + 1) / (math.gamma(alpha + 1) * math.factorial(n))
        assert jacobi(n, alpha, beta)(1.0) == pytest.approx(expected, rel=1e-13)


def test_low_degree_romanovski():
    alpha, beta = 1.25, -0.75
    np.testing.assert_allclose(romanovski(0, alpha, beta).coef, [1.0])
    np.testing.assert_allclose(romanovski(1, alpha, beta).coef, [alpha / 2, beta], rtol=1e-15)


@pytest.mark.parametrize("builder", [laguerre, jacobi, romanovski])
def test_negative_degree_rejected(builder):
    with pytest.raises(ValueError):
        if builder is laguerre:
            builder(-1, 0.5)
        else:
            builder(-1, 0.5, 0.5)


def test_laguerre_satisfies_its_equation():
    rng = np.random.default_rng(21)
    for _ in range(30):
        n = int(rng.integers(0, 9))
        a = rng.uniform(-0.9, 12.0)
        poly = laguerre(n, a)
        residual = laguerre_ode_residual(poly, n, a)
        assert relative_coefficient_residual(residual, poly, n) < 1e-12


def test_jacobi_satisfies_its_equation():
    rng = np.random.default_rng(22)
    for _ in range(30):
        n = int(rng.integers(0, 9))
        alpha, beta = rng.uniform(-0.9, 6.0, size=2)
        poly = jacobi(n, alpha, beta)
        residual = jacobi_ode_residual(poly, n, alpha, beta)
        assert relative_coefficient_residual(residual, poly, n * (n + alpha + beta + 1)) < 1e-12


def test_romanovski_satisfies_its_equation():
    rng = np.random.default_rng(23)
    for _ in range(30):
        n = int(rng.integers(0, 7))
        alpha = rng.uniform(-4.0, 4.0)
        beta = rng.uniform(-6.0, 0.5)
        poly = romanovski(n, alpha, beta)
        residual = romanovski_ode_residual(poly, n, alpha, beta)
        assert relative_coefficient_residual(residual, poly, n * (n + 2 * beta - 1)) < 1e-12


def test_laguerre_matches_sympy():
    sympy = pytest.importorskip("sympy")
    x = sympy.Symbol("x")
    a = sympy.Rational(7, 3)
    for n in range(6):
        reference = sympy.assoc_laguerre(n, a, x)
        poly = laguerre(n, float(a))
        for value in (0.3, 2.0, 7.5):
            expected = float(reference.subs(x, value).evalf(30))
            assert poly(value) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_jacobi_matches_sympy():
    sympy = pytest.importorskip("sympy")
    v = sympy.Symbol("v")
    alpha, beta = sympy.Rational(1, 2), sympy.Rational(5, 4)
    for n in range(6):
        reference = sympy.jacobi(n, alpha, beta, v)
        poly = jacobi(n, float(alpha), float(beta))
        for value in (-0.8, 0.1, 0.95):
            expected = float(reference.subs(v, value).evalf(30))
            assert poly(value) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_romanovski_matches_rodrigues_formula():
    sympy = pytest.importorskip("sympy")
    u = sympy.Symbol("u", real=True)
    alpha, beta = sympy.Rational(3, 2), sympy.Rational(-1, 2)
    weight = (1 + u ** 2) ** (beta - 1) * sympy.exp(-alpha * sympy.acot(u))
    for n in range(4):
        expr = sympy.diff(weight * (1 + u ** 2) ** n, u, n) / (2 ** n * sympy.factorial(n) * weight)
        poly = romanovski(n, float(alpha), float(beta))
        for value in (-1.3, 0.2, 2.0):
            expected = float(expr.subs(u, sympy.Rational(str(value))).evalf(30))
            assert poly(value) == pytest.approx(expected, rel=1e-12, abs=1e-12)
