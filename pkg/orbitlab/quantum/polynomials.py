"""
正交多项式

广义 Laguerre、Jacobi 与 Romanovski 多项式（numpy Polynomial，系数按升幂排列），
以及各自微分方程的多项式残差。参数可取任意实数。
"""

import math
import logging

import numpy as np
from numpy.polynomial import Polynomial

logger = logging.getLogger(__name__)


def laguerre(n: int, a: float) -> Polynomial:
    """
    广义 Laguerre 多项式 L_n^a(x)

    三项递推 (k+1) L_{k+1} = (2k+1+a−x) L_k − (k+a) L_{k−1}，a 可为非整数。

    Args:
        n: 次数 (>= 0)
        a: 参数

    Returns:
        Polynomial: L_n^a
    """
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    x = Polynomial([0.0, 1.0])
    prev = Polynomial([1.0])
    if n == 0:
        return prev
    current = Polynomial([1.0 + a, -1.0])
    for k in range(1, n):
        prev, current = current, ((2 * k + 1 + a - x) * current - (k + a) * prev) / (k + 1)
    return current


def jacobi(n: int, alpha: float, beta: float) -> Polynomial:
    """
    Jacobi 多项式 P_n^{(α,β)}(v)，按 Rodrigues 公式逐次求导展开

    P_n = (−1)^n/(2^n n!) (1−v)^{−α}(1+v)^{−β} dⁿ/dvⁿ[(1−v)^{α+n}(1+v)^{β+n}]。
    第 k 次求导后括号内为 (1−v)^{α+n−k}(1+v)^{β+n−k} q_k(v)，
    q_{k+1} = (1−v²) q_k′ + [(β+n−k)(1−v) − (α+n−k)(1+v)] q_k。

    Args:
        n: 次数 (>= 0)
        alpha: 参数 α (> −1)
        beta: 参数 β (> −1)

    Returns:
        Polynomial: P_n^{(α,β)}
    """
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    v = Polynomial([0.0, 1.0])
    one_minus_sq = Polynomial([1.0, 0.0, -1.0])
    q = Polynomial([1.0])
    for k in range(n):
        q = one_minus_sq * q.deriv() + ((beta + n - k) * (1 - v) - (alpha + n - k) * (1 + v)) * q
    return q * ((-1) ** n / (2.0 ** n * math.factorial(n)))


def romanovski(n: int, alpha: float, beta: float) -> Polynomial:
    """
    Romanovski 多项式 R_n^{(α,β)}(u)

    权函数 W = (1+u²)^{β−1} e^{−α arccot u}，Rodrigues 公式
    R_n = 1/(2^n n! W) dⁿ/duⁿ[W (1+u²)^n]。第 k 次求导后括号内为 W (1+u²)^{n−k} p_k(u)，
    p_{k+1} = (1+u²) p_k′ + [2(β−1+n−k)u + α] p_k，全程实数运算。

    Args:
        n: 次数 (>= 0)
        alpha: 指数参数 α
        beta: 幂参数 β

    Returns:
        Polynomial: R_n^{(α,β)}
    """
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    one_plus_sq = Polynomial([1.0, 0.0, 1.0])
    p = Polynomial([1.0])
    for k in range(n):
        p = one_plus_sq * p.deriv() + Polynomial([alpha, 2.0 * (beta - 1 + n - k)]) * p
    return p / (2.0 ** n * math.factorial(n))


def laguerre_ode_residual(poly: Polynomial, n: int, a: float) -> Polynomial:
    """x L″ + (a+1−x) L′ + n L 的残差多项式"""
    x = Polynomial([0.0, 1.0])
    return x * poly.deriv(2) + (a + 1 - x) * poly.deriv() + n * poly


def jacobi_ode_residual(poly: Polynomial, n: int, alpha: float, beta: float) -> Polynomial:
    """(1−v²) P″ + [(β−α) − (α+β+2)v] P′ + n(n+α+β+1) P 的残差多项式"""
    one_minus_sq = Polynomial([1.0, 0.0, -1.0])
    first = Polynomial([beta - alpha, -(alpha + beta + 2.0)])
    return one_minus_sq * poly.deriv(2) + first * poly.deriv() + n * (n + alpha + beta + 1) * poly


def romanovski_ode_residual(poly: Polynomial, n: int, alpha: float, beta: float) -> Polynomial:
    """(1+u²) χ″ + (2βu+α) χ′ − n(n+2β−1) χ 的残差多项式"""
    one_plus_sq = Polynomial([1.0, 0.0, 1.0])
    first = Polynomial([alpha, 2.0 * beta])
    return one_plus_sq * poly.deriv(2) + first * poly.deriv() - n * (n + 2 * beta - 1) * poly


def relative_coefficient_residual(residual: Polynomial, reference: Polynomial,
                                  eigenvalue: float = 0.0) -> float:
    """
    残差多项式系数相对于各项系数量级的最大值

    Args:
        residual: 残差多项式
        reference: 参考多项式（通常为被检验的多项式本身）
        eigenvalue: 方程零阶项系数，用于估计各项量级

    Returns:
        float: max|残差系数| / (max(1, max|参考系数|)·max(1, |eigenvalue|))
    """
    scale = max(1.0, float(np.max(np.abs(reference.coef)))) * max(1.0, abs(eigenvalue))
    return float(np.max(np.abs(residual.coef))) / scale
