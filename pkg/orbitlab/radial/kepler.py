"""
径向运动

两类势共享的径向部分：转折点、类开普勒参数化 r(w)、t(w)，以及 r(ψ) 关系。
ψ 与 w 分别对应真近点角与偏近点角。
"""

import math
import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import brentq

from ..core.errors import BoundOrbitError, DegenerateOrbitError
from ..core.model import PhysicalParams, SeparationConstants, BOUNDARY_RTOL

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class RadialOrbit:
    """径向轨道：内外转折半径 r1 <= r2 与径向周期"""
    r1: float
    r2: float
    period_t: float

    @property
    def eccentricity(self) -> float:
        """(r2 − r1)/(r2 + r1)"""
        return (self.r2 - self.r1) / (self.r2 + self.r1)

    @property
    def time_scale(self) -> float:
        """t(w) 的前因子 sqrt(μ(r1+r2)³/(8κ)) = period_t/2π"""
        return self.period_t / (2.0 * math.pi)

    @property
    def is_circular(self) -> bool:
        return self.r2 - self.r1 <= BOUNDARY_RTOL * self.r2


def radial_turning_points(params: PhysicalParams, consts: SeparationConstants) -> RadialOrbit:
    """
    径向转折点 r1,2 = κ/(2|ε|) ∓ sqrt(κ²/(4ε²) − α_θ²/(2μ|ε|))

    Args:
        params: 物理参数
        consts: 分离常数

    Returns:
        RadialOrbit: 径向轨道

    Raises:
        BoundOrbitError: 判别式小于零（约束 (i) 不成立）
    """
    eps = consts.energy_abs
    half_sum = params.kappa / (2.0 * eps)
    product = consts.alpha_theta ** 2 / (2.0 * params.mu * eps)
    disc = half_sum ** 2 - product

    if disc < -BOUNDARY_RTOL * half_sum ** 2:
        raise BoundOrbitError(
            "i",
            f"radial discriminant {disc:.6g} < 0, alpha_theta^2 exceeds kappa^2 mu/(2|eps|)",
            lhs=consts.alpha_theta ** 2,
            rhs=params.kappa ** 2 * params.mu / (2.0 * eps),
        )
    disc = max(disc, 0.0)

    r2 = half_sum + math.sqrt(disc)
    # 用韦达定理求 r1，避免近圆轨道的相消误差
    r1 = product / r2
    period_t = 2.0 * math.pi * math.sqrt(params.mu * (r1 + r2) ** 3 / (8.0 * params.kappa))

    if disc == 0.0:
        logger.warning(f"Circular radial orbit at r = {r2:.6g}")
    logger.debug(f"Radial turning points r1={r1:.12g}, r2={r2:.12g}, period={period_t:.12g}")
    return RadialOrbit(r1=r1, r2=r2, period_t=period_t)


def r_of_w(orbit: RadialOrbit, w: ArrayLike) -> ArrayLike:
    """
    r(w) = ½(r1+r2) − ½(r2−r1) cos w

    Args:
        orbit: 径向轨道
        w: 参数角

    Returns:
        半径，取值在 [r1, r2]
    """
    return 0.5 * (orbit.r1 + orbit.r2) - 0.5 * (orbit.r2 - orbit.r1) * np.cos(w)


def t_of_w(params: PhysicalParams, orbit: RadialOrbit, w: ArrayLike) -> ArrayLike:
    """
    t(w) = sqrt(μ(r1+r2)³/(8κ)) · (w − e sin w)，e = (r2−r1)/(r2+r1)

    Args:
        params: 物理参数
        orbit: 径向轨道
        w: 参数角

    Returns:
        时间（w=0 处为近心点时刻 0）
    """
    scale = math.sqrt(params.mu * (orbit.r1 + orbit.r2) ** 3 / (8.0 * params.kappa))
    return scale * (np.asarray(w, dtype=float) - orbit.eccentricity * np.sin(w))


def w_of_t(params: PhysicalParams, orbit: RadialOrbit, t: float) -> float:
    """
    求解开普勒方程 t = K(w − e sin w)

    Args:
        params: 物理参数
        orbit: 径向轨道
        t: 时间

    Returns:
        float: 参数角 w
    """
    cycles = math.floor(t / orbit.period_t)
    lower = 2.0 * math.pi * cycles
    upper = lower + 2.0 * math.pi
    target = float(t)

    def residual(w: float) -> float:
        return float(t_of_w(params, orbit, w)) - target

    if residual(lower) == 0.0:
        return lower
    return brentq(residual, lower, upper, xtol=1e-14, rtol=4 * np.finfo(float).eps)


def _require_nondegenerate(orbit: RadialOrbit) -> None:
    if orbit.r1 <= 0.0:
        raise DegenerateOrbitError(
            "r1 = 0 (alpha_theta = 0): the psi parametrisation is degenerate for a radial plunge"
        )


def r_of_psi(orbit: RadialOrbit, psi: ArrayLike) -> ArrayLike:
    """
    r(ψ) = 2r1r2 / (r1 + r2 + (r2 − r1) cos ψ)

    Args:
        orbit: 径向轨道
        psi: 极向积分角

    Returns:
        半径，r(0) = r1，r(π) = r2

    Raises:
        DegenerateOrbitError: r1 = 0
    """
    _require_nondegenerate(orbit)
    return 2.0 * orbit.r1 * orbit.r2 / (
        orbit.r1 + orbit.r2 + (orbit.r2 - orbit.r1) * np.cos(psi)
    )


def w_of_psi(orbit: RadialOrbit, psi: ArrayLike) -> ArrayLike:
    """
    由 ψ 求 w：tan(w/2) = sqrt(r1/r2)·tan(ψ/2)，按周期计数保持连续单调

    Args:
        orbit: 径向轨道
        psi: 极向积分角（任意实数）

    Returns:
        参数角 w，满足 w(2πk) = 2πk
    """
    _require_nondegenerate(orbit)
    psi = np.asarray(psi, dtype=float)
    # 周期计数 k 使 ψ − 2πk ∈ [−π, π)
    k = np.floor((psi + np.pi) / (2.0 * np.pi))
    reduced = psi - 2.0 * np.pi * k
    w = 2.0 * np.arctan(math.sqrt(orbit.r1 / orbit.r2) * np.tan(0.5 * reduced))
    result = w + 2.0 * np.pi * k
    return float(result) if result.ndim == 0 else result


def t_of_psi(params: PhysicalParams, orbit: RadialOrbit, psi: ArrayLike) -> ArrayLike:
    """t(ψ) = t(w(ψ))"""
    return t_of_w(params, orbit, w_of_psi(orbit, psi))


def radial_time_integrand(params: PhysicalParams, consts: SeparationConstants,
                          r: ArrayLike) -> ArrayLike:
    """
    dt/dr = μ / sqrt(2μ(ε + κ/r) − α_θ²/r²)

    Args:
        params: 物理参数
        consts: 分离常数
        r: 半径（位于 (r1, r2) 内）

    Returns:
        dt/dr
    """
    r = np.asarray(r, dtype=float)
    radicand = 2.0 * params.mu * (consts.energy + params.kappa / r) - consts.alpha_theta ** 2 / r ** 2
    return params.mu / np.sqrt(np.maximum(radicand, 0.0))
