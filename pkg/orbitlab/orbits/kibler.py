"""
Makarov-Kibler 势经典轨道

θ(ψ)、φ(ψ) 闭式解及其跨周期延拓、θ 的取值范围、轨道采样，
以及轨道所在二次曲面（椭球面 / 双叶双曲面 / 抛物面）的分类。
"""

import math
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np

from ..core.errors import BoundOrbitError, DegenerateOrbitError, InvalidParameterError
from ..core.model import (
    PhysicalParams,
    SeparationConstants,
    PotentialKind,
    BOUNDARY_RTOL,
    effective_alpha_phi,
    validate_kibler,
)
from ..radial.kepler import RadialOrbit, radial_turning_points, r_of_psi, t_of_psi
from .trajectory import Trajectory

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# 抛物面判定：|p² − q²| <= 阈值·p²
PARABOLOID_RTOL = 1e-10


class QuadricKind(Enum):
    """二次曲面类型"""
    ELLIPSOID = "ellipsoid"
    HYPERBOLOID_TWO_SHEETS = "hyperboloid_two_sheets"
    PARABOLOID = "paraboloid"


@dataclass(frozen=True)
class KiblerOrbitConstants:
    """
    Makarov-Kibler 轨道常数

    ratio = α_φ/α̃_φ 仅作记录；φ(ψ) 的前因子为 phi_scale = α_φ/α_θ。
    k_plus = sqrt((1+M)² − N²)，k_minus = sqrt((1−M)² − N²)。
    """
    M: float
    N: float
    alpha_phi_eff: float
    ratio: float
    phi_scale: float
    k_plus: float
    k_minus: float

    @property
    def phi_per_cycle(self) -> float:
        """ψ 前进 2π 时 φ 的增量"""
        return math.pi * self.phi_scale * (1.0 / self.k_plus + 1.0 / self.k_minus)

    def dphi_dpsi(self, psi: ArrayLike) -> ArrayLike:
        """dφ/dψ = phi_scale / (1 − (M + N cos ψ)²)"""
        v = self.M + self.N * np.cos(np.asarray(psi, dtype=float))
        return self.phi_scale / ((1.0 - v) * (1.0 + v))


@dataclass(frozen=True)
class QuadricSurface:
    """
    轨道所在二次曲面 p·r + q·z = 2r1r2

    规范形式 p²(x²+y²) + (p²−q²)(z + z_shift)² = rhs；抛物面无 z_shift。
    semi_axes 为 (横向, 极向) 半轴，抛物面为 None。
    """
    p: float
    q: float
    kind: QuadricKind
    r1: float
    r2: float
    z_shift: Optional[float]
    semi_axes: Optional[Tuple[float, float]]
    canonical: Tuple[float, float, float]
    special_limit: Optional[str] = None

    @property
    def discriminant(self) -> float:
        return self.p ** 2 - self.q ** 2

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "p": self.p,
            "q": self.q,
            "z_shift": self.z_shift,
            "semi_axes": list(self.semi_axes) if self.semi_axes is not None else None,
            "canonical": {
                "coef_xy": self.canonical[0],
                "coef_z": self.canonical[1],
                "rhs": self.canonical[2],
            },
            "r1": self.r1,
            "r2": self.r2,
            "special_limit": self.special_limit,
        }


def kibler_constants(params: PhysicalParams, consts: SeparationConstants) -> KiblerOrbitConstants:
    """
    计算 Makarov-Kibler 轨道常数 M = μρ/α_θ²，N = sqrt(1 − α̃_φ²/α_θ² + μ²ρ²/α_θ⁴)

    Args:
        params: 物理参数
        consts: 分离常数

    Returns:
        KiblerOrbitConstants: 轨道常数

    Raises:
        BoundOrbitError: N 为虚数 (ii) 或 1 − M < N (iii)
        DegenerateOrbitError: α_θ = 0
    """
    report = validate_kibler(params, consts)
    report.raise_if_unbound()

    if consts.alpha_theta == 0.0:
        raise DegenerateOrbitError("alpha_theta = 0: M and N are undefined")

    a_theta_sq = consts.alpha_theta ** 2
    a_eff = effective_alpha_phi(params, consts)
    mu_rho = params.mu * params.rho

    M = mu_rho / a_theta_sq
    n_sq = (a_theta_sq * (a_theta_sq - a_eff ** 2) + mu_rho ** 2) / a_theta_sq ** 2
    if n_sq < -BOUNDARY_RTOL:
        raise BoundOrbitError("ii", f"N^2 = {n_sq:.6g} < 0", lhs=n_sq, rhs=0.0)
    N = math.sqrt(max(n_sq, 0.0))

    # (1 ± M)² − N² = (α̃_φ² ± 2μρ)/α_θ²
    plus_sq = a_eff ** 2 + 2.0 * mu_rho
    minus_sq = max(a_eff ** 2 - 2.0 * mu_rho, 0.0)
    k_plus = math.sqrt(plus_sq) / consts.alpha_theta
    k_minus = math.sqrt(minus_sq) / consts.alpha_theta

    if k_minus == 0.0:
        logger.warning("1 - M = N: the orbit touches the polar axis and phi(psi) diverges")
    logger.debug(f"Kibler constants M={M:.12g}, N={N:.12g}")
    return KiblerOrbitConstants(
        M=M,
        N=N,
        alpha_phi_eff=a_eff,
        ratio=consts.alpha_phi / a_eff if a_eff > 0.0 else 1.0,
        phi_scale=consts.alpha_phi / consts.alpha_theta,
        k_plus=k_plus,
        k_minus=k_minus,
    )


def theta_of_psi(constants: KiblerOrbitConstants, psi: ArrayLike) -> ArrayLike:
    """
    cos θ = M + N cos ψ，θ ∈ (0, π)

    Args:
        constants: 轨道常数
        psi: 极向积分角

    Returns:
        极角 θ
    """
    v = constants.M + constants.N * np.cos(np.asarray(psi, dtype=float))
    return np.arccos(np.clip(v, -1.0, 1.0))


def theta_extrema_kibler(constants: KiblerOrbitConstants) -> Tuple[float, float]:
    """
    θ1,2 = arccos(M ± N)，θ1 < θ2

    Raises:
        BoundOrbitError: |M| + N > 1
    """
    upper = constants.M + constants.N
    lower = constants.M - constants.N
    if upper > 1.0 + BOUNDARY_RTOL or lower < -1.0 - BOUNDARY_RTOL:
        raise BoundOrbitError(
            "iii",
            f"|M| + N = {abs(constants.M) + constants.N:.12g} exceeds 1",
            lhs=abs(constants.M) + constants.N,
            rhs=1.0,
        )
    return math.acos(min(upper, 1.0)), math.acos(max(lower, -1.0))


def _phi_within_cycle(constants: KiblerOrbitConstants, reduced: np.ndarray) -> np.ndarray:
    # ψ ∈ [−π, π) 内的闭式解
    M, N = constants.M, constants.N
    half_tan = np.tan(0.5 * reduced)
    first = np.arctan(math.sqrt((1.0 + M - N) / (1.0 + M + N)) * half_tan) / constants.k_plus
    second = np.arctan(math.sqrt((1.0 - M + N) / (1.0 - M - N)) * half_tan) / constants.k_minus
    return constants.phi_scale * (first + second)


def phi_of_psi(constants: KiblerOrbitConstants, psi: ArrayLike) -> ArrayLike:
    """
    φ(ψ) 闭式解，跨 ψ = π (mod 2π) 连续延拓，φ(0) = 0

    φ(ψ) = (α_φ/α_θ){ arctan[sqrt((1+M−N)/(1+M+N)) tan(ψ/2)] / sqrt((1+M)²−N²)
                   + arctan[sqrt((1−M+N)/(1−M−N)) tan(ψ/2)] / sqrt((1−M)²−N²) }

    Args:
        constants: 轨道常数
        psi: 极向积分角（任意实数）

    Returns:
        连续、严格单调递增的 φ

    Raises:
        DegenerateOrbitError: 1 − M = N，φ 积分发散
    """
    if constants.k_minus == 0.0 or 1.0 - constants.M - constants.N <= 0.0:
        raise DegenerateOrbitError(
            "1 - M = N: the phi integral diverges at the pole (logarithmic branch), "
            "phi(psi) is undefined"
        )
    psi = np.asarray(psi, dtype=float)
    k = np.floor((psi + np.pi) / (2.0 * np.pi))
    reduced = psi - 2.0 * np.pi * k
    phi = _phi_within_cycle(constants, reduced) + k * constants.phi_per_cycle
    return float(phi) if phi.ndim == 0 else phi


def quadric_surface(
    params: PhysicalParams,
    consts: SeparationConstants,
    radial: Optional[RadialOrbit] = None
) -> QuadricSurface:
    """
    轨道所在二次曲面 p·r + q·z = 2r1r2 及其分类

    p = r1 + r2 − (r2 − r1)M/N，q = (r2 − r1)/N；γ ≠ 0 时 M、N 使用 α̃_φ。

    Args:
        params: 物理参数
        consts: 分离常数
        radial: 径向轨道，缺省时重新计算

    Returns:
        QuadricSurface: 曲面

    Raises:
        DegenerateOrbitError: N = 0（θ 固定，轨道在圆锥面上）
    """
    constants = kibler_constants(params, consts)
    if radial is None:
        radial = radial_turning_points(params, consts)
    if constants.N == 0.0:
        raise DegenerateOrbitError("N = 0: theta is pinned, the orbit lies on a circular cone")

    r1, r2 = radial.r1, radial.r2
    p = r1 + r2 - (r2 - r1) * constants.M / constants.N
    q = (r2 - r1) / constants.N
    disc = p ** 2 - q ** 2
    product = r1 * r2

    if abs(disc) <= PARABOLOID_RTOL * p ** 2:
        kind = QuadricKind.PARABOLOID
        z_shift = None
        semi_axes = None
        # p²(x²+y²) + 4r1r2 q z = 4r1²r2²
        canonical = (p ** 2, 4.0 * product * q, 4.0 * product ** 2)
    else:
        kind = QuadricKind.ELLIPSOID if disc > 0 else QuadricKind.HYPERBOLOID_TWO_SHEETS
        z_shift = 2.0 * product * q / disc
        transverse = 2.0 * product / math.sqrt(abs(disc))
        polar = 2.0 * abs(p) * product / abs(disc)
        semi_axes = (transverse, polar)
        canonical = (p ** 2, disc, 4.0 * product ** 2 * p ** 2 / disc)

    special = None
    if params.rho == 0.0:
        special = "rho_zero_hartmann_limit"
        logger.warning("rho = 0: reporting the formula's quadric without asserting planarity")

    logger.debug(f"Quadric p={p:.12g}, q={q:.12g}, kind={kind.value}")
    return QuadricSurface(
        p=p,
        q=q,
        kind=kind,
        r1=r1,
        r2=r2,
        z_shift=z_shift,
        semi_axes=semi_axes,
        canonical=canonical,
        special_limit=special,
    )


def quadric_residual(surface: QuadricSurface, x: ArrayLike, y: ArrayLike, z: ArrayLike) -> np.ndarray:
    """
    p·r + q·z − 2r1r2 的残差，按各项最大值归一

    Args:
        surface: 二次曲面
        x, y, z: 笛卡尔坐标

    Returns:
        np.ndarray: 各点的相对残差
    """
    x, y, z = (np.atleast_1d(np.asarray(a, dtype=float)) for a in (x, y, z))
    r = np.sqrt(x ** 2 + y ** 2 + z ** 2)
    pr = surface.p * r
    qz = surface.q * z
    rhs = 2.0 * surface.r1 * surface.r2
    scale = np.maximum(np.maximum(np.abs(pr), np.abs(qz)), rhs)
    return np.abs(pr + qz - rhs) / scale


def sample_orbit_kibler(
    params: PhysicalParams,
    consts: SeparationConstants,
    psi_max: float,
    n_samples: int,
    orientation: int = 1
) -> Trajectory:
    """
    以 ψ 为驱动变量采样 Makarov-Kibler 轨道

    Args:
        params: 物理参数
        consts: 分离常数
        psi_max: ψ 的终点（起点为 0，近心点）
        n_samples: 采样点数（>= 2）
        orientation: z 方向角动量的符号 (+1 / −1)

    Returns:
        Trajectory: 轨迹
    """
    if n_samples < 2:
        raise InvalidParameterError(f"n_samples must be >= 2, got {n_samples}")
    if orientation not in (1, -1):
        raise InvalidParameterError(f"orientation must be +1 or -1, got {orientation}")

    constants = kibler_constants(params, consts)
    radial = radial_turning_points(params, consts)

    psi = np.linspace(0.0, psi_max, n_samples)
    theta = theta_of_psi(constants, psi)
    phi = phi_of_psi(constants, psi)
    r = r_of_psi(radial, psi)
    t = t_of_psi(params, radial, psi)

    logger.info(f"Sampled Kibler orbit: {n_samples} points, psi in [0, {psi_max:.6g}]")
    return Trajectory.from_spherical(
        t, r, theta, orientation * np.asarray(phi),
        potential=PotentialKind.KIBLER,
        params=params,
        consts=consts,
        settings={
            "driver": "psi",
            "psi_max": float(psi_max),
            "n_samples": int(n_samples),
            "orientation": int(orientation),
        },
    )
