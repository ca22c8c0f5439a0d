"""
余切势经典轨道

θ(φ) 运动方程、ψ(φ) 闭式解及其跨周期延拓、θ 的取值范围、轨道采样，
以及 γ = 0 时轨道所在椭圆锥面的几何量。
"""

import math
import logging
from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np
from scipy.optimize import brentq

from ..core.errors import DegenerateOrbitError, InvalidParameterError, NotAConeError
from ..core.model import (
    PhysicalParams,
    SeparationConstants,
    PotentialKind,
    effective_alpha_phi,
    validate_cotangent,
)
from ..radial.kepler import radial_turning_points, r_of_psi, t_of_psi
from .trajectory import Trajectory

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class CotangentOrbitConstants:
    """ψ(φ) 闭式解中的无量纲常数 A–H"""
    A: float
    B: float
    C: float
    D: float
    E: float
    F: float
    G: float
    H: float
    alpha_phi_eff: float
    ratio: float

    @property
    def prefactor(self) -> float:
        """A/((B−C)² + 1)"""
        return self.A / ((self.B - self.C) ** 2 + 1.0)

    @property
    def psi_half(self) -> float:
        """ratio·φ 从 0 到 π 时 ψ 的增量"""
        return self.prefactor * (self.G + 1.0) * math.pi / (2.0 * self.G * self.H)

    @property
    def psi_per_theta_period(self) -> float:
        """θ 运动一个周期内 ψ 的增量（与 2π 之比即径向与角向周期之比）"""
        return 2.0 * self.psi_half

    def dpsi_dphi(self, phi: ArrayLike) -> ArrayLike:
        """dψ/dφ = ratio·A / (1 + (B + C cos(ratio·φ))²)"""
        cot = self.B + self.C * np.cos(self.ratio * np.asarray(phi, dtype=float))
        return self.ratio * self.A / (1.0 + cot ** 2)


@dataclass(frozen=True, eq=False)
class EllipticCone:
    """
    椭圆锥面

    rotation 的各行为旋转后坐标轴在原坐标系中的方向余弦，第三行为锥轴。
    coefficients 为对角化方程 c_x x'² + c_y y'² + c_z z'² = 0 的系数。
    """
    theta_c: float
    theta_xz: float
    theta_yz: float
    rotation: np.ndarray
    coefficients: Tuple[float, float, float]
    theta1: float
    theta2: float
    B: float
    C: float

    @property
    def axis(self) -> np.ndarray:
        return self.rotation[2]

    def to_dict(self) -> dict:
        return {
            "kind": "elliptic_cone",
            "theta_c": self.theta_c,
            "theta_xz": self.theta_xz,
            "theta_yz": self.theta_yz,
            "theta1": self.theta1,
            "theta2": self.theta2,
            "axis": self.axis.tolist(),
            "rotation": self.rotation.tolist(),
            "coefficients": list(self.coefficients),
            "cartesian": {"B": self.B, "C": self.C},
        }


def cotangent_constants(params: PhysicalParams, consts: SeparationConstants) -> CotangentOrbitConstants:
    """
    计算余切势轨道常数

    γ ≠ 0 时以 α̃_φ 代替 α_φ，并记录 ratio = α̃_φ/α_φ。

    Args:
        params: 物理参数
        consts: 分离常数

    Returns:
        CotangentOrbitConstants: 轨道常数

    Raises:
        BoundOrbitError: 约束不成立
        DegenerateOrbitError: α̃_φ = 0（轨道经过极轴）
    """
    validate_cotangent(params, consts).raise_if_unbound()

    a_eff = effective_alpha_phi(params, consts)
    if a_eff == 0.0:
        raise DegenerateOrbitError("alpha_phi_eff = 0: the orbit passes through the polar axis")
    if consts.alpha_phi == 0.0:
        raise DegenerateOrbitError("alpha_phi = 0: phi is not a valid driving variable")

    a_eff_sq = a_eff ** 2
    mu_rho = params.mu * params.rho
    A = consts.alpha_theta / a_eff
    B = mu_rho / a_eff_sq
    # C² = A² + B² − 1，按约束 (ii) 的形式计算以减少相消
    c_sq = (a_eff_sq * (consts.alpha_theta ** 2 - a_eff_sq) + mu_rho ** 2) / a_eff_sq ** 2
    C = math.sqrt(max(c_sq, 0.0))

    bmc = (B - C) ** 2 + 1.0
    D = (2.0 - A ** 2) / bmc
    E = ((B + C) ** 2 + 1.0) / bmc
    G = math.sqrt(E)
    # G² − D² = 4C²/bmc²，故 F² = (G − D)/2 = 2C²/(bmc²(G + D))
    H = math.sqrt(0.5 * (G + D))
    F = math.sqrt(2.0) * C / (bmc * math.sqrt(G + D))

    if C == 0.0:
        logger.warning("C = 0: theta is pinned, the psi(phi) closed form uses its F = 0 limit")
    logger.debug(f"Cotangent constants A={A:.12g}, B={B:.12g}, C={C:.12g}, F={F:.12g}, G={G:.12g}")
    return CotangentOrbitConstants(
        A=A, B=B, C=C, D=D, E=E, F=F, G=G, H=H,
        alpha_phi_eff=a_eff,
        ratio=a_eff / consts.alpha_phi,
    )


def theta_of_phi(constants: CotangentOrbitConstants, phi: ArrayLike) -> ArrayLike:
    """
    cot θ = C cos(ratio·φ) + B，θ ∈ (0, π)

    Args:
        constants: 轨道常数
        phi: 方位角

    Returns:
        极角 θ
    """
    cot = constants.C * np.cos(constants.ratio * np.asarray(phi, dtype=float)) + constants.B
    return np.arctan2(1.0, cot)


def theta_extrema(constants: CotangentOrbitConstants) -> Tuple[float, float]:
    """θ1,2 = arccot(B ± C)，取值 (0, π)"""
    theta1 = math.atan2(1.0, constants.B + constants.C)
    theta2 = math.atan2(1.0, constants.B - constants.C)
    return theta1, theta2


def _psi_within_period(constants: CotangentOrbitConstants, s: np.ndarray) -> np.ndarray:
    # 单个周期 ratio·φ ∈ [−π, π) 内的闭式解，s = tan(ratio·φ/2)
    G, H, F = constants.G, constants.H, constants.F
    if F > 0.0:
        # ln((s²−2Fs+G)/(s²+2Fs+G)) 写成 log1p 形式，F 很小时仍保持精度
        plus = s * s + 2.0 * F * s + G
        log_term = (G - 1.0) / (4.0 * F * G) * np.log1p(-4.0 * F * s / plus)
        atan_term = (G + 1.0) / (2.0 * G * H) * (
            np.arctan((s + F) / H) + np.arctan((s - F) / H)
        )
        bracket = log_term + atan_term
    else:
        # F = 0 极限（C = 0，二次因子重合）
        root_g = math.sqrt(G)
        bracket = (G + 1.0) / (G * root_g) * np.arctan(s / root_g) \
            - (G - 1.0) * s / (G * (s * s + G))
    return constants.prefactor * bracket


def psi_of_phi(constants: CotangentOrbitConstants, phi: ArrayLike) -> ArrayLike:
    """
    ψ(φ) 闭式解，跨 ratio·φ = π (mod 2π) 连续延拓，ψ(0) = 0

    Args:
        constants: 轨道常数
        phi: 方位角（任意实数）

    Returns:
        连续、严格单调递增的 ψ
    """
    x = constants.ratio * np.asarray(phi, dtype=float)
    k = np.floor((x + np.pi) / (2.0 * np.pi))
    reduced = x - 2.0 * np.pi * k
    s = np.tan(0.5 * reduced)
    psi = _psi_within_period(constants, s) + 2.0 * k * constants.psi_half
    return float(psi) if psi.ndim == 0 else psi


def phi_for_radial_periods(constants: CotangentOrbitConstants, periods: float) -> float:
    """
    求 φ 使 ψ(φ) = 2π·periods

    Args:
        constants: 轨道常数
        periods: 径向周期数

    Returns:
        float: 对应的 φ
    """
    target = 2.0 * math.pi * periods
    if target <= 0.0:
        return 0.0
    # 每个 θ 周期 (2π/ratio) 内 ψ 增加 2·psi_half
    cycles = math.ceil(target / constants.psi_per_theta_period) + 1
    upper = 2.0 * math.pi * cycles / constants.ratio
    return brentq(lambda p: psi_of_phi(constants, p) - target, 0.0, upper, xtol=1e-14)


def cone_geometry(params: PhysicalParams, consts: SeparationConstants) -> EllipticCone:
    """
    椭圆锥面几何量（仅 γ = 0）

    tan θ_c = [sqrt(α_θ⁴+4μ²ρ²) + α_θ² − 2α_φ²] / [2 sqrt(α_φ²(α_θ²−α_φ²) + μ²ρ²)]，
    C = 0 时 θ_c = 0（θ 固定，锥轴即 z 轴）。

    Args:
        params: 物理参数
        consts: 分离常数

    Returns:
        EllipticCone: 锥面几何

    Raises:
        NotAConeError: γ ≠ 0
    """
    if params.gamma != 0.0:
        raise NotAConeError(
            f"gamma = {params.gamma} != 0: the cotangent orbit is not confined to a fixed cone"
        )
    constants = cotangent_constants(params, consts)
    theta1, theta2 = theta_extrema(constants)

    a_theta_sq = consts.alpha_theta ** 2
    a_phi_sq = consts.alpha_phi ** 2
    mu_rho = params.mu * params.rho
    S = math.hypot(a_theta_sq, 2.0 * mu_rho)

    numerator = max(S + a_theta_sq - 2.0 * a_phi_sq, 0.0)
    denominator = 2.0 * a_phi_sq * constants.C
    theta_c = math.atan2(numerator, denominator) if constants.C > 0.0 else 0.0

    theta_xz = math.atan2(S + a_theta_sq, 2.0 * mu_rho)
    theta_yz = math.atan2(consts.alpha_phi * math.sqrt(0.5 * (S + a_theta_sq)), mu_rho)

    c, s = math.cos(theta_c), math.sin(theta_c)
    rotation = np.array([
        [c, 0.0, s],
        [0.0, 1.0, 0.0],
        [-s, 0.0, c],
    ])
    coefficients = (
        (S - a_theta_sq) / a_phi_sq,
        2.0 * mu_rho ** 2 / a_phi_sq ** 2,
        -(a_theta_sq + S) / a_phi_sq,
    )
    rotation.setflags(write=False)
    return EllipticCone(
        theta_c=theta_c,
        theta_xz=theta_xz,
        theta_yz=theta_yz,
        rotation=rotation,
        coefficients=coefficients,
        theta1=theta1,
        theta2=theta2,
        B=constants.B,
        C=constants.C,
    )


def cone_residual(cone: EllipticCone, x: ArrayLike, y: ArrayLike, z: ArrayLike) -> np.ndarray:
    """
    对角化锥面方程的残差，按 max|c_i|·r² 归一

    Args:
        cone: 椭圆锥面
        x, y, z: 笛卡尔坐标

    Returns:
        np.ndarray: 各点的相对残差
    """
    points = np.vstack([np.atleast_1d(x), np.atleast_1d(y), np.atleast_1d(z)]).astype(float)
    rotated = cone.rotation @ points
    coeffs = np.asarray(cone.coefficients)
    value = coeffs @ rotated ** 2
    r_sq = np.sum(points ** 2, axis=0)
    return np.abs(value) / (np.max(np.abs(coeffs)) * r_sq)


def cone_cartesian_residual(constants: CotangentOrbitConstants, x: ArrayLike,
                            y: ArrayLike, z: ArrayLike) -> np.ndarray:
    """锥面方程 Cx + B·sqrt(x²+y²) = z 的残差，除以 r"""
    x, y, z = (np.atleast_1d(np.asarray(a, dtype=float)) for a in (x, y, z))
    r = np.sqrt(x ** 2 + y ** 2 + z ** 2)
    return np.abs(constants.C * x + constants.B * np.hypot(x, y) - z) / r


def sample_orbit_cotangent(
    params: PhysicalParams,
    consts: SeparationConstants,
    phi_max: float,
    n_samples: int,
    orientation: int = 1
) -> Trajectory:
    """
    以 φ 为驱动变量采样余切势轨道

    Args:
        params: 物理参数
        consts: 分离常数
        phi_max: φ 的终点（起点为 0，近心点）
        n_samples: 采样点数（>= 2）
        orientation: z 方向角动量的符号 (+1 / −1)

    Returns:
        Trajectory: 轨迹

    Raises:
        DegenerateOrbitError: r1 = 0 等退化情形
    """
    if n_samples < 2:
        raise InvalidParameterError(f"n_samples must be >= 2, got {n_samples}")
    if orientation not in (1, -1):
        raise InvalidParameterError(f"orientation must be +1 or -1, got {orientation}")

    constants = cotangent_constants(params, consts)
    radial = radial_turning_points(params, consts)

    phi = np.linspace(0.0, phi_max, n_samples)
    theta = theta_of_phi(constants, phi)
    psi = psi_of_phi(constants, phi)
    r = r_of_psi(radial, psi)
    t = t_of_psi(params, radial, psi)

    logger.info(f"Sampled cotangent orbit: {n_samples} points, phi in [0, {phi_max:.6g}]")
    return Trajectory.from_spherical(
        t, r, theta, orientation * phi,
        potential=PotentialKind.COTANGENT,
        params=params,
        consts=consts,
        settings={
            "driver": "phi",
            "phi_max": float(phi_max),
            "n_samples": int(n_samples),
            "orientation": int(orientation),
        },
    )
