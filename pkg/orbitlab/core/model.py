"""
核心数据模型

物理参数、分离常数、量子数等领域类型，以及两类势的束缚轨道约束校验。
所有类型构造后不可变，所有操作为纯函数。
"""

import math
import logging
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Dict, Tuple, Union

import numpy as np

from .errors import BoundOrbitError, InvalidParameterError

logger = logging.getLogger(__name__)

# 不等式取等号时的相对判定阈值
BOUNDARY_RTOL = 1e-12

# Maslov 指标 (ν_r, ν_θ, ν_φ)
MASLOV_INDICES = (0.5, 0.5, 0.0)


class PotentialKind(Enum):
    """势函数类型"""
    COTANGENT = "cotangent"
    KIBLER = "kibler"


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise InvalidParameterError(f"{name} must be finite, got {value}")


@dataclass(frozen=True)
class PhysicalParams:
    """物理参数：质量 μ、库仑强度 κ、非中心项强度 ρ、γ 与 ħ"""
    mu: float
    kappa: float
    rho: float = 0.0
    gamma: float = 0.0
    hbar: float = 1.0

    def __post_init__(self) -> None:
        for name in ("mu", "kappa", "rho", "gamma", "hbar"):
            _require_finite(name, getattr(self, name))
        if self.mu <= 0 or self.kappa <= 0 or self.hbar <= 0:
            raise InvalidParameterError(
                f"mu, kappa and hbar must be positive, got "
                f"mu={self.mu}, kappa={self.kappa}, hbar={self.hbar}"
            )
        if self.rho < 0 or self.gamma < 0:
            raise InvalidParameterError(
                f"rho and gamma must be non-negative, got rho={self.rho}, gamma={self.gamma}"
            )

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class SeparationConstants:
    """分离常数：|ε|、α_θ、α_φ（α_φ 取非负，方向由采样的 orientation 表示）"""
    energy_abs: float
    alpha_theta: float
    alpha_phi: float

    def __post_init__(self) -> None:
        for name in ("energy_abs", "alpha_theta", "alpha_phi"):
            _require_finite(name, getattr(self, name))
        if self.energy_abs <= 0:
            raise InvalidParameterError(
                f"energy_abs must be positive for bound orbits, got {self.energy_abs}"
            )
        if self.alpha_theta < 0 or self.alpha_phi < 0:
            raise InvalidParameterError(
                f"alpha_theta and alpha_phi must be non-negative, got "
                f"{self.alpha_theta}, {self.alpha_phi}"
            )

    @property
    def energy(self) -> float:
        """能量 ε (< 0)"""
        return -self.energy_abs

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class QuantumNumbers:
    """量子数 (n_r, n_θ, n_φ)，能谱只依赖 |n_φ|"""
    n_r: int
    n_theta: int
    n_phi: int

    def __post_init__(self) -> None:
        for name in ("n_r", "n_theta", "n_phi"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
        if self.n_r < 0 or self.n_theta < 0:
            raise InvalidParameterError(
                f"n_r and n_theta must be non-negative, got {self.n_r}, {self.n_theta}"
            )

    def actions(self, hbar: float = 1.0) -> Tuple[float, float, float]:
        """
        Bohr-Sommerfeld 量子化条件 J_i = (n_i + ν_i)ħ

        Returns:
            Tuple[float, float, float]: (J_r, J_θ, J_φ)
        """
        nu_r, nu_theta, nu_phi = MASLOV_INDICES
        return (
            (self.n_r + nu_r) * hbar,
            (self.n_theta + nu_theta) * hbar,
            (abs(self.n_phi) + nu_phi) * hbar,
        )


@dataclass(frozen=True)
class ConstraintCheck:
    """单条不等式约束的检查结果"""
    name: str
    expression: str
    lhs: float
    rhs: float
    relation: str = "<="
    scale: float = 1.0
    derived: bool = False

    @property
    def margin(self) -> float:
        """满足方向上的余量（负值表示违反）"""
        if self.relation == "<=":
            return self.rhs - self.lhs
        return self.lhs - self.rhs

    @property
    def _tolerance(self) -> float:
        return BOUNDARY_RTOL * max(self.scale, abs(self.lhs), abs(self.rhs), 1.0)

    @property
    def satisfied(self) -> bool:
        return self.margin >= -self._tolerance

    @property
    def on_boundary(self) -> bool:
        return abs(self.margin) <= self._tolerance

    def to_dict(self) -> Dict[str, Union[str, float, bool]]:
        return {
            "name": self.name,
            "expression": self.expression,
            "lhs": self.lhs,
            "relation": self.relation,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "on_boundary": self.on_boundary,
            "derived": self.derived,
        }


@dataclass(frozen=True)
class ValidationReport:
    """
    束缚轨道约束报告

    is_bound 当且仅当 violated_constraints 为空；derived 条目只作一致性参考。
    """
    potential: PotentialKind
    checks: Tuple[ConstraintCheck, ...]
    degenerate: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def violated_constraints(self) -> Tuple[ConstraintCheck, ...]:
        return tuple(c for c in self.checks if not c.derived and not c.satisfied)

    @property
    def is_bound(self) -> bool:
        return len(self.violated_constraints) == 0

    @property
    def is_degenerate(self) -> bool:
        return len(self.degenerate) > 0

    def raise_if_unbound(self) -> None:
        """存在违反的约束时抛出 BoundOrbitError（取第一条）"""
        if self.is_bound:
            return
        first = self.violated_constraints[0]
        raise BoundOrbitError(
            first.name,
            f"{first.expression}: {first.lhs:.12g} {first.relation} {first.rhs:.12g} fails",
            lhs=first.lhs,
            rhs=first.rhs,
        )

    def to_dict(self) -> Dict:
        return {
            "potential": self.potential.value,
            "is_bound": self.is_bound,
            "violated_constraints": [c.name for c in self.violated_constraints],
            "degenerate": list(self.degenerate),
            "checks": [c.to_dict() for c in self.checks],
        }


def effective_alpha_phi(params: PhysicalParams, consts: SeparationConstants) -> float:
    """
    有效方位常数 α̃_φ = sqrt(α_φ² + 2μγ)

    Args:
        params: 物理参数
        consts: 分离常数

    Returns:
        float: α̃_φ，γ = 0 时等于 α_φ
    """
    if params.gamma == 0.0:
        return consts.alpha_phi
    return math.sqrt(consts.alpha_phi ** 2 + 2.0 * params.mu * params.gamma)


def _radial_check(params: PhysicalParams, consts: SeparationConstants) -> ConstraintCheck:
    # (i) 0 <= α_θ² <= κ²μ/(2|ε|)
    bound = params.kappa ** 2 * params.mu / (2.0 * consts.energy_abs)
    return ConstraintCheck(
        name="i",
        expression="alpha_theta^2 <= kappa^2 mu / (2|eps|)",
        lhs=consts.alpha_theta ** 2,
        rhs=bound,
        relation="<=",
    )


def _radial_flags(params: PhysicalParams, consts: SeparationConstants,
                  radial: ConstraintCheck) -> list:
    flags = []
    if radial.satisfied and radial.on_boundary:
        flags.append("circular_radius")
    if consts.alpha_theta == 0.0:
        flags.append("radial_plunge")
    return flags


def validate_cotangent(params: PhysicalParams, consts: SeparationConstants) -> ValidationReport:
    """
    余切势束缚轨道约束校验

    (i) 0 <= α_θ² <= κ²μ/(2|ε|)；(ii) α̃_φ²(α_θ² − α̃_φ²) + μ²ρ² >= 0；(iii) α_φ² >= 0。
    γ > ρ/2 时附带由 (ii) 推出的 α_θ² 下界作为 derived 条目。

    Args:
        params: 物理参数
        consts: 分离常数

    Returns:
        ValidationReport: 约束报告
    """
    a_eff_sq = effective_alpha_phi(params, consts) ** 2
    a_theta_sq = consts.alpha_theta ** 2
    mu_rho_sq = (params.mu * params.rho) ** 2

    radial = _radial_check(params, consts)
    polar = ConstraintCheck(
        name="ii",
        expression="alpha_phi_eff^2 (alpha_theta^2 - alpha_phi_eff^2) + mu^2 rho^2 >= 0",
        lhs=a_eff_sq * (a_theta_sq - a_eff_sq) + mu_rho_sq,
        rhs=0.0,
        relation=">=",
        scale=a_eff_sq * a_theta_sq + a_eff_sq ** 2 + mu_rho_sq,
    )
    azimuthal = ConstraintCheck(
        name="iii",
        expression="alpha_phi^2 >= 0",
        lhs=consts.alpha_phi ** 2,
        rhs=0.0,
        relation=">=",
    )
    checks = [radial, polar, azimuthal]

    if params.gamma > params.rho / 2.0:
        lower = max(0.0, params.mu * (4.0 * params.gamma ** 2 - params.rho ** 2)
                    / (2.0 * params.gamma))
        checks.append(ConstraintCheck(
            name="gamma_lower_bound",
            expression="max(0, mu (4 gamma^2 - rho^2) / (2 gamma)) <= alpha_theta^2",
            lhs=lower,
            rhs=a_theta_sq,
            relation="<=",
            derived=True,
        ))

    flags = _radial_flags(params, consts, radial)
    if polar.satisfied and polar.on_boundary:
        flags.append("theta_pinned")
    if a_eff_sq == 0.0:
        flags.append("touches_pole")

    report = ValidationReport(PotentialKind.COTANGENT, tuple(checks), tuple(flags))
    if report.is_bound and report.is_degenerate:
        logger.warning(f"Cotangent parameters on a constraint boundary: {', '.join(flags)}")
    return report


def validate_kibler(params: PhysicalParams, consts: SeparationConstants) -> ValidationReport:
    """
    Makarov-Kibler 势束缚轨道约束校验

    (i) 0 <= α_θ² <= κ²μ/(2|ε|)；(ii) α_θ²(α_θ² − α̃_φ²) + μ²ρ² >= 0；(iii) α̃_φ² >= 2μρ。

    Args:
        params: 物理参数
        consts: 分离常数

    Returns:
        ValidationReport: 约束报告
    """
    a_eff_sq = effective_alpha_phi(params, consts) ** 2
    a_theta_sq = consts.alpha_theta ** 2
    mu_rho = params.mu * params.rho

    radial = _radial_check(params, consts)
    polar = ConstraintCheck(
        name="ii",
        expression="alpha_theta^2 (alpha_theta^2 - alpha_phi_eff^2) + mu^2 rho^2 >= 0",
        lhs=a_theta_sq * (a_theta_sq - a_eff_sq) + mu_rho ** 2,
        rhs=0.0,
        relation=">=",
        scale=a_theta_sq ** 2 + a_theta_sq * a_eff_sq + mu_rho ** 2,
    )
    azimuthal = ConstraintCheck(
        name="iii",
        expression="alpha_phi_eff^2 >= 2 mu rho",
        lhs=a_eff_sq,
        rhs=2.0 * mu_rho,
        relation=">=",
    )

    flags = _radial_flags(params, consts, radial)
    if polar.satisfied and polar.on_boundary:
        flags.append("theta_pinned")
    if azimuthal.satisfied and azimuthal.on_boundary:
        flags.append("touches_pole")

    report = ValidationReport(PotentialKind.KIBLER, (radial, polar, azimuthal), tuple(flags))
    if report.is_bound and report.is_degenerate:
        logger.warning(f"Kibler parameters on a constraint boundary: {', '.join(flags)}")
    return report


def validate(params: PhysicalParams, consts: SeparationConstants,
             kind: PotentialKind) -> ValidationReport:
    """按势函数类型分派约束校验"""
    if kind is PotentialKind.COTANGENT:
        return validate_cotangent(params, consts)
    return validate_kibler(params, consts)


def potential_energy(
    params: PhysicalParams,
    kind: PotentialKind,
    r: Union[float, np.ndarray],
    theta: Union[float, np.ndarray]
) -> Union[float, np.ndarray]:
    """
    势能 V(r, θ)

    V_A = −κ/r − ρ cotθ/r² + γ/(r² sin²θ)
    V_B = −κ/r − ρ cosθ/(r² sin²θ) + γ/(r² sin²θ)

    Args:
        params: 物理参数
        kind: 势函数类型
        r: 径向坐标
        theta: 极角

    Returns:
        势能值
    """
    r = np.asarray(r, dtype=float)
    sin_t = np.sin(theta)
    cos_t = np.cos(theta)
    if kind is PotentialKind.COTANGENT:
        angular = -params.rho * cos_t / sin_t + params.gamma / sin_t ** 2
    else:
        angular = (-params.rho * cos_t + params.gamma) / sin_t ** 2
    return -params.kappa / r + angular / r ** 2
