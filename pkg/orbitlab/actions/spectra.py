"""
作用量与能谱

作用量变量 J_r、J_θ、J_φ 的闭式解，哈密顿量 H(J)，频率 ω_i = ∂H/∂J_i，
以及两类势的 Bohr-Sommerfeld 能谱与能谱表。
"""

import math
import logging
from dataclasses import dataclass, asdict
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..core.errors import BoundOrbitError, InvalidActionError, NoBoundStateError
from ..core.model import (
    PhysicalParams,
    SeparationConstants,
    QuantumNumbers,
    PotentialKind,
    BOUNDARY_RTOL,
    effective_alpha_phi,
    validate,
)
from ..radial.kepler import radial_turning_points

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ActionSet:
    """作用量变量 (J_r, J_θ, J_φ)"""
    j_r: float
    j_theta: float
    j_phi: float
    potential_kind: PotentialKind

    def to_dict(self) -> Dict[str, float]:
        return {"j_r": self.j_r, "j_theta": self.j_theta, "j_phi": self.j_phi}


@dataclass(frozen=True)
class FrequencySet:
    """角变量频率 (ω_r, ω_θ, ω_φ)"""
    omega_r: float
    omega_theta: float
    omega_phi: float

    @property
    def radial_period(self) -> float:
        return 2.0 * math.pi / self.omega_r

    def ratios(self) -> Dict[str, float]:
        return {
            "omega_theta/omega_r": self.omega_theta / self.omega_r,
            "omega_phi/omega_r": self.omega_phi / self.omega_r,
            "omega_phi/omega_theta": self.omega_phi / self.omega_theta,
        }

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class ActionReport:
    """作用量、能量与频率汇总"""
    actions: ActionSet
    energy: float
    frequencies: FrequencySet

    def to_dict(self) -> Dict:
        return {
            "potential": self.actions.potential_kind.value,
            "actions": self.actions.to_dict(),
            "energy": self.energy,
            "frequencies": self.frequencies.to_dict(),
            "radial_period": self.frequencies.radial_period,
            "frequency_ratios": self.frequencies.ratios(),
        }


def _clip_action(value: float, scale: float) -> float:
    # 边界上的舍入误差不应产生负作用量
    if -BOUNDARY_RTOL * max(scale, 1.0) < value < 0.0:
        return 0.0
    return value


def j_r(params: PhysicalParams, consts: SeparationConstants) -> float:
    """
    径向作用量 J_r = κ·sqrt(μ/(2|ε|)) − α_θ

    Args:
        params: 物理参数
        consts: 分离常数

    Returns:
        float: J_r (>= 0)

    Raises:
        BoundOrbitError: 约束 (i) 不成立
    """
    top = params.kappa * math.sqrt(params.mu / (2.0 * consts.energy_abs))
    value = _clip_action(top - consts.alpha_theta, top)
    if value < 0.0:
        raise BoundOrbitError(
            "i", f"J_r = {value:.6g} < 0", lhs=consts.alpha_theta ** 2, rhs=top ** 2
        )
    return value


def j_theta_cotangent(params: PhysicalParams, consts: SeparationConstants) -> float:
    """
    余切势极向作用量 J_θ = sqrt(½(sqrt(α_θ⁴ + 4μ²ρ²) + α_θ²)) − α̃_φ

    Raises:
        BoundOrbitError: 约束不成立
    """
    validate(params, consts, PotentialKind.COTANGENT).raise_if_unbound()
    a_theta_sq = consts.alpha_theta ** 2
    S = math.hypot(a_theta_sq, 2.0 * params.mu * params.rho)
    top = math.sqrt(0.5 * (S + a_theta_sq))
    return _clip_action(top - effective_alpha_phi(params, consts), top)


def j_theta_kibler(params: PhysicalParams, consts: SeparationConstants) -> float:
    """
    Makarov-Kibler 势极向作用量 J_θ = α_θ − ½(sqrt(α̃_φ² + 2μρ) + sqrt(α̃_φ² − 2μρ))

    Raises:
        BoundOrbitError: 约束 (iii) 等不成立
    """
    validate(params, consts, PotentialKind.KIBLER).raise_if_unbound()
    a_eff_sq = effective_alpha_phi(params, consts) ** 2
    two_mu_rho = 2.0 * params.mu * params.rho
    value = consts.alpha_theta - 0.5 * (
        math.sqrt(a_eff_sq + two_mu_rho) + math.sqrt(max(a_eff_sq - two_mu_rho, 0.0))
    )
    return _clip_action(value, consts.alpha_theta)


def j_phi(consts: SeparationConstants) -> float:
    """方位作用量 J_φ = α_φ"""
    return consts.alpha_phi


def compute_actions(params: PhysicalParams, consts: SeparationConstants,
                    kind: PotentialKind) -> ActionSet:
    """
    计算作用量变量

    Args:
        params: 物理参数
        consts: 分离常数
        kind: 势函数类型

    Returns:
        ActionSet: 作用量
    """
    if kind is PotentialKind.COTANGENT:
        j_theta = j_theta_cotangent(params, consts)
    else:
        j_theta = j_theta_kibler(params, consts)
    return ActionSet(
        j_r=j_r(params, consts),
        j_theta=j_theta,
        j_phi=j_phi(consts),
        potential_kind=kind,
    )


def _cotangent_bracket(params: PhysicalParams, actions: ActionSet) -> Tuple[float, float, float]:
    # 返回 (D, X, sqrt(X² − μ²ρ²/X²))，X = J_θ + sqrt(J_φ² + 2μγ)
    if params.gamma == 0.0:
        j_phi_eff = abs(actions.j_phi)
    else:
        j_phi_eff = math.sqrt(actions.j_phi ** 2 + 2.0 * params.mu * params.gamma)
    X = actions.j_theta + j_phi_eff
    mu_rho = params.mu * params.rho
    if X <= 0.0:
        raise InvalidActionError(f"J_theta + J_phi_eff = {X:.6g} must be positive")
    inner = X ** 2 - mu_rho ** 2 / X ** 2
    if inner < 0.0:
        raise InvalidActionError(
            f"(J_theta + J_phi_eff)^2 = {X ** 2:.6g} < mu rho = {mu_rho:.6g}: square root is imaginary"
        )
    root = math.sqrt(inner)
    D = actions.j_r + root
    if D <= 0.0:
        raise InvalidActionError(f"action bracket {D:.6g} must be positive")
    return D, X, root


def _kibler_bracket(params: PhysicalParams, actions: ActionSet) -> Tuple[float, float, float]:
    # 返回 (D, sqrt(J_φ² + 2μ(γ+ρ)), sqrt(J_φ² + 2μ(γ−ρ)))
    plus = actions.j_phi ** 2 + 2.0 * params.mu * (params.gamma + params.rho)
    minus = actions.j_phi ** 2 + 2.0 * params.mu * (params.gamma - params.rho)
    if minus < 0.0:
        raise InvalidActionError(
            f"J_phi^2 + 2 mu (gamma - rho) = {minus:.6g} < 0: square root is imaginary"
        )
    root_plus = math.sqrt(plus)
    root_minus = math.sqrt(minus)
    D = actions.j_r + actions.j_theta + 0.5 * (root_plus + root_minus)
    if D <= 0.0:
        raise InvalidActionError(f"action bracket {D:.6g} must be positive")
    return D, root_plus, root_minus


def hamiltonian_cotangent(params: PhysicalParams, actions: ActionSet) -> float:
    """
    余切势 H(J) = −μκ² / (2[J_r + sqrt(X² − μ²ρ²/X²)]²)，X = J_θ + sqrt(J_φ² + 2μγ)

    Args:
        params: 物理参数
        actions: 作用量

    Returns:
        float: 能量 (< 0)

    Raises:
        InvalidActionError: 根号下为负
    """
    D, _, _ = _cotangent_bracket(params, actions)
    return -params.mu * params.kappa ** 2 / (2.0 * D ** 2)


def hamiltonian_kibler(params: PhysicalParams, actions: ActionSet) -> float:
    """
    Makarov-Kibler 势 H(J) = −μκ² / (2[J_r + J_θ + ½(sqrt(J_φ²+2μ(γ+ρ)) + sqrt(J_φ²+2μ(γ−ρ)))]²)

    Raises:
        InvalidActionError: 根号下为负
    """
    D, _, _ = _kibler_bracket(params, actions)
    return -params.mu * params.kappa ** 2 / (2.0 * D ** 2)


def hamiltonian(params: PhysicalParams, actions: ActionSet) -> float:
    """按作用量所属势函数分派 H(J)"""
    if actions.potential_kind is PotentialKind.COTANGENT:
        return hamiltonian_cotangent(params, actions)
    return hamiltonian_kibler(params, actions)


def frequencies(params: PhysicalParams, actions: ActionSet,
                potential_kind: Optional[PotentialKind] = None) -> FrequencySet:
    """
    频率 ω_i = ∂H/∂J_i（解析求导）

    H = −μκ²/(2D²) ⇒ ω_i = μκ²/D³ · ∂D/∂J_i。余切势 γ = 0 时 ω_θ 与 ω_φ 结构上相等；
    Makarov-Kibler 势 ω_r 与 ω_θ 结构上相等。

    Args:
        params: 物理参数
        actions: 作用量
        potential_kind: 势函数类型，缺省取 actions.potential_kind

    Returns:
        FrequencySet: 频率
    """
    kind = potential_kind or actions.potential_kind
    mu_kappa_sq = params.mu * params.kappa ** 2

    if kind is PotentialKind.COTANGENT:
        D, X, root = _cotangent_bracket(params, actions)
        prefactor = mu_kappa_sq / D ** 3
        mu_rho_sq = (params.mu * params.rho) ** 2
        d_root_dx = (X + mu_rho_sq / X ** 3) / root
        if params.gamma == 0.0:
            dx_dj_phi = 1.0
        else:
            dx_dj_phi = actions.j_phi / math.sqrt(actions.j_phi ** 2 + 2.0 * params.mu * params.gamma)
        omega_r = prefactor
        omega_theta = prefactor * d_root_dx
        omega_phi = prefactor * d_root_dx * dx_dj_phi
    else:
        D, root_plus, root_minus = _kibler_bracket(params, actions)
        if root_minus == 0.0:
            raise InvalidActionError("J_phi^2 + 2 mu (gamma - rho) = 0: omega_phi diverges")
        prefactor = mu_kappa_sq / D ** 3
        omega_r = prefactor
        omega_theta = prefactor
        omega_phi = prefactor * 0.5 * (actions.j_phi / root_plus + actions.j_phi / root_minus)

    return FrequencySet(omega_r=omega_r, omega_theta=omega_theta, omega_phi=omega_phi)


def action_report(params: PhysicalParams, consts: SeparationConstants,
                  kind: PotentialKind) -> ActionReport:
    """
    汇总作用量、H(J) 与频率

    Args:
        params: 物理参数
        consts: 分离常数
        kind: 势函数类型

    Returns:
        ActionReport: 汇总结果
    """
    actions = compute_actions(params, consts, kind)
    energy = hamiltonian(params, actions)
    freqs = frequencies(params, actions, kind)
    radial = radial_turning_points(params, consts)
    logger.debug(
        f"Radial period from omega_r {freqs.radial_period:.12g} vs turning points {radial.period_t:.12g}"
    )
    return ActionReport(actions=actions, energy=energy, frequencies=freqs)


def bsq_energy_cotangent(params: PhysicalParams, qn: QuantumNumbers) -> float:
    """
    余切势 Bohr-Sommerfeld 能谱

    E = −μκ² / (2ħ²{n_r + ½ + sqrt(X² − μ²ρ²/(ħ⁴X²))}²)，X = n_θ + ñ_φ + ½，
    ñ_φ = sqrt(n_φ² + 2μγ/ħ²)

    Args:
        params: 物理参数
        qn: 量子数

    Returns:
        float: 能量

    Raises:
        NoBoundStateError: 根号下为负
    """
    hbar_sq = params.hbar ** 2
    n_phi_eff = math.sqrt(qn.n_phi ** 2 + 2.0 * params.mu * params.gamma / hbar_sq)
    X = qn.n_theta + n_phi_eff + 0.5
    inner = X ** 2 - (params.mu * params.rho) ** 2 / (hbar_sq ** 2 * X ** 2)
    if inner < 0.0:
        raise NoBoundStateError(
            f"no bound state for {qn}: (n_theta + n_phi_eff + 1/2)^2 hbar^2 < mu rho"
        )
    bracket = qn.n_r + 0.5 + math.sqrt(inner)
    return -params.mu * params.kappa ** 2 / (2.0 * hbar_sq * bracket ** 2)


def bsq_energy_kibler(params: PhysicalParams, qn: QuantumNumbers) -> float:
    """
    Makarov-Kibler 势 Bohr-Sommerfeld 能谱

    E = −μκ² / (2ħ²[n_r + n_θ + 1 + ½(sqrt(n_φ² + 2μ(γ+ρ)/ħ²) + sqrt(n_φ² + 2μ(γ−ρ)/ħ²))]²)

    Raises:
        NoBoundStateError: 根号下为负
    """
    hbar_sq = params.hbar ** 2
    plus = qn.n_phi ** 2 + 2.0 * params.mu * (params.gamma + params.rho) / hbar_sq
    minus = qn.n_phi ** 2 + 2.0 * params.mu * (params.gamma - params.rho) / hbar_sq
    if minus < 0.0:
        raise NoBoundStateError(
            f"no bound state for {qn}: n_phi^2 + 2 mu (gamma - rho)/hbar^2 < 0"
        )
    bracket = qn.n_r + qn.n_theta + 1.0 + 0.5 * (math.sqrt(plus) + math.sqrt(minus))
    return -params.mu * params.kappa ** 2 / (2.0 * hbar_sq * bracket ** 2)


def bsq_energy(params: PhysicalParams, qn: QuantumNumbers, kind: PotentialKind) -> float:
    """按势函数类型分派 Bohr-Sommerfeld 能谱"""
    if kind is PotentialKind.COTANGENT:
        return bsq_energy_cotangent(params, qn)
    return bsq_energy_kibler(params, qn)


def spectrum_table(
    params: PhysicalParams,
    kind: PotentialKind,
    n_max: int,
    show_progress: bool = False
) -> pd.DataFrame:
    """
    能谱表：n_r、n_θ ∈ [0, n_max]，n_φ ∈ [−n_max, n_max]

    Args:
        params: 物理参数
        kind: 势函数类型
        n_max: 量子数上限
        show_progress: 是否显示进度条

    Returns:
        pd.DataFrame: 列 n_r, n_theta, n_phi, bound, E_bsq, E_qm, rel_diff, l_eff
    """
    from ..quantum.wavefunctions import qm_energy, polar_params

    rows = []
    n_r_values = range(n_max + 1)
    iterator = tqdm(n_r_values, desc=f"{kind.value} spectrum") if show_progress else n_r_values
    for n_r in iterator:
        for n_theta in range(n_max + 1):
            for n_phi in range(-n_max, n_max + 1):
                qn = QuantumNumbers(n_r, n_theta, n_phi)
                try:
                    e_bsq = bsq_energy(params, qn, kind)
                    e_qm = qm_energy(params, qn, kind)
                    l_eff = polar_params(params, qn, kind).l_eff
                except NoBoundStateError:
                    rows.append({
                        "n_r": n_r, "n_theta": n_theta, "n_phi": n_phi, "bound": False,
                        "E_bsq": np.nan, "E_qm": np.nan, "rel_diff": np.nan, "l_eff": np.nan,
                    })
                    continue
                rows.append({
                    "n_r": n_r, "n_theta": n_theta, "n_phi": n_phi, "bound": True,
                    "E_bsq": e_bsq, "E_qm": e_qm,
                    "rel_diff": abs(e_bsq - e_qm) / abs(e_qm),
                    "l_eff": l_eff,
                })

    table = pd.DataFrame(rows, columns=[
        "n_r", "n_theta", "n_phi", "bound", "E_bsq", "E_qm", "rel_diff", "l_eff"
    ])
    n_unbound = int((~table["bound"]).sum())
    logger.info(
        f"Spectrum table: {len(table)} triples, {n_unbound} without bound state, "
        f"max rel diff {table['rel_diff'].max():.3e}"
    )
    return table


def shell_degeneracy(table: pd.DataFrame, digits: int = 12) -> pd.Series:
    """
    按能量（保留 digits 位有效数字）统计束缚态简并度

    Args:
        table: spectrum_table 的结果
        digits: 有效数字位数

    Returns:
        pd.Series: 索引为能量，值为态的个数
    """
    bound = table[table["bound"]]
    keys = bound["E_qm"].map(lambda e: float(f"{e:.{digits}g}"))
    return keys.value_counts().sort_index(ascending=False)
