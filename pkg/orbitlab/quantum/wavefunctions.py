"""
量子束缚态

极向方程参数 (α, β, l)、径向与极向波函数（未归一化）、量子能谱，
以及供残差检验使用的二阶线性常微分方程与节点计数。
"""

import math
import logging
from dataclasses import dataclass
from typing import Callable, Tuple, Union

import numpy as np
from numba import jit

from ..core.errors import NoBoundStateError
from ..core.model import PhysicalParams, QuantumNumbers, PotentialKind
from ..oracle.quadrature import SecondOrderODE
from .polynomials import laguerre, jacobi, romanovski

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
Wavefunction = Callable[[ArrayLike], ArrayLike]


@dataclass(frozen=True)
class CotangentPolarParams:
    """余切势极向参数：Romanovski 参数 α、β 与有效角量子数 l"""
    alpha_R: float
    beta_R: float
    l_eff: float
    n_phi_eff: float


@dataclass(frozen=True)
class KiblerPolarParams:
    """Makarov-Kibler 势极向参数：Jacobi 参数 α、β 与有效角量子数 l"""
    alpha_J: float
    beta_J: float
    l_eff: float


def effective_n_phi_sq(params: PhysicalParams, n_phi: int) -> float:
    """ñ_φ² = n_φ² + 2μγ/ħ²"""
    return n_phi ** 2 + 2.0 * params.mu * params.gamma / params.hbar ** 2


def cotangent_polar_params(params: PhysicalParams, n_theta: int,
                           n_phi_sq_eff: float) -> CotangentPolarParams:
    """
    余切势极向参数

    X = n_θ + ñ_φ + ½，β = ½ − n_θ − ñ_φ，α = 2μρ/(ħ²X)，l + ½ = X·sqrt(1 − μ²ρ²/(ħ⁴X⁴))

    Args:
        params: 物理参数
        n_theta: 极向量子数
        n_phi_sq_eff: ñ_φ²

    Returns:
        CotangentPolarParams: 极向参数

    Raises:
        NoBoundStateError: l + ½ 为虚数
    """
    n_phi_eff = math.sqrt(n_phi_sq_eff)
    X = n_theta + n_phi_eff + 0.5
    mu_rho = params.mu * params.rho / params.hbar ** 2
    inner = 1.0 - mu_rho ** 2 / X ** 4
    if inner < 0.0:
        raise NoBoundStateError(
            f"no bound state for n_theta={n_theta}, n_phi_eff={n_phi_eff:.6g}: "
            f"(n_theta + n_phi_eff + 1/2)^2 = {X ** 2:.6g} < mu rho / hbar^2 = {mu_rho:.6g}"
        )
    return CotangentPolarParams(
        alpha_R=2.0 * mu_rho / X,
        beta_R=0.5 - n_theta - n_phi_eff,
        l_eff=X * math.sqrt(inner) - 0.5,
        n_phi_eff=n_phi_eff,
    )


def kibler_polar_params(params: PhysicalParams, n_theta: int,
                        n_phi_sq_eff: float) -> KiblerPolarParams:
    """
    Makarov-Kibler 势极向参数

    α = sqrt(ñ_φ² − 2μρ/ħ²)，β = sqrt(ñ_φ² + 2μρ/ħ²)，l = n_θ + ½(α + β)

    Args:
        params: 物理参数
        n_theta: 极向量子数
        n_phi_sq_eff: ñ_φ²

    Returns:
        KiblerPolarParams: 极向参数

    Raises:
        NoBoundStateError: α 为虚数
    """
    two_mu_rho = 2.0 * params.mu * params.rho / params.hbar ** 2
    alpha_sq = n_phi_sq_eff - two_mu_rho
    if alpha_sq < 0.0:
        raise NoBoundStateError(
            f"no bound state for n_theta={n_theta}: n_phi_eff^2 = {n_phi_sq_eff:.6g} "
            f"< 2 mu rho / hbar^2 = {two_mu_rho:.6g}"
        )
    alpha = math.sqrt(alpha_sq)
    beta = math.sqrt(n_phi_sq_eff + two_mu_rho)
    return KiblerPolarParams(alpha_J=alpha, beta_J=beta, l_eff=n_theta + 0.5 * (alpha + beta))


def polar_params(params: PhysicalParams, qn: QuantumNumbers, kind: PotentialKind):
    """按势函数类型分派极向参数"""
    n_phi_sq = effective_n_phi_sq(params, qn.n_phi)
    if kind is PotentialKind.COTANGENT:
        return cotangent_polar_params(params, qn.n_theta, n_phi_sq)
    return kibler_polar_params(params, qn.n_theta, n_phi_sq)


def _energy_from_l(params: PhysicalParams, n_r: int, l_eff: float) -> float:
    return -params.mu * params.kappa ** 2 / (2.0 * params.hbar ** 2 * (n_r + l_eff + 1.0) ** 2)


def qm_energy_cotangent(params: PhysicalParams, qn: QuantumNumbers) -> float:
    """余切势量子能谱 E = −μκ²/(2ħ²(n_r + l + 1)²)"""
    pp = cotangent_polar_params(params, qn.n_theta, effective_n_phi_sq(params, qn.n_phi))
    return _energy_from_l(params, qn.n_r, pp.l_eff)


def qm_energy_kibler(params: PhysicalParams, qn: QuantumNumbers) -> float:
    """Makarov-Kibler 势量子能谱 E = −μκ²/(2ħ²(n_r + l + 1)²)"""
    pp = kibler_polar_params(params, qn.n_theta, effective_n_phi_sq(params, qn.n_phi))
    return _energy_from_l(params, qn.n_r, pp.l_eff)


def qm_energy(params: PhysicalParams, qn: QuantumNumbers, kind: PotentialKind) -> float:
    """按势函数类型分派量子能谱"""
    if kind is PotentialKind.COTANGENT:
        return qm_energy_cotangent(params, qn)
    return qm_energy_kibler(params, qn)


def radial_wave_number(params: PhysicalParams, energy: float) -> float:
    """Q = sqrt(2μ|E|)/ħ"""
    return math.sqrt(2.0 * params.mu * abs(energy)) / params.hbar


def radial_wavefunction(params: PhysicalParams, n_r: int, l_eff: float,
                        energy: float) -> Wavefunction:
    """
    径向波函数 R(r) = (Qr)^l e^{−Qr} L_{n_r}^{2l+1}(2Qr)

    Args:
        params: 物理参数
        n_r: 径向量子数
        l_eff: 有效角量子数（可为非整数）
        energy: 能量 (< 0)

    Returns:
        R(r)，r > 0
    """
    if energy >= 0.0:
        raise NoBoundStateError(f"radial wavefunction needs E < 0, got {energy:.6g}")
    Q = radial_wave_number(params, energy)
    poly = laguerre(n_r, 2.0 * l_eff + 1.0)

    def R(r: ArrayLike) -> ArrayLike:
        x = Q * np.asarray(r, dtype=float)
        return np.power(x, l_eff) * np.exp(-x) * poly(2.0 * x)

    return R


def polar_wavefunction_cotangent(params: PhysicalParams, n_theta: int, n_phi: int) -> Wavefunction:
    """
    余切势极向波函数 Θ(θ) = e^{−αθ/2} (sin θ)^{n_θ+ñ_φ} R_{n_θ}^{(α,β)}(cot θ)

    Args:
        params: 物理参数
        n_theta: 极向量子数
        n_phi: 方位量子数

    Returns:
        Θ(θ)，θ ∈ (0, π)
    """
    pp = cotangent_polar_params(params, n_theta, effective_n_phi_sq(params, n_phi))
    poly = romanovski(n_theta, pp.alpha_R, pp.beta_R)
    power = n_theta + pp.n_phi_eff
    logger.debug(
        f"Cotangent polar params n_theta={n_theta}, n_phi={n_phi}: "
        f"alpha={pp.alpha_R:.12g}, beta={pp.beta_R:.12g}, l={pp.l_eff:.12g}"
    )

    def theta_fn(theta: ArrayLike) -> ArrayLike:
        theta = np.asarray(theta, dtype=float)
        sin_t = np.sin(theta)
        return np.exp(-0.5 * pp.alpha_R * theta) * np.power(sin_t, power) * poly(np.cos(theta) / sin_t)

    return theta_fn


def polar_wavefunction_kibler(params: PhysicalParams, n_theta: int, n_phi: int) -> Wavefunction:
    """
    Makarov-Kibler 势极向波函数 Θ(θ) = (1−cos θ)^{α/2} (1+cos θ)^{β/2} P_{n_θ}^{(α,β)}(cos θ)

    Args:
        params: 物理参数
        n_theta: 极向量子数
        n_phi: 方位量子数

    Returns:
        Θ(θ)，θ ∈ (0, π)
    """
    pp = kibler_polar_params(params, n_theta, effective_n_phi_sq(params, n_phi))
    poly = jacobi(n_theta, pp.alpha_J, pp.beta_J)
    logger.debug(
        f"Kibler polar params n_theta={n_theta}, n_phi={n_phi}: "
        f"alpha={pp.alpha_J:.12g}, beta={pp.beta_J:.12g}, l={pp.l_eff:.12g}"
    )

    def theta_fn(theta: ArrayLike) -> ArrayLike:
        theta = np.asarray(theta, dtype=float)
        # 1 ∓ cos θ = 2 sin²(θ/2)、2 cos²(θ/2)
        one_minus = 2.0 * np.sin(0.5 * theta) ** 2
        one_plus = 2.0 * np.cos(0.5 * theta) ** 2
        return np.power(one_minus, 0.5 * pp.alpha_J) * np.power(one_plus, 0.5 * pp.beta_J) * poly(np.cos(theta))

    return theta_fn


def _from_terms(a: Callable[[np.ndarray], np.ndarray], b: Callable[[np.ndarray], np.ndarray],
                terms: Tuple[Callable[[np.ndarray], np.ndarray], ...],
                singular_points: Tuple[float, ...]) -> SecondOrderODE:
    return SecondOrderODE(
        a=a,
        b=b,
        c=lambda x: sum(term(x) for term in terms),
        c_terms=terms,
        singular_points=singular_points,
    )


def radial_ode(params: PhysicalParams, l_eff: float, energy: float) -> SecondOrderODE:
    """
    径向方程 R″ + (2/r) R′ + [2μE/ħ² + 2μκ/(ħ²r) − l(l+1)/r²] R = 0

    c 的三项分别给出，残差尺度取其中最大者。
    """
    hbar_sq = params.hbar ** 2
    two_mu_e = 2.0 * params.mu * energy / hbar_sq
    two_mu_kappa = 2.0 * params.mu * params.kappa / hbar_sq
    ll = l_eff * (l_eff + 1.0)
    return _from_terms(
        a=lambda r: np.ones_like(r),
        b=lambda r: 2.0 / r,
        terms=(
            lambda r: np.full_like(r, two_mu_e),
            lambda r: two_mu_kappa / r,
            lambda r: -ll / r ** 2,
        ),
        singular_points=(0.0,),
    )


def _polar_ode(l_eff: float, *angular: Callable[[np.ndarray], np.ndarray]) -> SecondOrderODE:
    # Θ″ + cot θ Θ′ + [l(l+1) + Σ angular(θ)] Θ = 0
    ll = l_eff * (l_eff + 1.0)
    return _from_terms(
        a=lambda t: np.ones_like(t),
        b=lambda t: np.cos(t) / np.sin(t),
        terms=(lambda t: np.full_like(t, ll),) + angular,
        singular_points=(0.0, math.pi),
    )


def cotangent_polar_ode(params: PhysicalParams, qn: QuantumNumbers) -> SecondOrderODE:
    """余切势极向方程，c(θ) = l(l+1) + 2μρ cot θ/ħ² − ñ_φ²/sin²θ"""
    n_phi_sq = effective_n_phi_sq(params, qn.n_phi)
    pp = cotangent_polar_params(params, qn.n_theta, n_phi_sq)
    two_mu_rho = 2.0 * params.mu * params.rho / params.hbar ** 2
    return _polar_ode(
        pp.l_eff,
        lambda t: two_mu_rho * np.cos(t) / np.sin(t),
        lambda t: -n_phi_sq / np.sin(t) ** 2,
    )


def kibler_polar_ode(params: PhysicalParams, qn: QuantumNumbers) -> SecondOrderODE:
    """Makarov-Kibler 势极向方程，c(θ) = l(l+1) + 2μρ cos θ/(ħ² sin²θ) − ñ_φ²/sin²θ"""
    n_phi_sq = effective_n_phi_sq(params, qn.n_phi)
    pp = kibler_polar_params(params, qn.n_theta, n_phi_sq)
    two_mu_rho = 2.0 * params.mu * params.rho / params.hbar ** 2
    return _polar_ode(
        pp.l_eff,
        lambda t: two_mu_rho * np.cos(t) / np.sin(t) ** 2,
        lambda t: -n_phi_sq / np.sin(t) ** 2,
    )


@jit(nopython=True)
def _count_sign_changes(values):
    count = 0
    last_sign = 0
    for i in range(len(values)):
        v = values[i]
        if v > 0.0:
            sign = 1
        elif v < 0.0:
            sign = -1
        else:
            continue
        if last_sign != 0 and sign != last_sign:
            count += 1
        last_sign = sign
    return count


def count_nodes(values: np.ndarray) -> int:
    """
    统计采样值的变号次数（跳过精确为零的点）

    Args:
        values: 网格上的函数值

    Returns:
        int: 节点个数
    """
    return int(_count_sign_changes(np.ascontiguousarray(values, dtype=np.float64)))


def polar_grid(n_points: int = 2001, margin: float = 1e-3) -> np.ndarray:
    """极向节点计数网格 [margin, π − margin]"""
    return np.linspace(margin, math.pi - margin, n_points)


def radial_grid(params: PhysicalParams, n_r: int, l_eff: float, energy: float,
                n_points: int = 4001) -> np.ndarray:
    """
    径向节点计数网格 (0, r_max]

    r_max 取在 L_{n_r}^{2l+1}(2Qr) 最大零点之外（零点 x < 4n_r + 2(2l+1) + 2）。
    """
    Q = radial_wave_number(params, energy)
    x_max = 4.0 * n_r + 2.0 * (2.0 * l_eff + 1.0) + 10.0
    r_max = x_max / (2.0 * Q)
    return np.linspace(r_max / n_points, r_max, n_points)
