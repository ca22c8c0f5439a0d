"""
数值检验工具

转折点积分（余弦代换消去端点平方根奇点）、分段角度积分、单调函数反演、
沿轨迹的能量守恒检验，以及二阶线性常微分方程的有限差分残差。
"""

import math
import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from numba import jit
from scipy.integrate import quad
from scipy.optimize import brentq

from ..core.errors import BracketError, OracleConvergenceError, TrajectoryTooShortError
from ..core.model import PhysicalParams, PotentialKind, potential_energy

logger = logging.getLogger(__name__)

# scipy.integrate.quad 的最大子区间数
QUAD_LIMIT = 200
# epsabs = 0 时 quad 接受的最小相对容限
MIN_RELATIVE_TOL = 50.0 * np.finfo(float).eps


@dataclass(frozen=True)
class TurningPointIntegral:
    """
    两转折点之间的积分 ∫_a^b f(x) dx

    integrand 在端点处至多按 1/sqrt 发散（或按 sqrt 趋零）。
    weighted 为真时积分为 ∫_a^b f(x) dx/sqrt((x−a)(b−x))，平方根因子由代换解析消去，
    f 只需在 [a, b] 上有界。
    """
    integrand: Callable[[float], float]
    lower: float
    upper: float
    weighted: bool = False


@dataclass(frozen=True)
class IntegralResult:
    """积分值与误差估计"""
    value: float
    error: float


@dataclass(frozen=True)
class SecondOrderODE:
    """
    二阶线性方程 a(x) y″ + b(x) y′ + c(x) y = 0

    c_terms 为 c 的各加项（缺省只有 c 本身），用于步长与残差尺度；
    singular_points 为方程的奇点。
    """
    a: Callable[[np.ndarray], np.ndarray]
    b: Callable[[np.ndarray], np.ndarray]
    c: Callable[[np.ndarray], np.ndarray]
    c_terms: Tuple[Callable[[np.ndarray], np.ndarray], ...] = ()
    singular_points: Tuple[float, ...] = ()

    def terms(self) -> Tuple[Callable[[np.ndarray], np.ndarray], ...]:
        return self.c_terms or (self.c,)


def _check_error(value: float, error: float, tol: float, what: str) -> None:
    if error > tol * max(1.0, abs(value)):
        raise OracleConvergenceError(
            f"{what} did not converge: error estimate {error:.3e} > tolerance {tol:.3e}",
            achieved=error,
            tolerance=tol,
        )


def integrate_turning_point(integral: TurningPointIntegral, tol: float = 1e-11,
                            stop: Optional[float] = None) -> IntegralResult:
    """
    转折点积分

    代换 x = ½(a+b) − ½(b−a) cos τ，dx = ½(b−a) sin τ dτ，τ ∈ [0, π]，
    端点的平方根奇点被 sin τ 抵消，再用自适应 Gauss-Kronrod 积分。
    weighted 形式下 dx/sqrt((x−a)(b−x)) = dτ，被积函数不含端点奇点。

    Args:
        integral: 积分描述
        tol: 绝对/相对误差容限
        stop: 积分上限（缺省为 b），取值 [a, b]

    Returns:
        IntegralResult: 积分值与误差估计

    Raises:
        ValueError: a >= b 或 tol <= 0
        OracleConvergenceError: 误差估计超过容限
    """
    a, b = integral.lower, integral.upper
    if not a < b:
        raise ValueError(f"turning points must satisfy a < b, got a={a!r}, b={b!r}")
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol!r}")

    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)

    if stop is None:
        tau_max = math.pi
    else:
        cos_tau = (mid - stop) / half
        tau_max = math.acos(min(max(cos_tau, -1.0), 1.0))

    def transformed(tau: float) -> float:
        x = mid - half * math.cos(tau)
        if integral.weighted:
            return integral.integrand(x)
        return integral.integrand(x) * half * math.sin(tau)

    value, error = quad(transformed, 0.0, tau_max, epsabs=tol, epsrel=tol, limit=QUAD_LIMIT)
    _check_error(value, error, tol, "turning-point integral")
    return IntegralResult(value=value, error=error)


def integrate_angle(f: Callable[[float], float], a: float, b: float, period: float,
                    tol: float = 1e-11) -> IntegralResult:
    """
    光滑周期被积函数的角度积分，在周期边界处分段

    Args:
        f: 被积函数
        a: 下限
        b: 上限
        period: 被积函数的周期
        tol: 误差容限

    Returns:
        IntegralResult: 积分值与误差估计（b < a 时为负）

    Raises:
        OracleConvergenceError: 误差估计超过容限
    """
    if b == a:
        return IntegralResult(value=0.0, error=0.0)
    if b < a:
        result = integrate_angle(f, b, a, period, tol)
        return IntegralResult(value=-result.value, error=result.error)

    first = math.floor(a / period) + 1
    last = math.ceil(b / period) - 1
    edges = [a] + [k * period for k in range(first, last + 1)] + [b]

    total = 0.0
    total_error = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= lo:
            continue
        value, error = quad(f, lo, hi, epsabs=tol, epsrel=tol, limit=QUAD_LIMIT)
        total += value
        total_error += error
    _check_error(total, total_error, tol * max(1, len(edges) - 1), "angle integral")
    return IntegralResult(value=total, error=total_error)


def invert_monotone(f: Callable[[float], float], target: float,
                    bracket: Tuple[float, float], xtol: float = 1e-14) -> float:
    """
    求解单调函数方程 f(x) = target

    Args:
        f: 区间上连续单调的函数
        target: 目标值
        bracket: 搜索区间 (lo, hi)
        xtol: 自变量容限

    Returns:
        float: 解 x

    Raises:
        BracketError: target 不在 f(bracket) 内
    """
    lo, hi = bracket
    f_lo = f(lo) - target
    f_hi = f(hi) - target
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise BracketError(
            f"target {target:.12g} outside f(bracket) = [{f_lo + target:.12g}, {f_hi + target:.12g}]"
        )
    return brentq(lambda x: f(x) - target, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps)


@jit(nopython=True)
def _central_diff4(values):
    # 下标空间的四阶中心差分，仅内点 2..n−3
    n = len(values)
    out = np.empty(n - 4)
    for i in range(2, n - 2):
        out[i - 2] = (-values[i + 2] + 8.0 * values[i + 1] - 8.0 * values[i - 1] + values[i - 2]) / 12.0
    return out


def energy_along_orbit(params: PhysicalParams, traj, potential_kind: PotentialKind) -> float:
    """
    沿采样轨迹检验能量守恒

    速度取下标空间四阶中心差分之比 v = (dx/di)/(dt/di)，对任意光滑单调的 t(i) 成立，
    仅在内点求值。

    Args:
        params: 物理参数
        traj: Trajectory
        potential_kind: 势函数类型

    Returns:
        float: max |E + |ε|| / |ε|

    Raises:
        TrajectoryTooShortError: 采样点少于 5 个
    """
    if len(traj) < 5:
        raise TrajectoryTooShortError(f"energy check needs at least 5 samples, got {len(traj)}")

    dt = _central_diff4(np.ascontiguousarray(traj.t))
    r_dot = _central_diff4(np.ascontiguousarray(traj.r)) / dt
    theta_dot = _central_diff4(np.ascontiguousarray(traj.theta)) / dt
    phi_dot = _central_diff4(np.ascontiguousarray(traj.phi)) / dt

    r = traj.r[2:-2]
    theta = traj.theta[2:-2]
    kinetic = 0.5 * params.mu * (
        r_dot ** 2 + (r * theta_dot) ** 2 + (r * np.sin(theta) * phi_dot) ** 2
    )
    energy = kinetic + potential_energy(params, potential_kind, r, theta)
    eps = traj.consts.energy_abs
    deviation = float(np.max(np.abs(energy + eps)) / eps)
    logger.debug(f"Energy along orbit: max relative deviation {deviation:.3e} over {len(r)} points")
    return deviation


def _derivatives(y: Callable[[np.ndarray], np.ndarray], x: np.ndarray,
                 h: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # 四阶中心差分的一阶与二阶导数
    y_m2, y_m1, y_0, y_p1, y_p2 = (y(x + k * h) for k in (-2.0, -1.0, 0.0, 1.0, 2.0))
    d1 = (-y_p2 + 8.0 * y_p1 - 8.0 * y_m1 + y_m2) / (12.0 * h)
    d2 = (-y_p2 + 16.0 * y_p1 - 30.0 * y_0 + 16.0 * y_m1 - y_m2) / (12.0 * h ** 2)
    return d1, d2


def local_wavenumber(ode: SecondOrderODE, x: np.ndarray) -> np.ndarray:
    """
    局部波数 k = sqrt(Σ|c_i|/|a|) + ½|b/a|

    c 的各项分别取绝对值，k 不因项间相消而低估解的变化速率。
    """
    x = np.asarray(x, dtype=float)
    a = np.abs(ode.a(x))
    c_abs = sum(np.abs(term(x)) for term in ode.terms())
    return np.sqrt(c_abs / a) + 0.5 * np.abs(ode.b(x)) / a


def ode_residual(ode: SecondOrderODE, y: Callable[[np.ndarray], np.ndarray],
                 grid: Sequence[float], step_fraction: float = 0.1) -> float:
    """
    方程残差 |a y″ + b y′ + Σ c_i y| / max(|a y″|, |b y′|, |c_i y|) 在网格上的最大值

    每点步长 h = min(step_fraction/k, 0.1·到最近奇点的距离)，k 为局部波数；
    在 h 与 h/2 处求四阶差分后作 Richardson 外推。分母取各单项的最大值，
    不用已相消的 c·y。

    Args:
        ode: 方程系数
        y: 待检验的函数（可向量化）
        grid: 检验点（位于定义域内部）
        step_fraction: 步长与局部波长之比

    Returns:
        float: 最大相对残差
    """
    x = np.asarray(grid, dtype=float)
    k = local_wavenumber(ode, x)
    h = np.divide(step_fraction, k, out=np.full_like(x, step_fraction), where=k > 0.0)
    for point in ode.singular_points:
        h = np.minimum(h, 0.1 * np.abs(x - point))

    d1_h, d2_h = _derivatives(y, x, h)
    d1_half, d2_half = _derivatives(y, x, 0.5 * h)
    d1 = (16.0 * d1_half - d1_h) / 15.0
    d2 = (16.0 * d2_half - d2_h) / 15.0

    y0 = y(x)
    term_a = ode.a(x) * d2
    term_b = ode.b(x) * d1
    terms_c = [term(x) * y0 for term in ode.terms()]
    scale = np.maximum(np.abs(term_a), np.abs(term_b))
    for term in terms_c:
        scale = np.maximum(scale, np.abs(term))
    total = np.abs(term_a + term_b + sum(terms_c))
    residual = np.divide(total, scale, out=np.zeros_like(total), where=scale > 0.0)
    return float(np.max(residual))


def polar_overlap(f: Callable[[float], float], g: Callable[[float], float],
                  tol: float = 1e-11) -> float:
    """
    归一化重叠积分 ∫₀^π f g sin θ dθ / sqrt(∫ f² sin θ dθ · ∫ g² sin θ dθ)

    Args:
        f, g: 极向函数
        tol: 误差容限

    Returns:
        float: 归一化重叠
    """
    def integral(h: Callable[[float], float], epsabs: float) -> float:
        value, _ = quad(lambda t: float(h(t)) * math.sin(t), 0.0, math.pi,
                        epsabs=epsabs, epsrel=max(tol, MIN_RELATIVE_TOL), limit=QUAD_LIMIT)
        return value

    # 先归一化，交叉积分的绝对容限即为重叠的精度
    scale = math.sqrt(integral(lambda t: f(t) ** 2, 0.0) * integral(lambda t: g(t) ** 2, 0.0))
    return integral(lambda t: f(t) * g(t) / scale, tol)


def jacobi_overlap(m: int, n: int, alpha: float, beta: float, tol: float = 1e-11) -> float:
    """
    Jacobi 权下的归一化重叠 ∫ P_m P_n (1−v)^α (1+v)^β dv

    quad 的 'alg' 权为 (v+1)^{wvar[0]} (1−v)^{wvar[1]}，故 wvar = (β, α)。

    Args:
        m, n: 次数
        alpha, beta: Jacobi 参数

    Returns:
        float: 归一化重叠
    """
    from ..quantum.polynomials import jacobi

    p_m = jacobi(m, alpha, beta)
    p_n = jacobi(n, alpha, beta)

    def weighted(h: Callable[[float], float], epsabs: float) -> float:
        value, _ = quad(lambda x: float(h(x)), -1.0, 1.0, weight="alg", wvar=(beta, alpha),
                        epsabs=epsabs, epsrel=max(tol, MIN_RELATIVE_TOL), limit=QUAD_LIMIT)
        return value

    scale = math.sqrt(weighted(lambda x: p_m(x) ** 2, 0.0) * weighted(lambda x: p_n(x) ** 2, 0.0))
    return weighted(lambda x: p_m(x) * p_n(x) / scale, tol)
