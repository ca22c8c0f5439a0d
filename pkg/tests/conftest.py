"""
测试公共夹具

图形参数集（configs/fig*.cfg）与固定种子的随机束缚参数集。
"""

import math
from pathlib import Path

import numpy as np
import pytest

from orbitlab.config import load_parameters
from orbitlab.core.model import PhysicalParams, SeparationConstants, PotentialKind, validate

CONFIGS_DIR = Path(__file__).resolve().parent.parent / "configs"
FIGURES = sorted(p.stem for p in CONFIGS_DIR.glob("fig*.cfg"))
COTANGENT_FIGURES = ["fig1a", "fig1b", "fig2a", "fig2b"]
KIBLER_FIGURES = ["fig3a", "fig3b", "fig4a", "fig4b"]


def load_figure(name: str):
    """读取图形参数文件，返回 (params, consts, kind)"""
    parameters = load_parameters(str(CONFIGS_DIR / f"{name}.cfg"))
    return parameters.to_physical(), parameters.to_separation(), parameters.potential


def _random_cotangent(rng: np.random.Generator, with_gamma: bool):
    mu = rng.uniform(0.5, 2.0)
    kappa = rng.uniform(5.0, 20.0)
    rho = rng.uniform(0.0, 3.0)
    gamma = rng.uniform(0.1, 1.0) if with_gamma else 0.0
    energy_abs = rng.uniform(0.5, 3.0)
    alpha_max = kappa * math.sqrt(mu / (2.0 * energy_abs))
    alpha_theta = rng.uniform(max(1.0, 0.3 * alpha_max), 0.9 * alpha_max)
    alpha_phi_sq = rng.uniform(0.2, 0.9) * alpha_theta ** 2 - 2.0 * mu * gamma
    if alpha_phi_sq <= 0.01:
        return None
    return (
        PhysicalParams(mu=mu, kappa=kappa, rho=rho, gamma=gamma),
        SeparationConstants(energy_abs, alpha_theta, math.sqrt(alpha_phi_sq)),
    )


def _random_kibler(rng: np.random.Generator, with_gamma: bool):
    mu = rng.uniform(0.5, 2.0)
    kappa = rng.uniform(5.0, 20.0)
    gamma = rng.uniform(0.1, 1.0) if with_gamma else 0.0
    energy_abs = rng.uniform(0.5, 3.0)
    alpha_max = kappa * math.sqrt(mu / (2.0 * energy_abs))
    alpha_theta = rng.uniform(0.3, 0.9) * alpha_max
    alpha_phi_sq = rng.uniform(0.05, 0.8) * alpha_theta ** 2 - 2.0 * mu * gamma
    if alpha_phi_sq <= 0.01:
        return None
    a_eff_sq = alpha_phi_sq + 2.0 * mu * gamma
    rho = rng.uniform(0.0, 0.8) * a_eff_sq / (2.0 * mu)
    return (
        PhysicalParams(mu=mu, kappa=kappa, rho=rho, gamma=gamma),
        SeparationConstants(energy_abs, alpha_theta, math.sqrt(alpha_phi_sq)),
    )


def random_bound_sets(kind: PotentialKind, n: int, seed: int = 20240101,
                      with_gamma: bool = False):
    """
    生成 n 组满足束缚约束且非退化的随机参数

    Args:
        kind: 势函数类型
        n: 组数
        seed: 随机种子
        with_gamma: 是否包含 γ > 0

    Returns:
        list: [(params, consts), ...]
    """
    rng = np.random.default_rng(seed)
    draw = _random_cotangent if kind is PotentialKind.COTANGENT else _random_kibler
    sets = []
    while len(sets) < n:
        candidate = draw(rng, with_gamma)
        if candidate is None:
            continue
        report = validate(*candidate, kind)
        if report.is_bound and not report.is_degenerate:
            sets.append(candidate)
    return sets


@pytest.fixture(params=FIGURES)
def figure(request):
    """逐个图形参数集"""
    return load_figure(request.param)


@pytest.fixture
def fig1a():
    return load_figure("fig1a")


@pytest.fixture
def fig3a():
    return load_figure("fig3a")


@pytest.fixture
def fig4a():
    return load_figure("fig4a")


@pytest.fixture(scope="session")
def cotangent_sets():
    return random_bound_sets(PotentialKind.COTANGENT, 50, seed=7)


@pytest.fixture(scope="session")
def kibler_sets():
    return random_bound_sets(PotentialKind.KIBLER, 50, seed=11)
