"""
配置管理模块

统一管理采样、数值校验、能谱与输出配置（YAML 文件 + 环境变量），
以及物理参数文件（key = value 或 YAML）的加载。
"""

import os
import logging
from pathlib import Path
from typing import Optional, Dict, Any

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator

from .core.model import PhysicalParams, SeparationConstants, PotentialKind

logger = logging.getLogger(__name__)

ENV_PREFIX = "ORBITLAB_"


class ConfigError(ValueError):
    """配置文件缺失、格式错误或取值非法"""


class SamplingConfig(BaseModel):
    """轨道采样配置"""
    samples: int = Field(default=4000, ge=2, description="每条轨道的采样点数")
    periods: float = Field(default=1.0, gt=0, description="径向周期数")
    orientation: int = Field(default=1, description="z 方向角动量的符号 (+1 / -1)")

    @field_validator("orientation")
    @classmethod
    def _check_orientation(cls, value: int) -> int:
        if value not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        return value


class OracleConfig(BaseModel):
    """数值校验配置"""
    quad_tol: float = Field(default=1e-11, gt=0, description="积分误差上限")
    action_tol: float = Field(default=1e-10, gt=0, description="作用量闭式解 vs 积分")
    orbit_integral_tol: float = Field(default=1e-9, gt=0, description="ψ(φ)、φ(ψ)、θ 闭式解 vs 积分")
    surface_tol: float = Field(default=1e-8, gt=0, description="轨道面残差")
    energy_tol: float = Field(default=1e-5, gt=0, description="能量守恒相对偏差")
    identity_tol: float = Field(default=1e-12, gt=0, description="几何与能量恒等式")
    period_tol: float = Field(default=1e-9, gt=0, description="径向周期一致性")
    frequency_tol: float = Field(default=1e-7, gt=0, description="解析频率 vs 有限差分")
    spectrum_tol: float = Field(default=1e-13, gt=0, description="BSQ 与量子能谱")
    spectrum_n_max: int = Field(default=5, ge=0, description="能谱检查的量子数上限")
    fd_step: float = Field(default=1e-4, gt=0, description="频率有限差分的相对步长")
    probe_points: int = Field(default=25, ge=2, description="每项检查的采样点数")
    energy_samples: int = Field(default=4000, ge=5, description="能量检查的每周期采样数")
    orbit_span: float = Field(default=6.0, gt=0, description="轨道积分检查的范围（单位 π）")
    ode_tol: float = Field(default=1e-8, gt=0, description="波函数微分方程的相对残差")
    polynomial_tol: float = Field(default=1e-12, gt=0, description="正交多项式满足其方程的系数残差")
    overlap_tol: float = Field(default=1e-9, gt=0, description="极向态与 Jacobi 多项式的正交性")
    quantum_n_max: int = Field(default=4, ge=0, description="波函数检查的量子数范围")


class SpectrumConfig(BaseModel):
    """能谱配置"""
    n_max: int = Field(default=9, ge=0, description="量子数上限")


class OutputConfig(BaseModel):
    """输出配置"""
    output_dir: str = Field(default="output", description="轨迹与报告目录")
    plots_dir: str = Field(default="plots", description="图表目录")
    float_format: str = Field(default="%.15g", description="浮点输出格式")


class Config(BaseModel):
    """主配置类"""
    sampling: SamplingConfig = Field(default_factory=SamplingConfig)
    oracle: OracleConfig = Field(default_factory=OracleConfig)
    spectrum: SpectrumConfig = Field(default_factory=SpectrumConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)


class ParameterConfig(BaseModel):
    """物理参数与分离常数"""
    mu: float = Field(description="约化质量 μ")
    kappa: float = Field(description="库仑耦合 κ")
    energy_abs: float = Field(description="束缚能的绝对值 |ε|")
    alpha_theta: float = Field(description="总角动量分离常数 α_θ")
    alpha_phi: float = Field(description="z 方向角动量 α_φ")
    rho: float = Field(default=0.0, description="非中心耦合 ρ")
    gamma: float = Field(default=0.0, description="cosec²θ 耦合 γ")
    hbar: float = Field(default=1.0, description="约化普朗克常数 ħ")
    potential: Optional[PotentialKind] = Field(default=None, description="势函数类型")

    def to_physical(self) -> PhysicalParams:
        return PhysicalParams(
            mu=self.mu, kappa=self.kappa, rho=self.rho, gamma=self.gamma, hbar=self.hbar
        )

    def to_separation(self) -> SeparationConstants:
        return SeparationConstants(
            energy_abs=self.energy_abs, alpha_theta=self.alpha_theta, alpha_phi=self.alpha_phi
        )


def _env_section_overrides() -> Dict[str, Dict[str, str]]:
    # ORBITLAB_<SECTION>_<FIELD>，例如 ORBITLAB_SPECTRUM_N_MAX=5
    overrides: Dict[str, Dict[str, str]] = {}
    for key, value in os.environ.items():
        if not key.startswith(ENV_PREFIX):
            continue
        rest = key[len(ENV_PREFIX):].lower()
        for section, model in Config.model_fields.items():
            prefix = section + "_"
            if rest.startswith(prefix) and rest[len(prefix):] in model.annotation.model_fields:
                overrides.setdefault(section, {})[rest[len(prefix):]] = value
    return overrides


def load_config(config_path: Optional[str] = None) -> Config:
    """
    加载配置

    Args:
        config_path: 配置文件路径，默认为 config.yaml

    Returns:
        Config: 配置对象

    Raises:
        ConfigError: 配置取值非法
    """
    if config_path is None:
        config_path = "config.yaml"

    config_data: Dict[str, Any] = {}

    # 从 YAML 文件加载
    if os.path.exists(config_path):
        with open(config_path, 'r', encoding='utf-8') as f:
            config_data = yaml.safe_load(f) or {}

    # 环境变量覆盖
    for section, values in _env_section_overrides().items():
        config_data.setdefault(section, {}).update(values)

    try:
        return Config(**config_data)
    except ValidationError as e:
        raise ConfigError(f"invalid configuration in {config_path}: {e}") from e


def parse_key_value(text: str, source: str = "<string>") -> Dict[str, str]:
    """
    解析 key = value 格式（# 之后为注释，空行忽略）

    Args:
        text: 文件内容
        source: 来源，用于报错

    Returns:
        Dict[str, str]: 键值对

    Raises:
        ConfigError: 行格式错误或键重复
    """
    data: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        if key in data:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        data[key] = value
    return data


def load_parameters(path: Optional[str] = None, defaults: Optional[Dict[str, Any]] = None,
                    **overrides: Any) -> ParameterConfig:
    """
    加载参数文件

    按文件后缀选择 YAML（.yaml/.yml）或 key = value 格式，
    再依次应用 ORBITLAB_<KEY> 环境变量与显式覆盖（值为 None 的忽略）。

    Args:
        path: 参数文件路径，None 时仅使用环境变量与覆盖
        defaults: 优先级最低的缺省值
        **overrides: 显式覆盖（通常来自命令行）

    Returns:
        ParameterConfig: 参数

    Raises:
        ConfigError: 文件不存在、缺少必需键或取值非法
    """
    data: Dict[str, Any] = dict(defaults or {})
    if path is not None:
        file_path = Path(path)
        if not file_path.exists():
            raise ConfigError(f"parameter file not found: {path}")
        text = file_path.read_text(encoding='utf-8')
        if file_path.suffix.lower() in (".yaml", ".yml"):
            loaded = yaml.safe_load(text) or {}
            if not isinstance(loaded, dict):
                raise ConfigError(f"{path}: expected a mapping at the top level")
            data.update(loaded)
        else:
            data.update(parse_key_value(text, source=str(path)))

    for name in ParameterConfig.model_fields:
        env_value = os.environ.get(ENV_PREFIX + name.upper())
        if env_value is not None:
            data[name] = env_value

    data.update({k: v for k, v in overrides.items() if v is not None})

    unknown = sorted(set(data) - set(ParameterConfig.model_fields))
    if unknown:
        raise ConfigError(f"unknown parameter keys: {', '.join(unknown)}")

    try:
        params = ParameterConfig(**data)
    except ValidationError as e:
        missing = [err["loc"][0] for err in e.errors() if err["type"] == "missing"]
        if missing:
            raise ConfigError(f"missing required parameter(s): {', '.join(map(str, missing))}") from e
        raise ConfigError(f"invalid parameter value: {e}") from e

    logger.debug(f"Loaded parameters from {path}: {params.model_dump()}")
    return params


# 全局配置实例
_config: Optional[Config] = None


def get_config() -> Config:
    """获取全局配置实例"""
    global _config
    if _config is None:
        _config = load_config()
    return _config


def set_config(config: Config) -> None:
    """设置全局配置实例"""
    global _config
    _config = config

