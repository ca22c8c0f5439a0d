"""
命令行入口

validate / orbit / surface / actions / spectrum / verify 六个子命令。
退出码：0 成功，1 参数不满足束缚约束或校验未通过，2 用法、配置或参数取值错误。
"""

import math
import logging
import functools
from pathlib import Path
from typing import Optional, Tuple

import click
import pandas as pd

from .config import ConfigError, ParameterConfig, get_config, load_config, load_parameters, set_config
from .core.errors import DegenerateOrbitError, InvalidParameterError, NotAConeError, OrbitLabError
from .core.model import PhysicalParams, SeparationConstants, PotentialKind, validate
from .actions.spectra import action_report, spectrum_table
from .orbits import cotangent, kibler
from .orbits.trajectory import Trajectory
from .oracle.verification import all_passed, report_frame, run_checks
from .plotting.orbit import OrbitPlotter
from .utils.io import dumps_json, ensure_dir, safe_save_csv, save_json, table_document

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json", "svg")


def parameter_options(func):
    """参数文件与参数覆盖选项"""
    options = [
        click.option('--config', 'config_path', type=click.Path(dir_okay=False),
                     help='参数文件 (key = value 或 YAML)'),
        click.option('--potential', type=click.Choice([k.value for k in PotentialKind]),
                     help='势函数类型'),
        click.option('--mu', type=float, help='约化质量 μ'),
        click.option('--kappa', type=float, help='库仑耦合 κ'),
        click.option('--rho', type=float, help='非中心耦合 ρ'),
        click.option('--gamma', type=float, help='cosec²θ 耦合 γ'),
        click.option('--hbar', type=float, help='约化普朗克常数 ħ'),
        click.option('--energy-abs', type=float, help='束缚能绝对值 |ε|'),
        click.option('--alpha-theta', type=float, help='分离常数 α_θ'),
        click.option('--alpha-phi', type=float, help='分离常数 α_φ'),
        click.option('--out', '-o', type=click.Path(dir_okay=False), help='输出文件路径'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def exit_codes(func):
    """将领域异常映射为退出码"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except (ConfigError, InvalidParameterError) as e:
            # 配置或取值非法属用法错误
            click.echo(f"Error: {e}", err=True)
            ctx.exit(2)
        except OrbitLabError as e:
            logger.error(f"{type(e).__name__}: {e}")
            click.echo(f"Error: {e}", err=True)
            ctx.exit(1)
    return wrapper


def resolve_parameters(config_path: Optional[str], potential: Optional[str],
                       **overrides) -> Tuple[ParameterConfig, PhysicalParams,
                                             SeparationConstants, PotentialKind]:
    """
    加载参数文件并应用命令行覆盖

    Raises:
        ConfigError: 缺少必需参数或未指定势函数
    """
    parameters = load_parameters(config_path, potential=potential, **overrides)
    if parameters.potential is None:
        raise ConfigError("potential not specified: use --potential or a 'potential' key")
    return parameters, parameters.to_physical(), parameters.to_separation(), parameters.potential


def resolve_format(fmt: Optional[str], out: Optional[str], allowed: Tuple[str, ...]) -> str:
    """确定输出格式：显式 --format 优先，其次按 --out 后缀，默认第一个允许的格式"""
    if fmt is None and out is not None:
        suffix = Path(out).suffix.lower().lstrip('.')
        fmt = suffix if suffix in allowed else None
    fmt = fmt or allowed[0]
    if fmt not in allowed:
        raise click.BadParameter(f"format must be one of {', '.join(allowed)}", param_hint='--format')
    return fmt


def emit_json(data, out: Optional[str]) -> None:
    """JSON 写入文件或标准输出"""
    if out:
        save_json(data, out)
    else:
        click.echo(dumps_json(data))


def emit_table(df: pd.DataFrame, metadata: dict, key: str, fmt: str, out: Optional[str]) -> None:
    """表格按 CSV 或 JSON（带元数据头）输出"""
    float_format = get_config().output.float_format
    if fmt == "csv":
        if out:
            safe_save_csv(df, out, float_format=float_format)
        else:
            click.echo(df.to_csv(index=False, float_format=float_format), nl=False)
    else:
        emit_json(table_document(metadata, key, df), out)


def sample_orbit(params: PhysicalParams, consts: SeparationConstants, kind: PotentialKind,
                 samples: int, periods: float, orientation: int) -> Trajectory:
    """按径向周期数采样轨道"""
    if kind is PotentialKind.COTANGENT:
        constants = cotangent.cotangent_constants(params, consts)
        phi_max = cotangent.phi_for_radial_periods(constants, periods)
        return cotangent.sample_orbit_cotangent(params, consts, phi_max, samples, orientation)
    return kibler.sample_orbit_kibler(params, consts, 2.0 * math.pi * periods, samples, orientation)


def orbit_surface(params: PhysicalParams, consts: SeparationConstants, kind: PotentialKind):
    """轨道所在曲面（锥面或二次曲面）"""
    if kind is PotentialKind.COTANGENT:
        return cotangent.cone_geometry(params, consts)
    return kibler.quadric_surface(params, consts)


@click.group()
@click.option('--verbose', '-v', is_flag=True, help='输出调试日志')
@click.option('--settings', type=click.Path(dir_okay=False), default=None,
              help='应用配置文件 (默认 config.yaml)')
def cli(verbose, settings):
    """OrbitLab：非中心 Kepler-Coulomb 势的经典、半经典与量子解。"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    try:
        set_config(load_config(settings))
    except ConfigError as e:
        click.echo(f"Error: {e}", err=True)
        click.get_current_context().exit(2)


@cli.command('validate')
@parameter_options
@exit_codes
def cmd_validate(config_path, potential, out, **overrides):
    """
    检查束缚轨道约束，逐项列出不等式两侧取值。

    示例:
        orbitlab validate --config configs/fig1a.cfg
    """
    _, params, consts, kind = resolve_parameters(config_path, potential, **overrides)
    report = validate(params, consts, kind)
    emit_json(report.to_dict(), out)
    if not report.is_bound:
        names = ", ".join(c.name for c in report.violated_constraints)
        logger.warning(f"Parameters are not bound: violated constraint(s) {names}")
        click.echo(f"violated constraint(s): {names}", err=True)
        click.get_current_context().exit(1)
    logger.info(f"Parameters satisfy all {kind.value} bound-orbit constraints")


@cli.command('orbit')
@parameter_options
@click.option('--format', 'fmt', type=click.Choice(FORMATS), default=None, help='输出格式')
@click.option('--samples', '-n', type=click.IntRange(min=2), default=None, help='采样点数')
@click.option('--periods', type=click.FloatRange(min=0, min_open=True), default=None,
              help='径向周期数')
@click.option('--orientation', type=click.Choice(['1', '-1']), default=None,
              help='z 方向角动量符号')
@exit_codes
def cmd_orbit(config_path, potential, out, fmt, samples, periods, orientation, **overrides):
    """
    采样轨道并导出 CSV / JSON / SVG。

    示例:
        orbitlab orbit --config configs/fig1a.cfg --samples 5000 --out output/fig1a.csv
        orbitlab orbit --config configs/fig3a.cfg --out plots/fig3a.svg
    """
    fmt = resolve_format(fmt, out, FORMATS)
    _, params, consts, kind = resolve_parameters(config_path, potential, **overrides)
    config = get_config()
    samples = samples or config.sampling.samples
    periods = periods or config.sampling.periods
    orientation = int(orientation) if orientation is not None else config.sampling.orientation

    validate(params, consts, kind).raise_if_unbound()
    traj = sample_orbit(params, consts, kind, samples, periods, orientation)
    traj.settings["periods"] = periods

    if fmt == "svg":
        if out is None:
            out = str(ensure_dir(config.output.plots_dir) / f"orbit_{kind.value}.svg")
        try:
            surface = orbit_surface(params, consts, kind)
        except (NotAConeError, DegenerateOrbitError) as e:
            logger.info(f"No surface overlay: {e}")
            surface = None
        title = f"{kind.value} orbit ({len(traj)} samples, {periods:g} radial periods)"
        OrbitPlotter().plot_orbit(traj, title=title, save_path=out, surface=surface)
        return

    emit_table(traj.to_dataframe(), traj.metadata(), "trajectory", fmt, out)


@cli.command('surface')
@parameter_options
@exit_codes
def cmd_surface(config_path, potential, out, **overrides):
    """
    输出轨道所在曲面（椭圆锥面或二次曲面）的 JSON 描述。

    示例:
        orbitlab surface --config configs/fig3a.cfg
    """
    parameters, params, consts, kind = resolve_parameters(config_path, potential, **overrides)
    surface = orbit_surface(params, consts, kind)
    document = {
        "potential": kind.value,
        "params": params.to_dict(),
        "constants": consts.to_dict(),
        **surface.to_dict(),
    }
    emit_json(document, out)
    logger.info(f"Orbit surface: {document['kind']}")


@cli.command('actions')
@parameter_options
@exit_codes
def cmd_actions(config_path, potential, out, **overrides):
    """
    输出作用量、H(J)、频率与径向周期。

    示例:
        orbitlab actions --config configs/fig2a.cfg
    """
    _, params, consts, kind = resolve_parameters(config_path, potential, **overrides)
    report = action_report(params, consts, kind)
    emit_json({"params": params.to_dict(), "constants": consts.to_dict(), **report.to_dict()}, out)


@cli.command('spectrum')
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), help='参数文件')
@click.option('--potential', type=click.Choice([k.value for k in PotentialKind]), help='势函数类型')
@click.option('--mu', type=float, help='约化质量 μ')
@click.option('--kappa', type=float, help='库仑耦合 κ')
@click.option('--rho', type=float, help='非中心耦合 ρ')
@click.option('--gamma', type=float, help='cosec²θ 耦合 γ')
@click.option('--hbar', type=float, help='约化普朗克常数 ħ')
@click.option('--out', '-o', type=click.Path(dir_okay=False), help='输出文件路径')
@click.option('--format', 'fmt', type=click.Choice(("csv", "json")), default=None, help='输出格式')
@click.option('--nmax', type=click.IntRange(min=0), default=None, help='量子数上限')
@exit_codes
def cmd_spectrum(config_path, potential, out, fmt, nmax, **overrides):
    """
    Bohr-Sommerfeld 与量子能谱对照表。

    分离常数对能谱无影响，参数文件中可省略。

    示例:
        orbitlab spectrum --potential kibler --mu 1 --kappa 1 --rho 0.3 --nmax 9 --out output/spectrum.csv
    """
    fmt = resolve_format(fmt, out, ("csv", "json"))
    # 能谱只依赖物理参数，分离常数缺省时用占位值
    placeholders = {"energy_abs": 1.0, "alpha_theta": 1.0, "alpha_phi": 1.0}
    parameters = load_parameters(config_path, defaults=placeholders, potential=potential, **overrides)
    if parameters.potential is None:
        raise ConfigError("potential not specified: use --potential or a 'potential' key")
    params = parameters.to_physical()
    n_max = nmax if nmax is not None else get_config().spectrum.n_max

    table = spectrum_table(params, parameters.potential, n_max, show_progress=out is not None)
    metadata = {"potential": parameters.potential.value, "params": params.to_dict(), "n_max": n_max}
    emit_table(table, metadata, "spectrum", fmt, out)


@cli.command('verify')
@parameter_options
@click.option('--format', 'fmt', type=click.Choice(("json", "csv")), default=None, help='报告格式')
@click.option('--inject-error', default=None, hidden=True)
@exit_codes
def cmd_verify(config_path, potential, out, fmt, inject_error, **overrides):
    """
    以数值积分等独立方法校验全部闭式解。

    示例:
        orbitlab verify --config configs/fig1a.cfg
    """
    _, params, consts, kind = resolve_parameters(config_path, potential, **overrides)
    results = run_checks(params, consts, kind, get_config().oracle, inject_error=inject_error)
    frame = report_frame(results)

    click.echo(frame.to_string(index=False), err=True)
    if out:
        fmt = resolve_format(fmt, out, ("json", "csv"))
        metadata = {"potential": kind.value, "params": params.to_dict(), "constants": consts.to_dict()}
        emit_table(frame, metadata, "checks", fmt, out)

    failed = frame[frame["status"] != "pass"]
    if not all_passed(results):
        for _, row in failed.iterrows():
            logger.error(f"Check {row['name']} {row['status']}: deviation {row['deviation']:.3e}")
        click.get_current_context().exit(1)
    logger.info(f"All {len(results)} checks passed")


if __name__ == "__main__":
    cli()
