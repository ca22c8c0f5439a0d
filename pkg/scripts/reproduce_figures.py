#!/usr/bin/env python3
"""
图形复现脚本

对 configs/ 下的每个参数文件采样轨道，导出 CSV、SVG 与曲面 JSON，并运行闭式解校验。
"""

import sys
import os
from pathlib import Path

# 添加项目根目录到 Python 路径
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

os.chdir(project_root)

import click
import logging
import pandas as pd
from tqdm import tqdm

from orbitlab.cli import sample_orbit, orbit_surface
from orbitlab.config import get_config, load_parameters
from orbitlab.core.errors import DegenerateOrbitError, NotAConeError
from orbitlab.oracle.verification import report_frame, run_checks
from orbitlab.plotting.orbit import OrbitPlotter
from orbitlab.utils.io import ensure_dir, safe_save_csv, save_json

# 设置日志
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


@click.command()
@click.option('--configs-dir', default='configs', help='参数文件目录')
@click.option('--pattern', default='fig*.cfg', help='参数文件匹配模式')
@click.option('--output-dir', default=None, help='CSV / JSON 输出目录')
@click.option('--plots-dir', default=None, help='SVG 输出目录')
@click.option('--samples', '-n', type=int, default=None, help='每条轨道的采样点数')
@click.option('--skip-verify', is_flag=True, help='跳过闭式解校验')
def reproduce_figures(configs_dir, pattern, output_dir, plots_dir, samples, skip_verify):
    """
    复现全部图形参数集的轨道与曲面。

    示例:
        python scripts/reproduce_figures.py
        python scripts/reproduce_figures.py --samples 8000 --skip-verify
    """
    try:
        config = get_config()
        output_dir = ensure_dir(output_dir or config.output.output_dir)
        plots_dir = ensure_dir(plots_dir or config.output.plots_dir)
        samples = samples or config.sampling.samples

        config_files = sorted(Path(configs_dir).glob(pattern))
        if not config_files:
            logger.error(f"No parameter files matching {pattern} in {configs_dir}")
            sys.exit(2)

        logger.info(f"Reproducing {len(config_files)} figure(s) with {samples} samples each")
        plotter = OrbitPlotter()
        summary = []

        for path in tqdm(config_files, desc="Figures"):
            name = path.stem
            parameters = load_parameters(str(path))
            params = parameters.to_physical()
            consts = parameters.to_separation()
            kind = parameters.potential

            traj = sample_orbit(params, consts, kind, samples, config.sampling.periods, 1)
            safe_save_csv(traj.to_dataframe(), output_dir / f"{name}.csv",
                          float_format=config.output.float_format)

            try:
                surface = orbit_surface(params, consts, kind)
                save_json(surface.to_dict(), output_dir / f"{name}_surface.json")
            except (NotAConeError, DegenerateOrbitError) as e:
                logger.info(f"{name}: no surface ({e})")
                surface = None

            plotter.plot_orbit(traj, title=f"{name}: {kind.value}",
                               save_path=str(plots_dir / f"{name}.svg"), surface=surface)

            row = {"figure": name, "potential": kind.value, "samples": len(traj)}
            if not skip_verify:
                results = run_checks(params, consts, kind, config.oracle)
                frame = report_frame(results)
                frame.to_csv(output_dir / f"{name}_verify.csv", index=False)
                row["checks"] = len(results)
                row["failed"] = int((frame["status"] != "pass").sum())
            summary.append(row)

        summary_df = pd.DataFrame(summary)
        print("\n" + "=" * 50)
        print("图形复现结果")
        print("=" * 50)
        print(summary_df.to_string(index=False))

        if not skip_verify and summary_df["failed"].sum() > 0:
            logger.error("Some verification checks failed")
            sys.exit(1)
        logger.info("All figures reproduced")

    except Exception as e:
        logger.error(f"Error reproducing figures: {e}")
        raise


if __name__ == "__main__":
    reproduce_figures()
