#!/usr/bin/env python3
"""
OrbitLab 快速启动脚本

一键运行完整流程：图形复现 → 能谱表 → 闭式解校验
"""

import sys
import subprocess
from pathlib import Path


def print_banner():
    """打印欢迎横幅"""
    print("=" * 60)
    print("OrbitLab - 非中心 Kepler-Coulomb 势")
    print("=" * 60)
    print("经典轨道 / Bohr-Sommerfeld 量子化 / 量子能谱")
    print("=" * 60)
    print()


def check_dependencies():
    """检查依赖是否安装"""
    print("检查依赖...")

    required_packages = [
        'pandas', 'numpy', 'scipy', 'matplotlib',
        'tqdm', 'pydantic', 'click', 'numba', 'yaml'
    ]

    missing_packages = []

    for package in required_packages:
        try:
            __import__(package)
            print(f"  [OK] {package}")
        except ImportError:
            print(f"  [FAIL] {package}")
            missing_packages.append(package)

    if missing_packages:
        print(f"\n[ERROR] 缺少依赖包: {', '.join(missing_packages)}")
        print("请运行: pip install -r requirements.txt")
        return False

    print("[OK] 所有依赖已安装")
    return True


def create_directories():
    """创建输出目录"""
    print("\n创建输出目录...")

    for directory in ('output', 'plots'):
        Path(directory).mkdir(parents=True, exist_ok=True)
        print(f"  [OK] {directory}")


def run_figures():
    """复现图形参数集"""
    print("\n开始复现图形...")

    result = subprocess.run(
        [sys.executable, 'scripts/reproduce_figures.py'],
        capture_output=True, text=True
    )
    if result.returncode == 0:
        print("[OK] 轨道、曲面与校验报告已生成")
        return True
    print(f"[ERROR] 图形复现失败: {result.stderr[-2000:]}")
    return False


def run_spectra():
    """生成两类势的能谱表"""
    print("\n开始生成能谱表...")

    success = True
    for potential in ('cotangent', 'kibler'):
        result = subprocess.run([
            sys.executable, '-m', 'orbitlab.cli', 'spectrum',
            '--potential', potential,
            '--mu', '1', '--kappa', '1', '--rho', '0.3',
            '--nmax', '9',
            '--out', f'output/spectrum_{potential}.csv'
        ], capture_output=True, text=True)

        if result.returncode == 0:
            print(f"  [OK] {potential} 能谱表生成成功")
        else:
            print(f"  [ERROR] {potential} 能谱表生成失败: {result.stderr[-2000:]}")
            success = False
    return success


def show_results():
    """显示结果摘要"""
    print("\n" + "=" * 60)
    print("OrbitLab 快速启动完成!")
    print("=" * 60)

    csv_files = sorted(Path('output').glob('*.csv'))
    svg_files = sorted(Path('plots').glob('*.svg'))

    print("\n生成的文件:")
    print(f"  表格文件: {len(csv_files)} 个")
    print(f"  图表文件: {len(svg_files)} 个")

    for file in svg_files[:8]:
        print(f"  [IMAGE] {file.name}")

    print("\n下一步操作:")
    print("  1. 单独校验参数: python -m orbitlab.cli verify --config configs/fig1a.cfg")
    print("  2. 运行单元测试: pytest")
    print("  3. 运行项目测试: python test_project.py")
    print("  4. 自定义参数: 编辑 configs/*.cfg 或 config.yaml")


def main():
    """主函数"""
    print_banner()

    if not check_dependencies():
        sys.exit(1)

    create_directories()

    steps = [
        ("图形复现", run_figures),
        ("能谱表", run_spectra),
    ]

    success_count = 0
    for step_name, step_func in steps:
        print(f"\n[STEP] 执行步骤: {step_name}")
        if step_func():
            success_count += 1
        else:
            print(f"[WARNING] {step_name} 执行失败，继续下一步...")

    show_results()

    if success_count == len(steps):
        print(f"\n[SUCCESS] 所有步骤执行成功! ({success_count}/{len(steps)})")
        sys.exit(0)
    print(f"\n[WARNING] 部分步骤执行失败 ({success_count}/{len(steps)})")
    sys.exit(1)


if __name__ == "__main__":
    main()
