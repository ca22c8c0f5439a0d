"""
轨道绘图模块

使用 matplotlib（Agg 后端）绘制轨道的 xz、xy 正交投影，
并可叠加轨道所在的锥面母线或二次曲面子午截线。
"""

import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from ..orbits.trajectory import Trajectory
from ..orbits.cotangent import EllipticCone
from ..orbits.kibler import QuadricSurface
from ..utils.io import ensure_dir

logger = logging.getLogger(__name__)

Surface = Union[EllipticCone, QuadricSurface]


class OrbitPlotter:
    """轨道绘图器"""

    def __init__(self, style: str = 'default'):
        """
        初始化轨道绘图器

        Args:
            style: 绘图样式 ('default' / 'dark')
        """
        self.style = style
        self.setup_style()

    def setup_style(self) -> None:
        """设置绘图样式"""
        if self.style == 'dark':
            plt.style.use('dark_background')
            self.colors = {
                'orbit': '#00aaff',
                'start': '#00ff88',
                'surface': '#ffaa00',
                'axis': '#888888',
            }
        else:
            self.colors = {
                'orbit': '#2196f3',
                'start': '#26a69a',
                'surface': '#ff9800',
                'axis': '#9e9e9e',
            }

    def plot_orbit(
        self,
        traj: Trajectory,
        title: str = "Orbit",
        save_path: Optional[str] = None,
        surface: Optional[Surface] = None
    ) -> plt.Figure:
        """
        绘制 xz 与 xy 两个正交投影

        Args:
            traj: 轨迹
            title: 图表标题
            save_path: 保存路径（按后缀决定格式，通常为 .svg）
            surface: 可选的锥面或二次曲面

        Returns:
            plt.Figure: 图对象
        """
        fig, (ax_xz, ax_xy) = plt.subplots(1, 2, figsize=(12, 6))
        extent = 1.1 * float(np.max(np.abs(traj.cartesian)))

        ax_xz.plot(traj.x, traj.z, color=self.colors['orbit'], linewidth=0.8)
        ax_xz.plot(traj.x[:1], traj.z[:1], 'o', color=self.colors['start'], markersize=4)
        ax_xz.set_xlabel('x')
        ax_xz.set_ylabel('z')
        ax_xz.set_title('xz projection')

        ax_xy.plot(traj.x, traj.y, color=self.colors['orbit'], linewidth=0.8)
        ax_xy.plot(traj.x[:1], traj.y[:1], 'o', color=self.colors['start'], markersize=4)
        ax_xy.set_xlabel('x')
        ax_xy.set_ylabel('y')
        ax_xy.set_title('xy projection')

        if surface is not None:
            self._plot_surface_section(ax_xz, surface, extent)

        for ax in (ax_xz, ax_xy):
            ax.axhline(0.0, color=self.colors['axis'], linewidth=0.5)
            ax.axvline(0.0, color=self.colors['axis'], linewidth=0.5)
            ax.set_xlim(-extent, extent)
            ax.set_ylim(-extent, extent)
            ax.set_aspect('equal')

        fig.suptitle(title)
        fig.tight_layout()

        if save_path:
            ensure_dir(Path(save_path).parent)
            fig.savefig(save_path, bbox_inches='tight')
            logger.info(f"Orbit plot saved to {save_path}")

        plt.close(fig)
        return fig

    def _plot_surface_section(self, ax, surface: Surface, extent: float) -> None:
        """在 xz 面上绘制曲面截线"""
        color = self.colors['surface']
        if isinstance(surface, EllipticCone):
            # φ = 0 与 φ = π 两条母线，以及锥轴
            for theta, sign in ((surface.theta1, 1.0), (surface.theta2, -1.0)):
                ax.plot([0.0, sign * extent * np.sin(theta)], [0.0, extent * np.cos(theta)],
                        '--', color=color, linewidth=0.8)
            axis = surface.axis
            ax.plot([0.0, extent * axis[0]], [0.0, extent * axis[2]], ':',
                    color=self.colors['axis'], linewidth=0.8)
            return

        # 子午截线 r(θ) = 2r1r2/(p + q cos θ)，仅取分母为正且在视野内的部分
        theta = np.linspace(1e-4, np.pi - 1e-4, 2000)
        denom = surface.p + surface.q * np.cos(theta)
        r = np.full_like(theta, np.nan)
        positive = denom > 0.0
        r[positive] = 2.0 * surface.r1 * surface.r2 / denom[positive]
        r[r > 2.0 * extent] = np.nan
        for sign in (1.0, -1.0):
            ax.plot(sign * r * np.sin(theta), r * np.cos(theta), '--', color=color, linewidth=0.8)
