"""
轨迹数据

有序采样点 (t, r, θ, φ, x, y, z) 的不可变容器。
"""

from dataclasses import dataclass, field
from typing import Dict, Any

import numpy as np
import pandas as pd

from ..core.model import PhysicalParams, SeparationConstants, PotentialKind

TRAJECTORY_COLUMNS = ["t", "r", "theta", "phi", "x", "y", "z"]


@dataclass(frozen=True)
class Trajectory:
    """束缚轨道采样结果"""
    t: np.ndarray
    r: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    potential: PotentialKind
    params: PhysicalParams
    consts: SeparationConstants
    settings: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_spherical(
        cls,
        t: np.ndarray,
        r: np.ndarray,
        theta: np.ndarray,
        phi: np.ndarray,
        potential: PotentialKind,
        params: PhysicalParams,
        consts: SeparationConstants,
        settings: Dict[str, Any] = None
    ) -> "Trajectory":
        """由球坐标构造轨迹并计算笛卡尔坐标"""
        arrays = [np.array(a, dtype=float) for a in (t, r, theta, phi)]
        for a in arrays:
            a.setflags(write=False)
        t, r, theta, phi = arrays
        sin_t = np.sin(theta)
        x = r * sin_t * np.cos(phi)
        y = r * sin_t * np.sin(phi)
        z = r * np.cos(theta)
        for a in (x, y, z):
            a.setflags(write=False)
        return cls(t, r, theta, phi, x, y, z, potential, params, consts, dict(settings or {}))

    def __len__(self) -> int:
        return len(self.t)

    @property
    def cartesian(self) -> np.ndarray:
        """(n, 3) 笛卡尔坐标"""
        return np.column_stack([self.x, self.y, self.z])

    def to_dataframe(self) -> pd.DataFrame:
        """转换为列顺序固定的 DataFrame"""
        return pd.DataFrame({col: getattr(self, col) for col in TRAJECTORY_COLUMNS})

    def metadata(self) -> Dict[str, Any]:
        """输出文件的元数据头"""
        return {
            "potential": self.potential.value,
            "params": self.params.to_dict(),
            "constants": self.consts.to_dict(),
            "settings": dict(self.settings),
            "n_samples": len(self),
        }
