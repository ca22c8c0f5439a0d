"""
异常定义

轨道、作用量、量子能谱与数值校验中使用的领域异常。
"""

from typing import Optional


class OrbitLabError(ValueError):
    """所有领域异常的基类"""


class InvalidParameterError(OrbitLabError):
    """参数不满足类型约束（如 μ <= 0）"""


class BoundOrbitError(OrbitLabError):
    """
    束缚轨道约束不成立

    Attributes:
        constraint: 违反的约束编号 ("i", "ii", "iii")
        lhs: 不等式左侧取值
        rhs: 不等式右侧取值
    """

    def __init__(
        self,
        constraint: str,
        message: str,
        lhs: Optional[float] = None,
        rhs: Optional[float] = None
    ):
        super().__init__(f"constraint ({constraint}) violated: {message}")
        self.constraint = constraint
        self.lhs = lhs
        self.rhs = rhs


class DegenerateOrbitError(OrbitLabError):
    """退化轨道（r1 = 0、α̃_φ = 0、θ 固定或 φ 积分发散）"""


class NotAConeError(OrbitLabError):
    """γ ≠ 0 时余切势轨道不在固定锥面上"""


class NoBoundStateError(OrbitLabError):
    """该量子数组合不存在束缚态"""


class InvalidActionError(OrbitLabError):
    """作用量超出 H(J) 的定义域"""


class BracketError(OrbitLabError):
    """单调反演的区间不包含目标值"""


class TrajectoryTooShortError(OrbitLabError):
    """轨迹采样点过少，无法做差分"""


class OracleConvergenceError(RuntimeError):
    """
    数值积分未达到要求精度

    Attributes:
        achieved: 实际误差估计
        tolerance: 要求的误差上限
    """

    def __init__(self, message: str, achieved: float, tolerance: float):
        super().__init__(f"{message} (achieved {achieved:.3e}, tolerance {tolerance:.3e})")
        self.achieved = achieved
        self.tolerance = tolerance
