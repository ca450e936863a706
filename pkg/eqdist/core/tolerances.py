"""
数值容差
所有阈值比较、特征值分组与线性规划使用的容差集中在一个模型中
"""
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field


class Tolerances(BaseModel):
    """数值容差集合"""

    model_config = ConfigDict(frozen=True)

    group_tol: float = Field(1e-6, gt=0, description="特征值分组: 间隔 ≤ group_tol·(1+max|λ|)")
    inclusion_slack: float = Field(1e-7, ge=0, description="阈值比较向包含方向的松弛")
    floor_epsilon: float = Field(1e-9, ge=0, description="⌊raw + floor_epsilon⌋")
    lp_epsilon: float = Field(1e-6, gt=0, description="严格不等式的 ε")
    jacobi_tol: float = Field(1e-12, gt=0)
    jacobi_max_sweeps: int = Field(60, ge=1)
    symmetry_tol: float = Field(1e-12, ge=0)
    pivot_tol: float = Field(1e-9, gt=0)
    feasibility_tol: float = Field(1e-7, gt=0)
    lp_max_iterations: int = Field(20000, ge=1)

    @classmethod
    def from_config(cls, solver_cfg: Optional[Dict[str, Any]] = None, **overrides: Any) -> "Tolerances":
        """
        从 solver.yaml 的配置节构造

        Args:
            solver_cfg: solver 配置节(None 时使用全局配置)
            **overrides: 显式覆盖(值为 None 的项被忽略)

        Returns:
            容差对象
        """
        if solver_cfg is None:
            from eqdist.utils.config import config
            solver_cfg = config.get_section("solver")

        tol = solver_cfg.get("tolerances", {}) or {}
        jacobi = solver_cfg.get("jacobi", {}) or {}
        lp = solver_cfg.get("lp", {}) or {}
        values = {
            "group_tol": tol.get("group"),
            "inclusion_slack": tol.get("slack"),
            "floor_epsilon": tol.get("floor"),
            "lp_epsilon": tol.get("lp_eps"),
            "jacobi_tol": jacobi.get("tolerance"),
            "jacobi_max_sweeps": jacobi.get("max_sweeps"),
            "symmetry_tol": jacobi.get("symmetry_tolerance"),
            "pivot_tol": lp.get("pivot_tolerance"),
            "feasibility_tol": lp.get("feasibility_tolerance"),
            "lp_max_iterations": lp.get("max_iterations"),
        }
        values.update(overrides)
        return cls(**{k: v for k, v in values.items() if v is not None})


DEFAULT_TOLERANCES = Tolerances()
