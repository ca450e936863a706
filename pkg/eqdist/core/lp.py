"""
线性规划模块
稠密两阶段单纯形法,Bland 规则防止循环
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel

from eqdist.core.errors import ConvergenceError, LPDimensionError


class Relation(str, Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coeffs: Tuple[float, ...]
    relation: Relation
    rhs: float


@dataclass
class LPProblem:
    """
    maximize (或 minimize) objective·x,约束逐行给出

    free 为 True 的变量无符号限制,其余变量 ≥ 0。
    """

    objective: Sequence[float]
    constraints: List[Constraint] = field(default_factory=list)
    free: Optional[Sequence[bool]] = None
    maximize: bool = True

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def add(self, coeffs: Sequence[float], relation: Relation, rhs: float) -> "LPProblem":
        self.constraints.append(Constraint(tuple(float(c) for c in coeffs), Relation(relation), float(rhs)))
        return self

    def validate(self) -> None:
        n = self.num_vars
        if n == 0:
            raise LPDimensionError("LP has no variables")
        for i, row in enumerate(self.constraints):
            if len(row.coeffs) != n:
                raise LPDimensionError(f"constraint {i} has {len(row.coeffs)} coefficients, expected {n}")
        if self.free is not None and len(self.free) != n:
            raise LPDimensionError(f"free flags cover {len(self.free)} variables, expected {n}")
        values = np.array([c for row in self.constraints for c in row.coeffs] + list(self.objective), dtype=float)
        if not np.isfinite(values).all() or not all(np.isfinite(row.rhs) for row in self.constraints):
            raise LPDimensionError("LP coefficients must be finite")


class LPOutcome(BaseModel):
    status: LPStatus
    x: Optional[List[float]] = None
    objective: Optional[float] = None
    iterations: int = 0


class SimplexSolver:
    """两阶段稠密单纯形"""

    def __init__(self, pivot_tol: float = 1e-9, feasibility_tol: float = 1e-7, max_iterations: int = 20000):
        self.pivot_tol = pivot_tol
        self.feasibility_tol = feasibility_tol
        self.max_iterations = max_iterations
        self.iterations = 0

    def _pivot(self, tableau: np.ndarray, basis: List[int], row: int, col: int) -> None:
        tableau[row] /= tableau[row, col]
        column = tableau[:, col].copy()
        column[row] = 0.0
        tableau -= np.outer(column, tableau[row])
        basis[row] = col
        self.iterations += 1

    def _optimize(self, tableau: np.ndarray, basis: List[int], cost: np.ndarray, allowed: np.ndarray) -> bool:
        """
        在当前可行基上最大化 cost·x

        Returns:
            False 表示无界
        """
        while True:
            if self.iterations >= self.max_iterations:
                raise ConvergenceError(f"simplex exceeded {self.max_iterations} iterations")
            reduced = cost[basis] @ tableau[:, :-1] - cost
            candidates = np.flatnonzero((reduced < -self.pivot_tol) & allowed)
            if candidates.size == 0:
                return True
            col = int(candidates[0])
            column = tableau[:, col]
            rows = np.flatnonzero(column > self.pivot_tol)
            if rows.size == 0:
                return False
            ratios = tableau[rows, -1] / column[rows]
            best = ratios.min()
            ties = rows[ratios <= best + self.pivot_tol * max(1.0, abs(best))]
            row = int(min(ties, key=lambda r: basis[r]))
            self._pivot(tableau, basis, row, col)

    def solve(self, problem: LPProblem) -> LPOutcome:
        problem.validate()
        self.iterations = 0
        n = problem.num_vars
        free = np.zeros(n, dtype=bool) if problem.free is None else np.asarray(problem.free, dtype=bool)
        sign = 1.0 if problem.maximize else -1.0

        # x = x+ - x- 拆分自由变量
        split = np.flatnonzero(free)
        structural = n + split.size
        rows = []
        rhs = []
        relations = []
        for con in problem.constraints:
            coeffs = np.asarray(con.coeffs, dtype=float)
            row = np.concatenate([coeffs, -coeffs[split]])
            b = con.rhs
            rel = con.relation
            if b < 0:
                row, b = -row, -b
                rel = {Relation.LE: Relation.GE, Relation.GE: Relation.LE, Relation.EQ: Relation.EQ}[rel]
            rows.append(row)
            rhs.append(b)
            relations.append(rel)

        m = len(rows)
        num_slack = sum(rel is not Relation.EQ for rel in relations)
        num_art = sum(rel is not Relation.LE for rel in relations)
        width = structural + num_slack + num_art
        tableau = np.zeros((m, width + 1))
        basis: List[int] = []
        slack_col = structural
        art_col = structural + num_slack
        artificials = []
        for i, (row, b, rel) in enumerate(zip(rows, rhs, relations)):
            tableau[i, :structural] = row
            tableau[i, -1] = b
            if rel is Relation.LE:
                tableau[i, slack_col] = 1.0
                basis.append(slack_col)
                slack_col += 1
            else:
                if rel is Relation.GE:
                    tableau[i, slack_col] = -1.0
                    slack_col += 1
                tableau[i, art_col] = 1.0
                basis.append(art_col)
                artificials.append(art_col)
                art_col += 1

        is_art = np.zeros(width, dtype=bool)
        is_art[artificials] = True

        if artificials:
            phase1 = np.zeros(width)
            phase1[is_art] = -1.0
            self._optimize(tableau, basis, phase1, np.ones(width, dtype=bool))
            infeasibility = float(tableau[:, -1] @ is_art[basis])
            if infeasibility > self.feasibility_tol:
                logger.debug(f"LP infeasible: phase-1 residual {infeasibility:.3e}")
                return LPOutcome(status=LPStatus.INFEASIBLE, iterations=self.iterations)

            # 把留在基中的人工变量换出,换不出的行是冗余行
            keep = []
            for i in range(len(basis)):
                if not is_art[basis[i]]:
                    keep.append(i)
                    continue
                pivots = np.flatnonzero((np.abs(tableau[i, :width]) > self.pivot_tol) & ~is_art)
                if pivots.size:
                    self._pivot(tableau, basis, i, int(pivots[0]))
                    keep.append(i)
            tableau = tableau[keep]
            basis = [basis[i] for i in keep]

        cost = np.zeros(width)
        cost[:n] = sign * np.asarray(problem.objective, dtype=float)
        cost[n:structural] = -cost[split]
        if not self._optimize(tableau, basis, cost, ~is_art):
            return LPOutcome(status=LPStatus.UNBOUNDED, iterations=self.iterations)

        values = np.zeros(width)
        values[basis] = tableau[:, -1]
        x = values[:n].copy()
        x[split] -= values[n:structural]
        objective = float(np.dot(problem.objective, x))
        self._check_feasible(problem, x)
        return LPOutcome(status=LPStatus.OPTIMAL, x=x.tolist(), objective=objective, iterations=self.iterations)

    def _check_feasible(self, problem: LPProblem, x: np.ndarray) -> None:
        for i, con in enumerate(problem.constraints):
            lhs = float(np.dot(con.coeffs, x))
            scale = max(1.0, abs(con.rhs))
            violation = {
                Relation.LE: lhs - con.rhs,
                Relation.GE: con.rhs - lhs,
                Relation.EQ: abs(lhs - con.rhs),
            }[con.relation]
            if violation > self.feasibility_tol * scale:
                logger.warning(f"LP solution violates constraint {i} by {violation:.3e}")


def solve_lp(problem: LPProblem, pivot_tol: float = 1e-9, feasibility_tol: float = 1e-7,
             max_iterations: int = 20000) -> LPOutcome:
    """
    求解线性规划

    Raises:
        LPDimensionError: 约束与目标的变量数不一致
    """
    return SimplexSolver(pivot_tol, feasibility_tol, max_iterations).solve(problem)
