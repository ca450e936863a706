"""
多项式优化模块
为惯性型与比值型上界搜索最优多项式

惯性型: 对每个基准顶点,按 m·b 递增枚举 b ∈ {0,1}^{d+1},每个 b 是一个关于系数的线性可行性问题,
第一个可行的 b 即为该顶点的最优解。
比值型: 对每个 (u, l) 求解一个线性规划,上界候选为 n / 目标值。
"""
import heapq
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from eqdist.core.bounds import BoundResult, NAReason, inertial_bound, ratio_bound
from eqdist.core.errors import GraphDomainError
from eqdist.core.graph import Graph
from eqdist.core.lp import LPProblem, LPStatus, Relation, solve_lp
from eqdist.core.spectra import DistinctSpectrum, distinct_adjacency_spectrum, matrix_power_diagonals
from eqdist.core.tolerances import DEFAULT_TOLERANCES, Tolerances

DEFAULT_MAX_SUBSETS = 65536


def _lp_kwargs(tolerances: Tolerances) -> dict:
    return dict(
        pivot_tol=tolerances.pivot_tol,
        feasibility_tol=tolerances.feasibility_tol,
        max_iterations=tolerances.lp_max_iterations,
    )


def _setting(key: str, default):
    from eqdist.utils.config import config

    return config.get(f"solver.polyopt.{key}", default)


@dataclass(frozen=True)
class Polynomial:
    """p(x) = a_0 + a_1 x + … + a_k x^k"""

    coeffs: Tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            coeffs = (0.0,)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def monomial(cls, k: int) -> "Polynomial":
        return cls((0.0,) * k + (1.0,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coeffs)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def diagonal_of(self, walks: np.ndarray) -> np.ndarray:
        """
        diag p(A)

        Args:
            walks: 各顶点的 (A^i)_vv,形状 (n, ≥k+1)
        """
        return walks[:, : self.degree + 1].astype(np.float64) @ np.asarray(self.coeffs)

    def __str__(self) -> str:
        terms = [f"{c:+.6g}x^{i}" for i, c in enumerate(self.coeffs) if c != 0.0]
        return " ".join(terms) if terms else "0"


def vertex_profiles(g: Graph, degree: int, shortcut: bool = True) -> Tuple[List[int], np.ndarray]:
    """
    顶点轮廓: (A^i)_vv, i = 0..degree

    shortcut 开启时只保留每个互异轮廓的最小顶点;步行正则图只剩一个顶点。

    Returns:
        (代表顶点列表, 对应轮廓行)
    """
    walks = np.asarray(matrix_power_diagonals(g, degree))
    if not shortcut:
        return list(range(g.n)), walks
    _, first = np.unique(walks, axis=0, return_index=True)
    reps = sorted(int(v) for v in first)
    return reps, walks[reps]


def _subsets_by_weight(mults: Sequence[int]) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """
    按 m·b 递增、同权按 b 的字典序产生全部 b ∈ {0,1}^{d+1}

    从空集出发,后继为"追加下一个元素"与"把最后一个元素换成下一个",
    每个非空子集恰好被生成一次;同权的一批收齐后再排序输出。
    """
    order = sorted(range(len(mults)), key=lambda j: (mults[j], j))
    weights = [mults[j] for j in order]
    size = len(mults)

    def bits(chosen: Tuple[int, ...]) -> Tuple[int, ...]:
        b = [0] * size
        for k in chosen:
            b[order[k]] = 1
        return tuple(b)

    yield 0, (0,) * size
    if not size:
        return
    heap = [(weights[0], bits((0,)), (0,))]
    while heap:
        weight = heap[0][0]
        batch = []
        while heap and heap[0][0] == weight:
            _, b, chosen = heapq.heappop(heap)
            batch.append(b)
            last = chosen[-1]
            if last + 1 < size:
                grown = chosen + (last + 1,)
                heapq.heappush(heap, (weight + weights[last + 1], bits(grown), grown))
                moved = chosen[:-1] + (last + 1,)
                heapq.heappush(heap, (weight - weights[last] + weights[last + 1], bits(moved), moved))
        for b in sorted(batch):
            yield weight, b


def _inertial_system(
    profiles: np.ndarray,
    u_row: np.ndarray,
    spec: DistinctSpectrum,
    b: Tuple[int, ...],
    sign: float,
    eps: float,
) -> LPProblem:
    """
    系数 a_0..a_k 的可行性问题

    sign=+1: u 取到 diag p(A) 的最小值 0,b_j=0 的 θ_j 满足 p(θ_j) ≤ -ε;
    sign=-1: 镜像情形,u 取最大值 0,p(θ_j) ≥ ε。
    """
    k = profiles.shape[1]
    problem = LPProblem(objective=[0.0] * k, free=[True] * k)
    for row in profiles:
        if np.array_equal(row, u_row):
            continue
        problem.add(sign * row, Relation.GE, 0.0)
    problem.add(u_row, Relation.EQ, 0.0)
    for theta, active in zip(spec.thetas, b):
        if not active:
            problem.add(sign * theta ** np.arange(k), Relation.LE, -eps)
    return problem


def optimize_inertial(
    g: Graph,
    t: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    max_subsets: Optional[int] = None,
    vertex_shortcut: Optional[bool] = None,
) -> Tuple[Polynomial, BoundResult]:
    """
    最优惯性型多项式(次数 t-1)

    Args:
        g: 连通图
        t: 目标 eq_t 的 t,t ≥ 2
        max_subsets: 每个 (顶点, 分支) 最多尝试的 b 数,超出后退回全 1 的 b
        vertex_shortcut: 只对互异顶点轮廓求解(None 时两者取 solver.yaml 的 polyopt 配置)

    Returns:
        (多项式, inertial_bound(g, t, 多项式))
    """
    if t < 2:
        raise GraphDomainError(f"optimize_inertial needs t >= 2, got {t}")
    g.require_connected("optimize_inertial")
    if max_subsets is None:
        max_subsets = _setting("max_subsets", DEFAULT_MAX_SUBSETS)
    if vertex_shortcut is None:
        vertex_shortcut = _setting("vertex_shortcut", True)
    degree = t - 1
    spec = distinct_adjacency_spectrum(g, tolerances)
    reps, profiles = vertex_profiles(g, degree, vertex_shortcut)
    lp_kwargs = _lp_kwargs(tolerances)

    best_poly = Polynomial((0.0,))
    best = inertial_bound(g, t, best_poly, tolerances)
    solved = 0
    for u, u_row in zip(reps, profiles):
        for sign in (1.0, -1.0):
            for tried, (weight, b) in enumerate(_subsets_by_weight(spec.mults)):
                if weight >= best.value:
                    break
                if tried >= max_subsets:
                    logger.warning(f"optimize_inertial({g.name}, t={t}): subset cap {max_subsets} reached at u={u}")
                    break
                outcome = solve_lp(_inertial_system(profiles, u_row, spec, b, sign, tolerances.lp_epsilon), **lp_kwargs)
                solved += 1
                if outcome.status is not LPStatus.OPTIMAL:
                    continue
                poly = Polynomial(tuple(outcome.x))
                result = inertial_bound(g, t, poly, tolerances)
                if result.value < best.value:
                    best_poly, best = poly, result
                break

    logger.info(f"optimize_inertial({g.name}, t={t}): bound {best.value} after {solved} LPs over {len(reps)} vertices")
    return best_poly, best


def _ratio_problem(
    profiles: np.ndarray, u_row: np.ndarray, spec: DistinctSpectrum, l: int, eps: float
) -> LPProblem:
    """
    变量 a_1..a_k (a_0 在所有约束与目标中相消)

    maximize p(θ_0) - p(θ_l)
    s.t. diag p(A)_v ≤ diag p(A)_u, p(A)_uu - p(θ_l) = 1,
         p(θ_0) - p(θ_j) ≥ ε (j ≥ 1), p(θ_j) - p(θ_l) ≥ 0
    """
    k = profiles.shape[1] - 1
    powers = np.arange(1, k + 1)
    theta_rows = [np.asarray(theta, dtype=float) ** powers for theta in spec.thetas]
    problem = LPProblem(objective=theta_rows[0] - theta_rows[l], free=[True] * k, maximize=True)
    for row in profiles:
        if np.array_equal(row, u_row):
            continue
        problem.add(row[1:] - u_row[1:], Relation.LE, 0.0)
    problem.add(u_row[1:] - theta_rows[l], Relation.EQ, 1.0)
    for j in range(1, len(theta_rows)):
        problem.add(theta_rows[0] - theta_rows[j], Relation.GE, eps)
        if j != l:
            problem.add(theta_rows[j] - theta_rows[l], Relation.GE, 0.0)
    return problem


def optimize_ratio(
    g: Graph,
    t: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    vertex_shortcut: Optional[bool] = None,
) -> Tuple[Optional[Polynomial], BoundResult]:
    """
    最优比值型多项式(次数 t-1)

    对每个代表顶点 u 与 l ∈ [1, d] 求解线性规划,取 n / 目标值最小者;
    同值时取较小的 u,再取较小的 l。

    Returns:
        (多项式或 None, ratio_bound(g, t, 多项式))
    """
    if t < 2:
        raise GraphDomainError(f"optimize_ratio needs t >= 2, got {t}")
    if not g.is_regular():
        return None, BoundResult.na(NAReason.GRAPH_NOT_REGULAR)
    g.require_connected("optimize_ratio")
    if vertex_shortcut is None:
        vertex_shortcut = _setting("vertex_shortcut", True)
    spec = distinct_adjacency_spectrum(g, tolerances)
    if spec.d < 1:
        return None, BoundResult.na(NAReason.DEGENERATE_DENOMINATOR)
    reps, profiles = vertex_profiles(g, t - 1, vertex_shortcut)
    lp_kwargs = _lp_kwargs(tolerances)

    best: Optional[Tuple[float, int, int, Polynomial]] = None
    for u, u_row in zip(reps, profiles):
        for l in range(1, spec.d + 1):
            outcome = solve_lp(_ratio_problem(profiles, u_row, spec, l, tolerances.lp_epsilon), **lp_kwargs)
            if outcome.status is LPStatus.UNBOUNDED:
                logger.warning(f"optimize_ratio({g.name}, t={t}): LP unbounded at u={u}, l={l}, skipped")
                continue
            if outcome.status is not LPStatus.OPTIMAL or outcome.objective <= 0:
                continue
            candidate = g.n / outcome.objective
            if best is None or candidate < best[0]:
                best = (candidate, u, l, Polynomial((0.0,) + tuple(outcome.x)))

    if best is None:
        logger.info(f"optimize_ratio({g.name}, t={t}): no feasible (u, l)")
        return None, BoundResult.na(NAReason.DEGENERATE_DENOMINATOR)
    candidate, u, l, poly = best
    result = ratio_bound(g, t, poly, tolerances)
    logger.info(f"optimize_ratio({g.name}, t={t}): bound {result.value} (raw {candidate:.6g}) at u={u}, l={l}")
    return poly, result
