"""
特征值上界模块
eq_t 与 eq 的各类闭式谱上界,以及按表格列组装的上界套件

约定: 惯性型与比值型上界按目标 eq_t 编号,多项式次数不超过 t-1。
"""
import math
from enum import Enum
from typing import TYPE_CHECKING, Callable, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field

from eqdist.core.errors import BudgetExceededError, GraphDomainError
from eqdist.core.exact import DEFAULT_BUDGET, distance_count_bound, eq, eq_t
from eqdist.core.graph import Graph, all_pairs_distances, complement, exact_distance_power
from eqdist.core.spectra import (
    adjacency_spectrum,
    distance_spectrum,
    distinct_adjacency_spectrum,
    laplacian_spectrum,
    matrix_power_diagonals,
)
from eqdist.core.tolerances import DEFAULT_TOLERANCES, Tolerances

if TYPE_CHECKING:
    from eqdist.core.polyopt import Polynomial

# 有符号 64 位整数上限
DEGREE_BOUND_CAP = 2 ** 63 - 1


class NAReason(str, Enum):
    GRAPH_NOT_REGULAR = "graph-not-regular"
    POWER_NOT_REGULAR = "power-not-regular"
    NOT_TRANSMISSION_REGULAR = "not-transmission-regular"
    SIGN_CONDITION_FAILED = "sign-condition-failed"
    DEGENERATE_DENOMINATOR = "degenerate-denominator"
    NO_QUALIFYING_EIGENVALUE = "no-qualifying-eigenvalue"


class BoundResult(BaseModel):
    """单个上界: 适用时给出取整值与原始实数值,否则给出不适用原因"""

    value: Optional[int] = None
    raw: Optional[float] = None
    na_reason: Optional[NAReason] = None
    saturated: bool = False

    @property
    def applicable(self) -> bool:
        return self.value is not None

    @classmethod
    def of(cls, raw: float, tolerances: Tolerances = DEFAULT_TOLERANCES) -> "BoundResult":
        return cls(value=int(math.floor(raw + tolerances.floor_epsilon)), raw=float(raw))

    @classmethod
    def na(cls, reason: NAReason) -> "BoundResult":
        return cls(na_reason=reason)

    def display(self) -> str:
        """表格单元: 不适用为 "-",饱和值加 "≥" 前缀"""
        if self.value is None:
            return "-"
        return f">={self.value}" if self.saturated else str(self.value)


def _require_t(t: int) -> None:
    if int(t) != t or t < 1:
        raise GraphDomainError(f"t must be a positive integer, got {t}")


def _check_degree(p: "Polynomial", t: int) -> None:
    if p.degree > t - 1:
        raise GraphDomainError(f"polynomial degree {p.degree} exceeds t-1 = {t - 1}")


# ---- eq_t 的上界 ----

def degree_bound(g: Graph, t: int, cap: int = DEGREE_BOUND_CAP) -> BoundResult:
    """
    Δ(Δ-1)^{t-1} + 1

    超过 cap 时饱和,返回 value=cap 且 saturated=True。
    """
    _require_t(t)
    delta = g.max_degree
    value = delta
    for _ in range(t - 1):
        if value == 0 or delta - 1 == 1:
            break
        value *= delta - 1
        if value >= cap:
            break
    value += 1
    if value > cap:
        logger.debug(f"degree bound of {g.name} at t={t} saturated at {cap}")
        return BoundResult(value=cap, raw=float(cap), saturated=True)
    return BoundResult(value=value, raw=float(value))


def inertial_bound(
    g: Graph, t: int, p: "Polynomial", tolerances: Tolerances = DEFAULT_TOLERANCES
) -> BoundResult:
    """
    惯性型上界

    min{|{i : p(λ_i) ≥ w(p)}|, |{i : p(λ_i) ≤ W(p)}|},
    其中 W(p)、w(p) 为 p(A) 对角元的最大、最小值。

    Args:
        g: 连通图
        t: 目标 eq_t 的 t
        p: 次数不超过 t-1 的多项式
    """
    _require_t(t)
    _check_degree(p, t)
    g.require_connected("inertial_bound")
    values = p(adjacency_spectrum(g, tolerances).values)
    diag = p.diagonal_of(matrix_power_diagonals(g, p.degree))
    slack = tolerances.inclusion_slack
    upper = int(np.count_nonzero(values >= diag.min() - slack))
    lower = int(np.count_nonzero(values <= diag.max() + slack))
    value = min(upper, lower)
    return BoundResult(value=value, raw=float(value))


def ratio_bound(
    g: Graph, t: int, p: "Polynomial", tolerances: Tolerances = DEFAULT_TOLERANCES
) -> BoundResult:
    """比值型上界 n(W(p) - λ(p)) / (p(λ_1) - λ(p)),λ(p) = min_{i≥2} p(λ_i)"""
    _require_t(t)
    _check_degree(p, t)
    if not g.is_regular():
        return BoundResult.na(NAReason.GRAPH_NOT_REGULAR)
    if g.n < 2:
        return BoundResult.na(NAReason.DEGENERATE_DENOMINATOR)
    values = p(adjacency_spectrum(g, tolerances).values)
    lam = float(values[1:].min())
    denominator = float(values[0]) - lam
    if denominator <= tolerances.inclusion_slack:
        return BoundResult.na(NAReason.DEGENERATE_DENOMINATOR)
    top = float(p.diagonal_of(matrix_power_diagonals(g, p.degree)).max())
    return BoundResult.of(g.n * (top - lam) / denominator, tolerances)


def _largest_at_most(thetas: Tuple[float, ...], threshold: float, slack: float) -> Optional[int]:
    """满足 θ ≤ threshold 的最大 θ 的下标"""
    for i, theta in enumerate(thetas):
        if theta <= threshold + slack:
            return i
    return None


def ratio_bound_t3(g: Graph, tolerances: Tolerances = DEFAULT_TOLERANCES) -> BoundResult:
    """
    eq_3 的闭式比值上界

    取 θ_i 为不超过 -1 的最大特征值,
    n(θ_0 + θ_i θ_{i-1}) / ((θ_0 - θ_i)(θ_0 - θ_{i-1}))
    """
    if not g.is_regular():
        return BoundResult.na(NAReason.GRAPH_NOT_REGULAR)
    spec = distinct_adjacency_spectrum(g, tolerances)
    if spec.d < 2:
        return BoundResult.na(NAReason.NO_QUALIFYING_EIGENVALUE)
    theta = spec.thetas
    i = _largest_at_most(theta, -1.0, tolerances.inclusion_slack)
    if i is None or i == 0:
        return BoundResult.na(NAReason.NO_QUALIFYING_EIGENVALUE)
    t0, ti, tp = theta[0], theta[i], theta[i - 1]
    raw = g.n * (t0 + ti * tp) / ((t0 - ti) * (t0 - tp))
    return BoundResult.of(raw, tolerances)


def ratio_bound_t4(g: Graph, tolerances: Tolerances = DEFAULT_TOLERANCES) -> BoundResult:
    """
    eq_4 的闭式比值上界

    Δ_3 = max diag(A^3),θ_s 为不超过
    -(θ_0² + θ_0 θ_d - Δ_3) / (θ_0(θ_d + 1)) 的最大特征值。
    """
    if not g.is_regular():
        return BoundResult.na(NAReason.GRAPH_NOT_REGULAR)
    spec = distinct_adjacency_spectrum(g, tolerances)
    if spec.d < 3:
        return BoundResult.na(NAReason.NO_QUALIFYING_EIGENVALUE)
    theta = spec.thetas
    t0, td = theta[0], theta[-1]
    delta3 = float(matrix_power_diagonals(g, 3)[:, 3].max())
    scale = t0 * (td + 1.0)
    if abs(scale) <= tolerances.inclusion_slack:
        return BoundResult.na(NAReason.DEGENERATE_DENOMINATOR)
    threshold = -(t0 * t0 + t0 * td - delta3) / scale
    s = _largest_at_most(theta, threshold, tolerances.inclusion_slack)
    if s is None or s == 0:
        return BoundResult.na(NAReason.NO_QUALIFYING_EIGENVALUE)
    ts, tp = theta[s], theta[s - 1]
    numerator = delta3 - t0 * (ts + tp + td) - ts * tp * td
    raw = g.n * numerator / ((t0 - ts) * (t0 - tp) * (t0 - td))
    return BoundResult.of(raw, tolerances)


def haemers_power_bound(g: Graph, t: int, tolerances: Tolerances = DEFAULT_TOLERANCES) -> BoundResult:
    """G^[#t] 正则时,用其邻接谱界定团数: n(1+β_2) / (n - β_1 + β_2)"""
    _require_t(t)
    h = exact_distance_power(g, t)
    if not h.is_regular():
        return BoundResult.na(NAReason.POWER_NOT_REGULAR)
    if h.n < 2:
        return BoundResult.na(NAReason.DEGENERATE_DENOMINATOR)
    beta = adjacency_spectrum(h, tolerances).values
    n = h.n
    return BoundResult.of(n * (1.0 + beta[1]) / (n - beta[0] + beta[1]), tolerances)


def phi_bound(g: Graph, t: int, tolerances: Tolerances = DEFAULT_TOLERANCES) -> BoundResult:
    """G^[#t] 补图的拉普拉斯谱上界 n(1 - μ_2/μ_n) + 1"""
    _require_t(t)
    h = complement(exact_distance_power(g, t))
    mu = laplacian_spectrum(h, tolerances).ascending
    if h.n < 2 or mu[-1] <= tolerances.inclusion_slack:
        return BoundResult.na(NAReason.DEGENERATE_DENOMINATOR)
    return BoundResult.of(h.n * (1.0 - mu[1] / mu[-1]) + 1.0, tolerances)


def distance_bound(g: Graph, t: int, tolerances: Tolerances = DEFAULT_TOLERANCES) -> BoundResult:
    """|{i : λ̃_i ≤ -t}| + 1"""
    _require_t(t)
    value = distance_count_bound(g, t, tolerances)
    return BoundResult(value=value, raw=float(value))


def quotient_bounds(
    g: Graph, t: int, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> Tuple[BoundResult, BoundResult]:
    """
    传输正则图的商矩阵交错上界

    Returns:
        (tn - d + λ̃_2 > 0 时的上界, tn - d + λ̃_n < 0 时的上界)
    """
    _require_t(t)
    dist = all_pairs_distances(g)
    if not dist.is_transmission_regular():
        na = BoundResult.na(NAReason.NOT_TRANSMISSION_REGULAR)
        return na, na
    n = g.n
    if n < 2:
        na = BoundResult.na(NAReason.DEGENERATE_DENOMINATOR)
        return na, na
    values = distance_spectrum(g, tolerances).values
    d = float(dist.transmission[0])
    slack = tolerances.inclusion_slack
    results = []
    for lam, sign in ((values[1], 1.0), (values[-1], -1.0)):
        denominator = t * n - d + lam
        if sign * denominator > slack:
            results.append(BoundResult.of((lam + t) * n / denominator, tolerances))
        else:
            results.append(BoundResult.na(NAReason.SIGN_CONDITION_FAILED))
    return results[0], results[1]


# ---- eq 的上界 ----

def eq_distance_bound(g: Graph, tolerances: Tolerances = DEFAULT_TOLERANCES) -> BoundResult:
    """|{i : λ̃_i ≤ -1}| + 1"""
    return distance_bound(g, 1, tolerances)


def eq_combined_bound(g: Graph, tolerances: Tolerances = DEFAULT_TOLERANCES) -> BoundResult:
    """n·max{-λ_n/(λ_1-λ_n), (1+λ_2)/(n-λ_1+λ_2)}"""
    if not g.is_regular():
        return BoundResult.na(NAReason.GRAPH_NOT_REGULAR)
    lam = adjacency_spectrum(g, tolerances).values
    n = g.n
    if n < 2 or lam[0] - lam[-1] <= tolerances.inclusion_slack:
        return BoundResult.na(NAReason.DEGENERATE_DENOMINATOR)
    hoffman = -lam[-1] / (lam[0] - lam[-1])
    haemers = (1.0 + lam[1]) / (n - lam[0] + lam[1])
    return BoundResult.of(n * max(hoffman, haemers), tolerances)


# ---- 套件 ----

def _degree_column(g: Graph, t: int, tolerances: Tolerances) -> BoundResult:
    from eqdist.utils.config import config

    return degree_bound(g, t, int(config.get("solver.degree_bound_cap", DEGREE_BOUND_CAP)))


def _inertial_column(g: Graph, t: int, tolerances: Tolerances) -> BoundResult:
    from eqdist.core.polyopt import Polynomial, optimize_inertial

    if t == 1:
        return inertial_bound(g, t, Polynomial((1.0,)), tolerances)
    return optimize_inertial(g, t, tolerances)[1]


def _ratio_column(g: Graph, t: int, tolerances: Tolerances) -> BoundResult:
    from eqdist.core.polyopt import Polynomial, optimize_ratio

    if t == 1:
        return ratio_bound(g, t, Polynomial((1.0,)), tolerances)
    return optimize_ratio(g, t, tolerances)[1]


BoundFn = Callable[[Graph, int, Tolerances], BoundResult]

bound_registry: Dict[str, BoundFn] = {
    "degree": _degree_column,
    "inertial": _inertial_column,
    "ratio": _ratio_column,
    "haemers_power": haemers_power_bound,
    "phi": phi_bound,
    "distance": distance_bound,
    "quotient_1": lambda g, t, tol: quotient_bounds(g, t, tol)[0],
    "quotient_2": lambda g, t, tol: quotient_bounds(g, t, tol)[1],
    "ratio_t3": lambda g, t, tol: ratio_bound_t3(g, tol),
    "ratio_t4": lambda g, t, tol: ratio_bound_t4(g, tol),
}

SUITE_COLUMNS: List[str] = [
    "degree", "inertial", "ratio", "haemers_power", "phi", "distance", "quotient_1", "quotient_2",
]

EQ_SUITE_COLUMNS: List[str] = ["distance", "combined"]


class BoundSuite(BaseModel):
    """表格的一行: 各列上界与可选的精确值"""

    graph: str
    n: int
    t: Optional[int] = None
    bounds: Dict[str, BoundResult] = Field(default_factory=dict)
    exact: Optional[int] = None
    exact_error: Optional[str] = None


def _exact_cell(suite_row: BoundSuite, solve: Callable[[], int]) -> None:
    try:
        suite_row.exact = solve()
    except BudgetExceededError as e:
        logger.warning(f"Exact value of {suite_row.graph} not found: {e}")
        suite_row.exact_error = "budget-exceeded"


def suite(
    g: Graph,
    t: Optional[int],
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    columns: Optional[List[str]] = None,
    exact: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> BoundSuite:
    """
    计算一行上界

    Args:
        g: 连通图
        t: eq_t 的 t;None 表示 eq 行
        columns: 需要计算的上界标识,默认 SUITE_COLUMNS
        exact: 是否附加精确值
        budget: 精确求解的分支节点上限

    Returns:
        BoundSuite
    """
    if t is None:
        return eq_suite(g, tolerances, exact, budget)
    _require_t(t)
    g.require_connected("suite")
    row = BoundSuite(graph=g.name, n=g.n, t=t)
    for key in columns or SUITE_COLUMNS:
        if key not in bound_registry:
            raise GraphDomainError(f"unknown bound '{key}', expected one of {sorted(bound_registry)}")
        row.bounds[key] = bound_registry[key](g, t, tolerances)
    if exact:
        _exact_cell(row, lambda: eq_t(g, t, budget).value)
    logger.debug(f"Suite {g.name} t={t}: " + ", ".join(f"{k}={v.display()}" for k, v in row.bounds.items()))
    return row


def eq_suite(
    g: Graph,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    exact: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> BoundSuite:
    """eq 行: 距离谱上界、比值/Haemers 组合上界与精确 eq"""
    g.require_connected("eq_suite")
    row = BoundSuite(graph=g.name, n=g.n)
    row.bounds["distance"] = eq_distance_bound(g, tolerances)
    row.bounds["combined"] = eq_combined_bound(g, tolerances)
    if exact:
        _exact_cell(row, lambda: eq(g, budget, tolerances=tolerances).value)
    return row
