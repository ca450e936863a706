"""
精确求解模块
分支定界求最大团,并由此得到 ω、eq_t、α_t 与 eq
"""
from typing import Callable, Iterable, List, Optional

from loguru import logger
from pydantic import BaseModel, Field

from eqdist.core.errors import BudgetExceededError, EqdistError, GraphDomainError
from eqdist.core.graph import Graph, all_pairs_distances, complement, exact_distance_power, power
from eqdist.core.spectra import count_at_most, distance_spectrum
from eqdist.core.tolerances import DEFAULT_TOLERANCES, Tolerances

DEFAULT_BUDGET = 10 ** 8


class ExactResult(BaseModel):
    """精确值及其见证集"""

    value: int = Field(..., ge=0)
    witness: List[int] = Field(default_factory=list)
    t: Optional[int] = None
    nodes: int = 0
    evaluated: List[int] = Field(default_factory=list, description="eq 实际求解过的 t")


class CliqueSolver:
    """
    最大团分支定界求解器

    候选集用 Python 整数位集表示;每个节点对候选集做贪心着色,
    颜色数给出团大小上界,按颜色逆序分支。
    """

    def __init__(self, budget: int = DEFAULT_BUDGET):
        """
        初始化求解器

        Args:
            budget: 分支节点上限,超出时抛出 BudgetExceededError
        """
        self.budget = budget
        self.nodes = 0
        logger.debug(f"CliqueSolver initialized with budget={budget}")

    @staticmethod
    def _color_sort(candidates: int, nbrs: List[int]) -> List[tuple]:
        """贪心着色,返回按颜色递增排列的 (顶点, 颜色)"""
        order = []
        color = 0
        uncolored = candidates
        while uncolored:
            color += 1
            available = uncolored
            while available:
                low = available & -available
                v = low.bit_length() - 1
                order.append((v, color))
                uncolored &= ~low
                available &= ~low & ~nbrs[v]
        return order

    def solve(self, g: Graph) -> ExactResult:
        """
        求最大团

        Returns:
            团数与一个最大团(见证集),nodes 为本次展开的分支节点数

        Raises:
            BudgetExceededError: 分支节点数超过预算
        """
        nbrs = g.neighbor_bitsets()
        self.nodes = 0
        best: List[int] = [0]
        current: List[int] = []

        def expand(candidates: int) -> None:
            nonlocal best
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceededError(self.nodes, self.budget)
            for v, color in reversed(self._color_sort(candidates, nbrs)):
                if len(current) + color <= len(best):
                    return
                current.append(v)
                remaining = candidates & nbrs[v]
                if remaining:
                    expand(remaining)
                elif len(current) > len(best):
                    best = list(current)
                current.pop()
                candidates &= ~(1 << v)

        expand((1 << g.n) - 1)
        logger.debug(f"Max clique of {g.name}: {len(best)} ({self.nodes} nodes)")
        return ExactResult(value=len(best), witness=sorted(best), nodes=self.nodes)


def max_clique(g: Graph, budget: int = DEFAULT_BUDGET) -> ExactResult:
    """ω(G) 及一个最大团"""
    return CliqueSolver(budget).solve(g)


def eq_t(g: Graph, t: int, budget: int = DEFAULT_BUDGET) -> ExactResult:
    """
    eq_t(G) = ω(G^[#t])

    t 大于直径时幂图无边,结果为 1。
    """
    dist = all_pairs_distances(g)
    if t > dist.diam:
        return ExactResult(value=1, witness=[0], t=t)
    result = max_clique(exact_distance_power(g, t), budget)
    return result.model_copy(update={"t": t})


def alpha_t(g: Graph, t: int, budget: int = DEFAULT_BUDGET) -> ExactResult:
    """α_t(G) = ω(complement(G^t)): 两两距离都大于 t 的最大顶点集"""
    dist = all_pairs_distances(g)
    if t >= dist.diam:
        return ExactResult(value=1, witness=[0], t=t)
    result = max_clique(complement(power(g, t)), budget)
    return result.model_copy(update={"t": t})


def distance_count_bound(g: Graph, t: int, tolerances: Tolerances = DEFAULT_TOLERANCES) -> int:
    """|{i : λ̃_i ≤ -t}| + 1,距离矩阵特征值计数"""
    return count_at_most(distance_spectrum(g, tolerances), -t, tolerances.inclusion_slack) + 1


def eq(
    g: Graph,
    budget: int = DEFAULT_BUDGET,
    range_reduction: bool = True,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ExactResult:
    """
    eq(G) = max{eq_t(G) : 1 ≤ t ≤ diam}

    距离谱计数上界关于 t 单调不增;range_reduction 开启时,
    一旦某个 t 的计数上界不超过当前最优值,更大的 t 全部跳过。
    结果记录取到最大值的最小 t。
    """
    dist = all_pairs_distances(g)
    if dist.diam == 0:
        return ExactResult(value=1, witness=[0])
    best: Optional[ExactResult] = None
    evaluated = []
    nodes = 0
    for t in range(1, dist.diam + 1):
        if range_reduction and best is not None and distance_count_bound(g, t, tolerances) <= best.value:
            logger.debug(f"eq({g.name}): distance bound at t={t} cannot beat {best.value}, skipping t >= {t}")
            break
        result = eq_t(g, t, budget)
        evaluated.append(t)
        nodes += result.nodes
        if best is None or result.value > best.value:
            best = result
    return best.model_copy(update={"evaluated": evaluated, "nodes": nodes})


# ---- 见证检查 ----

def verify_witness(g: Graph, witness: Iterable[int], predicate: Callable[[int], bool]) -> bool:
    """见证集中每一对顶点的距离都满足 predicate"""
    d = all_pairs_distances(g).d
    vertices = list(witness)
    if len(set(vertices)) != len(vertices):
        return False
    return all(predicate(int(d[u, v])) for i, u in enumerate(vertices) for v in vertices[i + 1:])


def is_equidistant(g: Graph, witness: Iterable[int], t: int) -> bool:
    return verify_witness(g, witness, lambda dist: dist == t)


def is_t_independent(g: Graph, witness: Iterable[int], t: int) -> bool:
    return verify_witness(g, witness, lambda dist: dist > t)


# ---- 关系检查 ----

class OmegaAlphaCheck(BaseModel):
    """ω = eq_1 ≤ eq ≤ max{ω, α},直径为 2 时取等"""

    omega: int
    alpha: int
    eq: int
    diam: int
    holds: bool


def eq_omega_alpha_check(g: Graph, budget: int = DEFAULT_BUDGET) -> OmegaAlphaCheck:
    omega = max_clique(g, budget).value
    alpha = max_clique(complement(g), budget).value
    value = eq(g, budget).value
    diam = all_pairs_distances(g).diam
    holds = omega == eq_t(g, 1, budget).value and omega <= value <= max(omega, alpha)
    if diam == 2:
        holds = holds and value == max(omega, alpha)
    return OmegaAlphaCheck(omega=omega, alpha=alpha, eq=value, diam=diam, holds=holds)


# ---- 差距报告 ----

class GapRow(BaseModel):
    name: str
    n: int
    t: int
    alpha: Optional[int] = None
    eq: Optional[int] = None
    gap: Optional[int] = None
    error: Optional[str] = None


class GapReport(BaseModel):
    t: int
    rows: List[GapRow]
    max_gap: Optional[int] = None


def gap_report(graphs: Iterable[Graph], t: int, budget: int = DEFAULT_BUDGET) -> GapReport:
    """
    对图流逐个计算 α_{t-1} - eq_t

    单个图出错时记录错误并继续处理后续图。
    """
    if t < 2:
        raise GraphDomainError(f"gap report needs t >= 2, got {t}")
    rows = []
    for g in graphs:
        try:
            alpha = alpha_t(g, t - 1, budget).value
            value = eq_t(g, t, budget).value
            rows.append(GapRow(name=g.name, n=g.n, t=t, alpha=alpha, eq=value, gap=alpha - value))
        except EqdistError as e:
            logger.error(f"Gap computation failed for {g.name}: {e}", exc_info=True)
            rows.append(GapRow(name=g.name, n=g.n, t=t, error=str(e)))
    gaps = [r.gap for r in rows if r.gap is not None]
    report = GapReport(t=t, rows=rows, max_gap=max(gaps) if gaps else None)
    logger.info(f"Gap report t={t}: {len(rows)} graphs, max gap {report.max_gap}")
    return report
