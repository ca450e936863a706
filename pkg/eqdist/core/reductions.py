"""
归约构造模块
由最大团归约到 eq_t / eq 的图变换、分裂图识别,以及归约等式的经验验证
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel

from eqdist.core.errors import BudgetExceededError, GraphDomainError, SplitGraphError
from eqdist.core.exact import DEFAULT_BUDGET, ExactResult, eq, eq_t, max_clique
from eqdist.core.graph import Graph, all_pairs_distances, join, subdivide
from eqdist.core.graph6 import encode_graph6
from eqdist.core.named import complete

Partition = Tuple[List[int], List[int]]


class GadgetKind(str, Enum):
    ODD = "odd-subdivision"
    EVEN = "even-subdivision-with-central-clique"
    JOIN = "join-with-complete"


@dataclass(frozen=True)
class GadgetOutput:
    """归约构造的结果: 新图 h 以及原顶点在 h 中的编号"""

    h: Graph
    original_vertices: Tuple[int, ...]
    kind: GadgetKind
    t: int
    central: Tuple[int, ...] = ()


# ---- 分裂图 ----

def _split_order(g: Graph) -> Tuple[np.ndarray, int]:
    """按度数降序(同度按编号)排列顶点,返回排列与满足 d_k ≥ k-1 的最大 k"""
    degrees = g.degrees
    order = np.lexsort((np.arange(g.n), -degrees))
    sorted_degrees = degrees[order]
    k = int(np.count_nonzero(sorted_degrees >= np.arange(g.n)))
    return order, k


def is_split(g: Graph) -> Tuple[bool, Optional[Partition]]:
    """
    Hammer-Simeone 判别: k(k-1) - Σ_{i≤k} d_i + Σ_{i>k} d_i = 0

    Returns:
        (是否分裂图, 分裂时为 (团一侧, 独立集一侧))
    """
    order, k = _split_order(g)
    sorted_degrees = g.degrees[order]
    value = k * (k - 1) - int(sorted_degrees[:k].sum()) + int(sorted_degrees[k:].sum())
    if value != 0:
        return False, None
    clique = sorted(int(v) for v in order[:k])
    independent = sorted(int(v) for v in order[k:])
    return True, (clique, independent)


def clique_of_split(g: Graph) -> ExactResult:
    """
    分裂图的 ω: 团一侧,若有独立点与团一侧全部相邻则再加上它

    Raises:
        SplitGraphError: g 不是分裂图
    """
    split, partition = is_split(g)
    if not split:
        raise SplitGraphError(f"{g.name} is not a split graph")
    clique, independent = partition
    adj = g.adjacency
    for v in independent:
        if adj[v, clique].all():
            return ExactResult(value=len(clique) + 1, witness=sorted(clique + [v]))
    return ExactResult(value=len(clique), witness=clique)


# ---- 构造 ----

def _require_parity(t: int, odd: bool) -> None:
    if int(t) != t or t < 1 or (t % 2 == 1) != odd:
        kind = "odd" if odd else "even"
        raise GraphDomainError(f"t must be a positive {kind} integer, got {t}")


def gadget_odd(g: Graph, t: int) -> GadgetOutput:
    """每条边替换为长度 t 的路径(t 为奇数);ω(g) = eq_t(h)"""
    _require_parity(t, odd=True)
    g.require_connected("gadget_odd")
    if t == 1:
        return GadgetOutput(h=g, original_vertices=tuple(range(g.n)), kind=GadgetKind.ODD, t=t)
    h, _ = subdivide(g, t)
    return GadgetOutput(h=h, original_vertices=tuple(range(g.n)), kind=GadgetKind.ODD, t=t)


def gadget_even(g: Graph, t: int) -> GadgetOutput:
    """
    偶数 t 的细分构造,路径中点(下标 t/2)两两相连成团;ω(g) + 1 = eq_t(h)

    Raises:
        SplitGraphError: 分裂图输入,应改用 clique_of_split
    """
    _require_parity(t, odd=False)
    g.require_connected("gadget_even")
    if is_split(g)[0]:
        raise SplitGraphError(f"{g.name} is split; use clique_of_split for its clique number")
    sub, paths = subdivide(g, t)
    central = [path[t // 2] for path in paths]
    adj = np.array(sub.adjacency)
    idx = np.asarray(central)
    adj[np.ix_(idx, idx)] = True
    adj[idx, idx] = False
    h = Graph(adj, name=f"E{t}({g.name})")
    return GadgetOutput(
        h=h, original_vertices=tuple(range(g.n)), kind=GadgetKind.EVEN, t=t, central=tuple(central)
    )


def gadget_join(g: Graph) -> GadgetOutput:
    """h = g ∇ K_n;eq(h) = ω(g) + n"""
    h = join(g, complete(g.n))
    return GadgetOutput(h=h, original_vertices=tuple(range(g.n)), kind=GadgetKind.JOIN, t=0)


def build_gadget(g: Graph, t: int) -> GadgetOutput:
    """按 t 的奇偶选择构造,t = 0 表示 eq 的 join 构造"""
    if t == 0:
        return gadget_join(g)
    if t % 2:
        return gadget_odd(g, t)
    return gadget_even(g, t)


def subdivision_distance_check(g: Graph, gadget: GadgetOutput) -> bool:
    """
    原顶点之间的距离关系

    奇数构造: d_h = t·d_g;偶数构造(中点成团): d_h = min(t·d_g, t+1)。
    """
    if gadget.kind is GadgetKind.JOIN:
        raise GraphDomainError("distance relation is defined for subdivision gadgets only")
    d_g = all_pairs_distances(g).d
    idx = np.asarray(gadget.original_vertices)
    d_h = all_pairs_distances(gadget.h).d[np.ix_(idx, idx)]
    expected = gadget.t * d_g
    if gadget.kind is GadgetKind.EVEN:
        expected = np.minimum(expected, gadget.t + 1)
        np.fill_diagonal(expected, 0)
    return bool(np.array_equal(d_h, expected))


# ---- 验证 ----

class ReductionReport(BaseModel):
    """一次归约验证: lhs 为由 ω(g) 预测的值,rhs 为在 h 上求得的值"""

    graph: str
    graph6: str
    n: int
    t: int
    kind: GadgetKind
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    verdict: str = "inconclusive"
    witness_g: List[int] = []
    witness_h: List[int] = []
    detail: Optional[str] = None


def verify_reduction(g: Graph, t: int, budget: int = DEFAULT_BUDGET) -> ReductionReport:
    """
    构造归约并用精确求解器比较两侧

    超出预算时给出 inconclusive,不会给出错误结论。
    """
    gadget = build_gadget(g, t)
    report = ReductionReport(graph=g.name, graph6=encode_graph6(g), n=g.n, t=t, kind=gadget.kind)
    try:
        omega = max_clique(g, budget)
        if gadget.kind is GadgetKind.JOIN:
            lhs = omega.value + g.n
            side = eq(gadget.h, budget)
        else:
            lhs = omega.value + (1 if gadget.kind is GadgetKind.EVEN else 0)
            side = eq_t(gadget.h, t, budget)
    except BudgetExceededError as e:
        logger.warning(f"Reduction check for {g.name} (t={t}) inconclusive: {e}")
        report.detail = str(e)
        return report

    report.lhs = lhs
    report.rhs = side.value
    report.witness_g = omega.witness
    report.witness_h = side.witness
    report.verdict = "verified" if lhs == side.value else "violated"
    if report.verdict == "violated":
        logger.error(f"Reduction identity violated on {g.name} (t={t}): {lhs} != {side.value}")
    return report


def verify_corpus(
    graphs: Iterable[Graph], ts: Sequence[int], budget: int = DEFAULT_BUDGET
) -> List[ReductionReport]:
    """对语料中每个图和每个 t 运行 verify_reduction;被构造拒绝的分裂图跳过"""
    reports = []
    skipped = 0
    for g in graphs:
        for t in ts:
            try:
                reports.append(verify_reduction(g, t, budget))
            except SplitGraphError:
                logger.info(f"Skipping split graph {g.name} for t={t}")
                skipped += 1
    verified = sum(r.verdict == "verified" for r in reports)
    logger.info(f"Reduction corpus: {verified}/{len(reports)} verified, {skipped} split inputs skipped")
    return reports
