"""
验证套件
归约等式、关系引理、Johnson 图紧性、上界可靠性、差距构造、多项式优化一致性与数值精度的批量检查
"""
from typing import Callable, Dict, Iterator, List, Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field

from eqdist.core.bounds import eq_suite, ratio_bound_t3, ratio_bound_t4, suite
from eqdist.core.errors import BudgetExceededError
from eqdist.core.exact import DEFAULT_BUDGET, alpha_t, eq_omega_alpha_check, eq_t, max_clique
from eqdist.core.graph import Graph, all_pairs_distances, chained_copies
from eqdist.core.named import extended_star, johnson, resolve_graph
from eqdist.core.polyopt import optimize_inertial, optimize_ratio
from eqdist.core.reductions import is_split, verify_reduction
from eqdist.core.spectra import adjacency_spectrum, distance_spectrum, get_solver, matrix_power_diagonals
from eqdist.core.tolerances import DEFAULT_TOLERANCES, Tolerances

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

# 可靠性与优化一致性检查使用的小型命名图
CORPUS = [
    "petersen", "heawood", "thomsen", "hexahedron", "octahedron", "icosahedron", "dodecahedron",
    "desargues", "pappus", "moebius_kantor", "nauru", "coxeter", "frucht", "truncated_tetrahedron",
    "grotzsch", "moser_spindle", "tietze", "durer", "wagner", "franklin", "bidiakis",
    "krackhardt_kite", "j_7_3",
]


class CheckResult(BaseModel):
    suite: str
    name: str
    status: str
    detail: Dict[str, object] = Field(default_factory=dict)


class VerifySummary(BaseModel):
    suite: str
    passed: int = 0
    failed: int = 0
    inconclusive: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0


class VerifySettings(BaseModel):
    """report.yaml 的 verify 配置节"""

    seed: int = 20240601
    gadget_graphs: int = 50
    gadget_max_order: int = 7
    relation_graphs: int = 100
    relation_max_order: int = 9
    numerics_matrices: int = 100
    numerics_max_order: int = 64
    budget: int = DEFAULT_BUDGET
    tolerances: Tolerances = DEFAULT_TOLERANCES


def random_connected_graph(rng: np.random.Generator, n: int, p: float = 0.4, name: str = "G") -> Graph:
    """随机生成树加上独立以概率 p 出现的其余边"""
    adj = np.zeros((n, n), dtype=bool)
    for v in range(1, n):
        u = int(rng.integers(0, v))
        adj[u, v] = adj[v, u] = True
    extra = np.triu(rng.random((n, n)) < p, 1)
    adj |= extra | extra.T
    return Graph(adj, name=name)


def _check(suite_name: str, name: str, ok: bool, **detail) -> CheckResult:
    return CheckResult(suite=suite_name, name=name, status=PASS if ok else FAIL, detail=detail)


# ---- 各套件 ----

def check_gadgets(settings: VerifySettings) -> Iterator[CheckResult]:
    """随机连通非分裂图上的三种归约等式"""
    rng = np.random.default_rng(settings.seed)
    produced = 0
    while produced < settings.gadget_graphs:
        n = int(rng.integers(4, settings.gadget_max_order + 1))
        g = random_connected_graph(rng, n, float(rng.uniform(0.2, 0.6)), name=f"rand{produced}")
        if is_split(g)[0]:
            continue
        produced += 1
        for t in (0, 2, 3, 4, 5):
            report = verify_reduction(g, t, settings.budget)
            status = {"verified": PASS, "violated": FAIL}.get(report.verdict, INCONCLUSIVE)
            yield CheckResult(
                suite="gadgets",
                name=f"{g.name} t={t}",
                status=status,
                detail={"graph6": report.graph6, "lhs": report.lhs, "rhs": report.rhs},
            )


def check_relations(settings: VerifySettings) -> Iterator[CheckResult]:
    """链式不等式 α_t ≥ eq_{t*} (t < t*)、直径处 α_{t-1} = eq_t、eq_1 = ω 与 ω ≤ eq ≤ max{ω, α}"""
    rng = np.random.default_rng(settings.seed + 1)
    budget = settings.budget
    for i in range(settings.relation_graphs):
        n = int(rng.integers(2, settings.relation_max_order + 1))
        g = random_connected_graph(rng, n, float(rng.uniform(0.1, 0.6)), name=f"rand{i}")
        diam = all_pairs_distances(g).diam
        eqs = {t: eq_t(g, t, budget).value for t in range(1, diam + 1)}
        alphas = {t: alpha_t(g, t, budget).value for t in range(1, diam + 1)}
        chain = all(alphas[t] >= eqs[s] for t in eqs for s in eqs if t < s)
        yield _check("relations", f"{g.name} chain", chain, n=n, diam=diam)
        if diam >= 2:
            yield _check("relations", f"{g.name} diameter", alphas[diam - 1] == eqs[diam],
                         alpha=alphas[diam - 1], eq=eqs[diam])
        omega = max_clique(g, budget).value
        yield _check("relations", f"{g.name} eq_1", eqs[1] == omega, eq_1=eqs[1], omega=omega)
        sandwich = eq_omega_alpha_check(g, budget)
        yield _check("relations", f"{g.name} sandwich", sandwich.holds, **sandwich.model_dump())


def check_johnson(settings: VerifySettings) -> Iterator[CheckResult]:
    """J(n,3)、J(n,4) 上闭式比值上界的紧性与 max diag(A^3) = k(n-k)(n-2)"""
    tol, budget = settings.tolerances, settings.budget
    for n in range(7, 13):
        g = johnson(n, 3)
        bound = ratio_bound_t3(g, tol).value
        exact = eq_t(g, 3, budget).value
        yield _check("johnson", f"J({n},3) t=3", bound == exact == n // 3, bound=bound, exact=exact)
    for n in range(9, 13):
        g = johnson(n, 4)
        bound = ratio_bound_t4(g, tol).value
        exact = eq_t(g, 4, budget).value
        delta3 = int(matrix_power_diagonals(g, 3)[:, 3].max())
        yield _check("johnson", f"J({n},4) t=4", bound == exact == n // 4, bound=bound, exact=exact)
        yield _check("johnson", f"J({n},4) walks", delta3 == 4 * (n - 4) * (n - 2), delta3=delta3)


def check_soundness(settings: VerifySettings) -> Iterator[CheckResult]:
    """每个适用上界都不小于精确值"""
    for key in CORPUS:
        g = resolve_graph(key)
        rows = [suite(g, t, settings.tolerances, budget=settings.budget) for t in (2, 3)]
        rows.append(eq_suite(g, settings.tolerances, budget=settings.budget))
        for row in rows:
            label = f"{key} {'eq' if row.t is None else f't={row.t}'}"
            if row.exact is None:
                yield CheckResult(suite="soundness", name=label, status=INCONCLUSIVE)
                continue
            broken = {k: b.value for k, b in row.bounds.items() if b.applicable and b.value < row.exact}
            yield _check("soundness", label, not broken, exact=row.exact, violations=broken)


def check_gap(settings: VerifySettings) -> Iterator[CheckResult]:
    """
    扩展星图的 α_t,以及串联副本上 α_3 的线性增长与 eq_4 的有界性

    叶子两两相距 2m,取 m = ⌊t/2⌋ + 1 使 2m > t。
    """
    budget = settings.budget
    for n in range(4, 9):
        for t in (2, 3, 4, 5):
            g = extended_star(n, t // 2 + 1)
            value = alpha_t(g, t, budget).value
            yield _check("gap", f"ES({n},{t // 2 + 1}) alpha_{t}", value == n - 1, alpha=value)
    base = extended_star(4, 2)
    eq4 = []
    for m in (1, 2, 3, 4):
        h = chained_copies(base, m, 4)
        alpha3 = alpha_t(h, 3, budget).value
        eq4.append(eq_t(h, 4, budget).value)
        yield _check("gap", f"H(ES(4,2),{m}) alpha_3", alpha3 == 4 * m - 1, alpha=alpha3, eq_4=eq4[-1])
    yield _check("gap", "H(ES(4,2),m) eq_4 bounded", eq4[2] == eq4[3], eq_4=eq4)


def check_optimizer(settings: VerifySettings) -> Iterator[CheckResult]:
    """线性规划最优多项式与闭式上界一致,惯性型优化复现已知值"""
    tol = settings.tolerances
    for key in CORPUS:
        g = resolve_graph(key)
        if not g.is_regular():
            continue
        for t, closed in ((3, ratio_bound_t3), (4, ratio_bound_t4)):
            expected = closed(g, tol)
            if not expected.applicable:
                continue
            _, found = optimize_ratio(g, t, tol)
            yield _check("optimizer", f"{key} ratio t={t}", found.value == expected.value,
                         optimized=found.value, closed_form=expected.value)
    for key, value in (("petersen", 4), ("grotzsch", 5)):
        _, found = optimize_inertial(resolve_graph(key), 2, tol)
        yield _check("optimizer", f"{key} inertial t=2", found.value == value, found=found.value, expected=value)


def check_numerics(settings: VerifySettings) -> Iterator[CheckResult]:
    """Jacobi 分解的重构误差,以及 Petersen 图谱的解析值"""
    rng = np.random.default_rng(settings.seed + 2)
    solver = get_solver(settings.tolerances)
    for i in range(settings.numerics_matrices):
        n = int(rng.integers(1, settings.numerics_max_order + 1))
        m = rng.normal(size=(n, n))
        m = (m + m.T) / 2
        w, q = solver.decompose(m)
        error = float(np.abs(q @ np.diag(w) @ q.T - m).max())
        limit = 1e-8 * (1 + float(np.linalg.norm(m)))
        yield _check("numerics", f"matrix{i} n={n}", error <= limit, error=error, limit=limit)
    petersen = resolve_graph("petersen")
    adjacency = np.array([3] + [1] * 5 + [-2] * 4, dtype=float)
    distance = np.array([15] + [0] * 4 + [-3] * 5, dtype=float)
    for label, spectrum, expected in (
        ("adjacency", adjacency_spectrum(petersen, settings.tolerances), adjacency),
        ("distance", distance_spectrum(petersen, settings.tolerances), distance),
    ):
        error = float(np.abs(spectrum.values - expected).max())
        yield _check("numerics", f"petersen {label}", error <= 1e-8, error=error)


SUITES: Dict[str, Callable[[VerifySettings], Iterator[CheckResult]]] = {
    "gadgets": check_gadgets,
    "relations": check_relations,
    "johnson": check_johnson,
    "soundness": check_soundness,
    "gap": check_gap,
    "optimizer": check_optimizer,
    "numerics": check_numerics,
}


def run_suite(name: str, settings: Optional[VerifySettings] = None) -> Iterator[CheckResult]:
    """
    逐项运行一个验证套件;单项超出预算时记为 inconclusive

    Raises:
        KeyError: 未知套件名
    """
    settings = settings or VerifySettings()
    logger.info(f"Running verification suite '{name}'")
    checks = SUITES[name](settings)
    while True:
        try:
            yield next(checks)
        except StopIteration:
            return
        except BudgetExceededError as e:
            logger.warning(f"Suite {name} stopped early: {e}")
            yield CheckResult(suite=name, name="budget", status=INCONCLUSIVE, detail={"error": str(e)})
            return


def summarize(name: str, results: List[CheckResult]) -> VerifySummary:
    summary = VerifySummary(suite=name)
    for r in results:
        if r.status == PASS:
            summary.passed += 1
        elif r.status == FAIL:
            summary.failed += 1
        else:
            summary.inconclusive += 1
    return summary
