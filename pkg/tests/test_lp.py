"""单纯形求解器测试"""
import numpy as np
import pytest

from eqdist.core.errors import ConvergenceError, LPDimensionError
from eqdist.core.lp import LPProblem, LPStatus, Relation, SimplexSolver, solve_lp


def test_textbook_maximum():
    problem = LPProblem(objective=[3, 5])
    problem.add([1, 0], Relation.LE, 4).add([0, 2], Relation.LE, 12).add([3, 2], Relation.LE, 18)
    outcome = solve_lp(problem)
    assert outcome.status is LPStatus.OPTIMAL
    assert outcome.objective == pytest.approx(36)
    assert outcome.x == pytest.approx([2, 6])


def test_minimum_with_ge_rows():
    problem = LPProblem(objective=[1, 1], maximize=False)
    problem.add([1, 2], Relation.GE, 4).add([3, 1], Relation.GE, 6)
    outcome = solve_lp(problem)
    assert outcome.status is LPStatus.OPTIMAL
    assert outcome.objective == pytest.approx(2.8)
    assert outcome.x == pytest.approx([1.6, 1.2])


def test_equality_row():
    problem = LPProblem(objective=[1, 2])
    problem.add([1, 1], Relation.EQ, 5).add([0, 1], Relation.LE, 2)
    outcome = solve_lp(problem)
    assert outcome.objective == pytest.approx(7)
    assert outcome.x == pytest.approx([3, 2])


def test_free_variable_goes_negative():
    problem = LPProblem(objective=[1], free=[True], maximize=False)
    problem.add([1], Relation.GE, -3)
    outcome = solve_lp(problem)
    assert outcome.status is LPStatus.OPTIMAL
    assert outcome.x == pytest.approx([-3])


def test_redundant_equalities():
    problem = LPProblem(objective=[1, 1])
    problem.add([1, 1], Relation.EQ, 2).add([2, 2], Relation.EQ, 4).add([1, 0], Relation.LE, 1.5)
    outcome = solve_lp(problem)
    assert outcome.status is LPStatus.OPTIMAL
    assert outcome.objective == pytest.approx(2)


def test_infeasible():
    problem = LPProblem(objective=[1])
    problem.add([1], Relation.GE, 2).add([1], Relation.LE, 1)
    assert solve_lp(problem).status is LPStatus.INFEASIBLE


def test_unbounded():
    problem = LPProblem(objective=[1, 0])
    problem.add([1, -1], Relation.LE, 1)
    assert solve_lp(problem).status is LPStatus.UNBOUNDED


def test_feasibility_only():
    problem = LPProblem(objective=[0, 0, 0], free=[True] * 3)
    problem.add([1, 1, 1], Relation.EQ, 0).add([1, 2, 4], Relation.LE, -1)
    outcome = solve_lp(problem)
    assert outcome.status is LPStatus.OPTIMAL
    x = outcome.x
    assert x[0] + x[1] + x[2] == pytest.approx(0, abs=1e-9)
    assert x[0] + 2 * x[1] + 4 * x[2] <= -1 + 1e-9


def test_degenerate_vertex_terminates():
    # 多个约束在原点处同时取等,Bland 规则保证终止
    problem = LPProblem(objective=[10, -57, -9, -24])
    problem.add([0.5, -5.5, -2.5, 9], Relation.LE, 0)
    problem.add([0.5, -1.5, -0.5, 1], Relation.LE, 0)
    problem.add([1, 0, 0, 0], Relation.LE, 1)
    outcome = solve_lp(problem)
    assert outcome.status is LPStatus.OPTIMAL
    assert outcome.objective == pytest.approx(1)


def test_dimension_mismatch():
    problem = LPProblem(objective=[1, 2])
    problem.add([1], Relation.LE, 1)
    with pytest.raises(LPDimensionError):
        solve_lp(problem)


def test_non_finite_coefficients():
    problem = LPProblem(objective=[float("inf")])
    with pytest.raises(LPDimensionError):
        solve_lp(problem)


def test_iteration_cap():
    problem = LPProblem(objective=[3, 5])
    problem.add([1, 0], Relation.LE, 4).add([0, 2], Relation.LE, 12).add([3, 2], Relation.LE, 18)
    with pytest.raises(ConvergenceError):
        SimplexSolver(max_iterations=1).solve(problem)


def _random_problem(rng):
    n = int(rng.integers(2, 6))
    free = [bool(f) for f in rng.random(n) < 0.3]
    problem = LPProblem(objective=rng.integers(-5, 6, size=n).tolist(), free=free, maximize=bool(rng.random() < 0.5))
    for _ in range(int(rng.integers(1, 6))):
        relation = [Relation.LE, Relation.GE, Relation.EQ][int(rng.choice(3, p=[0.5, 0.35, 0.15]))]
        problem.add(rng.integers(-4, 5, size=n).tolist(), relation, float(rng.integers(-6, 12)))
    for i, is_free in enumerate(free):
        if is_free:
            box = [0.0] * n
            box[i] = 1.0
            problem.add(box, Relation.LE, 10).add([-c for c in box], Relation.LE, 10)
    return problem


def test_agrees_with_highs():
    optimize = pytest.importorskip("scipy.optimize")
    rng = np.random.default_rng(11)
    sign = {True: -1.0, False: 1.0}
    for _ in range(60):
        problem = _random_problem(rng)
        le = [(c.coeffs, c.rhs) for c in problem.constraints if c.relation is Relation.LE]
        le += [(tuple(-v for v in c.coeffs), -c.rhs) for c in problem.constraints if c.relation is Relation.GE]
        eq = [(c.coeffs, c.rhs) for c in problem.constraints if c.relation is Relation.EQ]
        reference = optimize.linprog(
            sign[problem.maximize] * np.asarray(problem.objective, dtype=float),
            A_ub=[row for row, _ in le] or None,
            b_ub=[rhs for _, rhs in le] or None,
            A_eq=[row for row, _ in eq] or None,
            b_eq=[rhs for _, rhs in eq] or None,
            bounds=[(None, None) if f else (0, None) for f in problem.free],
            method="highs",
        )
        outcome = solve_lp(problem)
        assert reference.status in (0, 2, 3)
        if reference.status == 0:
            assert outcome.status is LPStatus.OPTIMAL, problem
            assert outcome.objective == pytest.approx(sign[problem.maximize] * reference.fun, abs=1e-6)
        else:
            assert outcome.status is not LPStatus.OPTIMAL, problem
