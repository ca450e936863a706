"""验证套件测试"""
import numpy as np
import pytest

from eqdist.core.verifier import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    CheckResult,
    VerifySettings,
    random_connected_graph,
    run_suite,
    summarize,
)


@pytest.fixture
def small_settings() -> VerifySettings:
    return VerifySettings(
        seed=7,
        gadget_graphs=3,
        gadget_max_order=6,
        relation_graphs=8,
        relation_max_order=7,
        numerics_matrices=5,
        numerics_max_order=12,
    )


def test_random_graphs_are_connected():
    rng = np.random.default_rng(1)
    for n in range(1, 10):
        g = random_connected_graph(rng, n, 0.2)
        assert g.n == n
        assert g.is_connected()


def test_summarize():
    results = [
        CheckResult(suite="s", name="a", status=PASS),
        CheckResult(suite="s", name="b", status=FAIL),
        CheckResult(suite="s", name="c", status=INCONCLUSIVE),
        CheckResult(suite="s", name="d", status=PASS),
    ]
    summary = summarize("s", results)
    assert (summary.passed, summary.failed, summary.inconclusive) == (2, 1, 1)
    assert not summary.ok


@pytest.mark.parametrize("name", ["gadgets", "relations", "numerics", "gap"])
def test_suite_passes(name, small_settings):
    results = list(run_suite(name, small_settings))
    assert results
    assert all(r.suite == name for r in results)
    assert summarize(name, results).failed == 0


@pytest.mark.slow
@pytest.mark.parametrize("name", ["johnson", "soundness", "optimizer"])
def test_named_graph_suites_pass(name, small_settings):
    results = list(run_suite(name, small_settings))
    summary = summarize(name, results)
    assert summary.passed > 0
    assert (summary.failed, summary.inconclusive) == (0, 0), [r.name for r in results if r.status != PASS]


@pytest.mark.slow
def test_johnson_suite_covers_both_families(small_settings):
    names = [r.name for r in run_suite("johnson", small_settings)]
    assert [n for n in names if n.endswith("t=3")] == [f"J({n},3) t=3" for n in range(7, 13)]
    assert [n for n in names if n.endswith("t=4")] == [f"J({n},4) t=4" for n in range(9, 13)]


def test_relations_is_deterministic(small_settings):
    first = [r.detail for r in run_suite("relations", small_settings)]
    second = [r.detail for r in run_suite("relations", small_settings)]
    assert first == second


def test_budget_makes_suite_inconclusive(small_settings):
    settings = small_settings.model_copy(update={"budget": 1, "relation_max_order": 4})
    results = list(run_suite("relations", settings))
    assert results[-1].status == INCONCLUSIVE
    assert results[-1].name == "budget"


def test_unknown_suite():
    with pytest.raises(KeyError):
        list(run_suite("nope"))
