"""精确求解模块测试"""
import networkx as nx
import pytest
from hypothesis import given

from eqdist.core.errors import BudgetExceededError, GraphDomainError
from eqdist.core.exact import (
    alpha_t,
    distance_count_bound,
    eq,
    eq_omega_alpha_check,
    eq_t,
    gap_report,
    is_equidistant,
    is_t_independent,
    max_clique,
)
from eqdist.core.graph import Graph, all_pairs_distances
from eqdist.core.named import complete, cycle, extended_star, hypercube, johnson, path, star
from tests.conftest import connected_graphs


class TestMaxClique:
    def test_complete(self):
        result = max_clique(complete(6))
        assert result.value == 6
        assert result.witness == list(range(6))

    def test_petersen_is_triangle_free(self, petersen):
        assert max_clique(petersen).value == 2

    def test_single_vertex(self):
        assert max_clique(Graph.empty(1)).value == 1

    def test_budget(self):
        with pytest.raises(BudgetExceededError) as info:
            max_clique(complete(5), budget=1)
        assert info.value.budget == 1

    @given(connected_graphs(max_order=10))
    def test_matches_networkx(self, g):
        result = max_clique(g)
        expected = max(len(c) for c in nx.find_cliques(g.to_networkx()))
        assert result.value == expected
        witness = result.witness
        assert all(g.has_edge(u, v) for i, u in enumerate(witness) for v in witness[i + 1:])


class TestEquidistant:
    def test_petersen(self, petersen):
        assert eq_t(petersen, 1).value == 2
        result = eq_t(petersen, 2)
        assert result.value == 4
        assert result.t == 2
        assert is_equidistant(petersen, result.witness, 2)

    def test_beyond_diameter(self, petersen):
        result = eq_t(petersen, 5)
        assert result.value == 1
        assert result.witness == [0]

    def test_cycle(self):
        c6 = cycle(6)
        assert [eq_t(c6, t).value for t in (1, 2, 3)] == [2, 3, 2]
        assert eq(c6).value == 3
        assert eq(c6).t == 2

    def test_star_and_cube(self):
        assert eq(star(5)).value == 4
        assert eq_t(hypercube(3), 2).value == 4
        assert eq_t(hypercube(3), 3).value == 2

    def test_johnson_disjoint_triples(self):
        assert eq_t(johnson(7, 3), 3).value == 2
        assert eq_t(johnson(9, 3), 3).value == 3

    def test_complete_stops_at_diameter(self):
        result = eq(complete(5))
        assert result.value == 5
        assert result.evaluated == [1]

    def test_range_reduction_skips_large_t(self):
        g = path(6)
        full = eq(g, range_reduction=False)
        reduced = eq(g)
        assert full.value == reduced.value == 2
        assert full.evaluated == [1, 2, 3, 4, 5]
        assert len(reduced.evaluated) <= len(full.evaluated)

    def test_single_vertex(self):
        assert eq(Graph.empty(1)).value == 1

    @given(connected_graphs(max_order=8))
    def test_eq_is_max_over_t(self, g):
        diam = all_pairs_distances(g).diam
        values = [eq_t(g, t).value for t in range(1, diam + 1)] or [1]
        assert eq(g).value == max(values)


class TestIndependent:
    def test_petersen(self, petersen):
        result = alpha_t(petersen, 1)
        assert result.value == 4
        assert is_t_independent(petersen, result.witness, 1)
        assert alpha_t(petersen, 2).value == 1

    def test_extended_star_leaves(self):
        assert alpha_t(extended_star(6, 2), 3).value == 5

    def test_path(self):
        assert alpha_t(path(7), 2).value == 3


def test_witness_checks_reject_repeats(petersen):
    assert not is_equidistant(petersen, [0, 0], 0)


def test_distance_count_bound(petersen):
    assert distance_count_bound(petersen, 1) == 6
    assert distance_count_bound(petersen, 3) == 6
    assert distance_count_bound(petersen, 4) == 1


def test_omega_alpha_sandwich(petersen):
    check = eq_omega_alpha_check(petersen)
    assert (check.omega, check.alpha, check.eq, check.diam) == (2, 4, 4, 2)
    assert check.holds


@given(connected_graphs(max_order=8))
def test_sandwich_holds(g):
    assert eq_omega_alpha_check(g).holds


class TestGapReport:
    def test_extended_star(self):
        report = gap_report([extended_star(6, 2)], 4)
        row = report.rows[0]
        assert (row.alpha, row.eq, row.gap) == (5, 5, 0)
        assert report.max_gap == 0

    def test_error_rows_do_not_stop_the_stream(self):
        report = gap_report([Graph.empty(2, name="two isolated"), cycle(6)], 2)
        assert report.rows[0].error is not None
        assert report.rows[1].gap == 0
        assert report.max_gap == 0

    def test_needs_t_at_least_two(self):
        with pytest.raises(GraphDomainError):
            gap_report([cycle(5)], 1)
