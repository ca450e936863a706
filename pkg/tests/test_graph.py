"""图核心模块测试"""
import pickle

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from eqdist.core.errors import DisconnectedGraphError, GraphDomainError
from eqdist.core.graph import (
    Graph,
    all_pairs_distances,
    chained_copies,
    complement,
    disjoint_union,
    exact_distance_power,
    induced_subgraph,
    join,
    power,
    subdivide,
)
from eqdist.core.named import complete, cycle, extended_star, path
from tests.conftest import connected_graphs


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphDomainError):
            Graph([[1, 0], [0, 0]])

    def test_rejects_asymmetric(self):
        with pytest.raises(GraphDomainError):
            Graph([[0, 1], [0, 0]])

    def test_rejects_empty(self):
        with pytest.raises(GraphDomainError):
            Graph(np.zeros((0, 0)))

    def test_edge_out_of_range(self):
        with pytest.raises(GraphDomainError):
            Graph.from_edges(3, [(0, 3)])

    def test_duplicate_edges_merge(self):
        g = Graph.from_edges(3, [(0, 1), (1, 0), (1, 2)])
        assert g.num_edges == 2
        assert g.edges() == [(0, 1), (1, 2)]

    def test_adjacency_is_readonly(self, petersen):
        with pytest.raises(ValueError):
            petersen.adjacency[0, 1] = False

    def test_networkx_round_trip(self, petersen):
        back = Graph.from_networkx(petersen.to_networkx())
        assert back == petersen

    def test_pickle_keeps_graph(self, petersen):
        all_pairs_distances(petersen)
        clone = pickle.loads(pickle.dumps(petersen))
        assert clone == petersen
        assert clone.name == petersen.name
        assert clone.cached("distances") is None

    def test_renamed_shares_adjacency(self, petersen):
        other = petersen.renamed("P")
        assert other.name == "P"
        assert other == petersen


class TestDistances:
    def test_petersen(self, petersen):
        dist = all_pairs_distances(petersen)
        assert dist.diam == 2
        assert dist.is_transmission_regular()
        assert set(dist.transmission.tolist()) == {15}

    def test_path(self):
        dist = all_pairs_distances(path(5))
        assert dist(0, 4) == 4
        assert dist.diam == 4
        assert not dist.is_transmission_regular()

    def test_single_vertex(self):
        dist = all_pairs_distances(Graph.empty(1))
        assert dist.diam == 0

    def test_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            all_pairs_distances(Graph.empty(3))

    @given(connected_graphs())
    def test_matches_networkx(self, g):
        expected = dict(nx.all_pairs_shortest_path_length(g.to_networkx()))
        d = all_pairs_distances(g).d
        for u in range(g.n):
            for v in range(g.n):
                assert d[u, v] == expected[u][v]

    @given(connected_graphs(min_order=2))
    def test_distance_one_is_adjacency(self, g):
        d = all_pairs_distances(g).d
        assert np.array_equal(d == 1, g.adjacency)
        assert np.array_equal(d, d.T)


class TestTransforms:
    def test_exact_distance_power_of_petersen_is_complement(self, petersen):
        assert exact_distance_power(petersen, 2) == complement(petersen)

    def test_exact_distance_power_beyond_diameter(self, petersen):
        assert exact_distance_power(petersen, 3).num_edges == 0

    def test_power_of_cycle(self):
        squared = power(cycle(6), 2)
        assert set(squared.degrees.tolist()) == {4}

    def test_power_rejects_zero(self, petersen):
        with pytest.raises(GraphDomainError):
            power(petersen, 0)

    def test_complement_of_c5(self):
        co = complement(cycle(5))
        assert co.num_edges == 5
        assert co.is_regular()

    def test_join(self):
        h = join(cycle(5), complete(5))
        assert h.n == 10
        assert h.num_edges == 5 + 10 + 25

    def test_disjoint_union_is_disconnected(self):
        assert not disjoint_union(path(2), path(3)).is_connected()

    def test_induced_subgraph(self, petersen):
        outer = induced_subgraph(petersen, [0, 1, 2, 3, 4])
        assert outer == cycle(5)

    def test_induced_subgraph_rejects_repeats(self, petersen):
        with pytest.raises(GraphDomainError):
            induced_subgraph(petersen, [0, 0])

    def test_subdivide_triangle(self):
        h, paths = subdivide(complete(3), 3)
        assert h.n == 9
        assert h.num_edges == 9
        assert paths[0] == [0, 3, 4, 1]
        assert all_pairs_distances(h).diam == 4

    def test_chained_copies(self):
        base = extended_star(4, 2)
        h = chained_copies(base, 3, 4)
        assert h.n == 3 * (7 + 4) - 4
        assert all_pairs_distances(h)(0, 11) == 5
        assert all_pairs_distances(h)(0, 22) == 10

    def test_chained_copies_needs_connected(self):
        with pytest.raises(DisconnectedGraphError):
            chained_copies(Graph.empty(2), 2, 1)
