"""
测试公共设施
常用命名图夹具与随机连通图的 hypothesis 策略
"""
import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from eqdist.core.graph import Graph
from eqdist.core.named import resolve_graph

settings.register_profile(
    "eqdist",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("eqdist")


@st.composite
def connected_graphs(draw, min_order: int = 1, max_order: int = 9):
    """随机生成树加任意额外边"""
    n = draw(st.integers(min_order, max_order))
    adj = np.zeros((n, n), dtype=bool)
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        adj[u, v] = adj[v, u] = True
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if pairs:
        extra = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs)))
        for u, v in extra:
            adj[u, v] = adj[v, u] = True
    return Graph(adj, name=f"hyp{n}")


@pytest.fixture
def petersen() -> Graph:
    return resolve_graph("petersen")


@pytest.fixture
def heawood() -> Graph:
    return resolve_graph("heawood")
