"""
图核心模块
无向简单图、全源最短路距离矩阵与本项目用到的全部图变换
"""
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from loguru import logger

from eqdist.core.errors import DisconnectedGraphError, GraphDomainError


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class Graph:
    """
    无向简单图

    顶点为 0..n-1,邻接关系保存为只读的 n×n 布尔矩阵。
    对象构造后不可变;距离矩阵、谱等派生量缓存在对象内部。
    """

    __slots__ = ("_adj", "name", "_cache")

    def __init__(self, adjacency: Any, name: str = "G"):
        adj = np.array(adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise GraphDomainError(f"adjacency must be a square matrix, got shape {adj.shape}")
        if adj.shape[0] < 1:
            raise GraphDomainError("a graph needs at least one vertex")
        if adj.diagonal().any():
            raise GraphDomainError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise GraphDomainError("adjacency must be symmetric")

        self._adj = _readonly(adj)
        self.name = name
        self._cache: Dict[str, Any] = {}

    # ---- 构造 ----

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], name: str = "G") -> "Graph":
        """
        由边表构造

        Args:
            n: 顶点数
            edges: (u, v) 边序列,重复边会被合并

        Returns:
            图对象
        """
        if n < 1:
            raise GraphDomainError(f"vertex count must be positive, got {n}")
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphDomainError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphDomainError(f"self-loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls(adj, name=name)

    @classmethod
    def empty(cls, n: int, name: Optional[str] = None) -> "Graph":
        """n 个孤立顶点"""
        if n < 1:
            raise GraphDomainError(f"vertex count must be positive, got {n}")
        return cls(np.zeros((n, n), dtype=bool), name=name or f"E{n}")

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph, name: Optional[str] = None) -> "Graph":
        """由 networkx 图构造,顶点按 nx_graph.nodes() 的顺序重新编号为 0..n-1"""
        nodes = list(nx_graph.nodes())
        matrix = nx.to_numpy_array(nx_graph, nodelist=nodes, weight=None, dtype=float)
        np.fill_diagonal(matrix, 0)
        return cls(matrix > 0, name=name or str(nx_graph.name or "G"))

    def to_networkx(self) -> nx.Graph:
        """转换为 networkx 图"""
        nx_graph = nx.Graph(name=self.name)
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    def renamed(self, name: str) -> "Graph":
        """同一邻接关系,新名称"""
        g = Graph.__new__(Graph)
        g._adj = self._adj
        g.name = name
        g._cache = self._cache
        return g

    # ---- 基本属性 ----

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        """只读布尔邻接矩阵"""
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def edges(self) -> List[Tuple[int, int]]:
        """按 (u, v), u < v 的字典序列出全部边"""
        us, vs = np.nonzero(np.triu(self._adj, 1))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    @property
    def num_edges(self) -> int:
        return int(self._adj.sum()) // 2

    @property
    def degrees(self) -> np.ndarray:
        if "degrees" not in self._cache:
            self._cache["degrees"] = _readonly(self._adj.sum(axis=1).astype(np.int64))
        return self._cache["degrees"]

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max())

    def is_regular(self) -> bool:
        return bool((self.degrees == self.degrees[0]).all())

    def neighbors(self, v: int) -> List[int]:
        return [int(u) for u in np.flatnonzero(self._adj[v])]

    def neighbor_bitsets(self) -> List[int]:
        """每个顶点的邻域,以 Python 整数位集表示(第 u 位 = 与 u 相邻)"""
        if "bitsets" not in self._cache:
            bitsets = []
            for row in self._adj:
                mask = 0
                for u in np.flatnonzero(row):
                    mask |= 1 << int(u)
                bitsets.append(mask)
            self._cache["bitsets"] = bitsets
        return self._cache["bitsets"]

    def is_connected(self) -> bool:
        if "connected" not in self._cache:
            seen = np.zeros(self.n, dtype=bool)
            seen[0] = True
            frontier = seen.copy()
            while frontier.any():
                frontier = self._adj[frontier].any(axis=0) & ~seen
                seen |= frontier
            self._cache["connected"] = bool(seen.all())
        return self._cache["connected"]

    def require_connected(self, operation: str) -> None:
        if not self.is_connected():
            raise DisconnectedGraphError(f"{operation} requires a connected graph, {self.name} is disconnected")

    def cached(self, key: str) -> Any:
        return self._cache.get(key)

    def store(self, key: str, value: Any) -> Any:
        self._cache[key] = value
        return value

    # ---- 比较 ----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._adj, other._adj)

    def __hash__(self) -> int:
        return hash((self.n, np.packbits(self._adj).tobytes()))

    def __getstate__(self):
        return {"adj": self._adj, "name": self.name}

    def __setstate__(self, state):
        self._adj = _readonly(np.array(state["adj"], dtype=bool))
        self.name = state["name"]
        self._cache = {}

    def __repr__(self) -> str:
        return f"Graph(name={self.name!r}, n={self.n}, m={self.num_edges})"


class DistanceMatrix:
    """连通图的全源最短路距离"""

    __slots__ = ("d", "diam", "transmission")

    def __init__(self, d: np.ndarray):
        self.d = _readonly(np.array(d, dtype=np.int64))
        self.diam = int(self.d.max())
        self.transmission = _readonly(self.d.sum(axis=1))

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def is_transmission_regular(self) -> bool:
        return bool((self.transmission == self.transmission[0]).all())

    def __call__(self, u: int, v: int) -> int:
        return int(self.d[u, v])

    def __repr__(self) -> str:
        return f"DistanceMatrix(n={self.n}, diam={self.diam})"


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """
    全源 BFS 距离

    所有源点同时推进:第 k 轮的前沿矩阵与邻接矩阵相乘得到距离为 k+1 的点对。

    Args:
        g: 连通图

    Returns:
        距离矩阵
    """
    cached = g.cached("distances")
    if cached is not None:
        return cached
    g.require_connected("all_pairs_distances")

    n = g.n
    adj = g.adjacency.astype(np.float64)
    dist = np.zeros((n, n), dtype=np.int64)
    reached = np.eye(n, dtype=bool)
    frontier = np.eye(n, dtype=np.float64)
    k = 0
    while not reached.all():
        k += 1
        step = (frontier @ adj > 0) & ~reached
        dist[step] = k
        reached |= step
        frontier = step.astype(np.float64)

    result = DistanceMatrix(dist)
    logger.debug(f"Distances of {g.name}: n={n}, diam={result.diam}")
    return g.store("distances", result)


def _require_positive(t: int, what: str = "t") -> None:
    if int(t) != t or t < 1:
        raise GraphDomainError(f"{what} must be a positive integer, got {t}")


def exact_distance_power(g: Graph, t: int) -> Graph:
    """G^[#t]: 同一顶点集,距离恰为 t 的点对相邻"""
    _require_positive(t)
    key = f"exact_power:{t}"
    cached = g.cached(key)
    if cached is not None:
        return cached
    d = all_pairs_distances(g).d
    return g.store(key, Graph(d == t, name=f"{g.name}^[#{t}]"))


def power(g: Graph, t: int) -> Graph:
    """G^t: 距离在 1..t 之间的点对相邻"""
    _require_positive(t)
    d = all_pairs_distances(g).d
    return Graph((d >= 1) & (d <= t), name=f"{g.name}^{t}")


def complement(g: Graph) -> Graph:
    adj = ~g.adjacency
    np.fill_diagonal(adj, False)
    return Graph(adj, name=f"co-{g.name}")


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """G + H,H 的顶点编号整体平移 g.n"""
    n = g.n + h.n
    adj = np.zeros((n, n), dtype=bool)
    adj[: g.n, : g.n] = g.adjacency
    adj[g.n:, g.n:] = h.adjacency
    return Graph(adj, name=f"{g.name}+{h.name}")


def join(g: Graph, h: Graph) -> Graph:
    """G ∇ H: 不交并加上全部跨边"""
    adj = np.array(disjoint_union(g, h).adjacency)
    adj[: g.n, g.n:] = True
    adj[g.n:, : g.n] = True
    return Graph(adj, name=f"{g.name}∇{h.name}")


def induced_subgraph(g: Graph, vertices: Sequence[int], name: Optional[str] = None) -> Graph:
    """按给定顺序重新编号的导出子图"""
    idx = np.asarray(list(vertices), dtype=np.int64)
    if idx.size == 0:
        raise GraphDomainError("induced subgraph needs at least one vertex")
    if len(set(idx.tolist())) != idx.size:
        raise GraphDomainError("induced subgraph vertices must be distinct")
    return Graph(g.adjacency[np.ix_(idx, idx)], name=name or f"{g.name}[{idx.size}]")


def subdivide(g: Graph, t: int) -> Tuple[Graph, List[List[int]]]:
    """
    把每条边替换成长度为 t 的路径

    边 (u, v), u < v 的 t-1 个内部顶点按从 u 到 v 的顺序追加在原顶点之后,
    各边按 g.edges() 的顺序依次编号。

    Returns:
        (细分图, 每条边的完整路径 [u, 内部顶点..., v])
    """
    _require_positive(t)
    edges = g.edges()
    n = g.n + (t - 1) * len(edges)
    new_edges = []
    paths = []
    next_vertex = g.n
    for u, v in edges:
        path = [u] + list(range(next_vertex, next_vertex + t - 1)) + [v]
        next_vertex += t - 1
        new_edges.extend(zip(path, path[1:]))
        paths.append(path)
    return Graph.from_edges(n, new_edges, name=f"S{t}({g.name})"), paths


def chained_copies(g: Graph, m: int, t: int) -> Graph:
    """
    m 份 G 排成一列,相邻两份的锚点(各自的顶点 0)之间用一条新路径连接

    每条连接路径含 t 个新顶点,两锚点相距 t+1,总顶点数 m(n+t)-t;
    第 i 份的顶点 v 编号为 i(n+t)+v,其后紧跟第 i 条连接路径的 t 个顶点。
    """
    _require_positive(m, "m")
    _require_positive(t)
    g.require_connected("chained_copies")

    n = g.n
    block = n + t
    total = m * block - t
    base_edges = g.edges()
    edges = []
    for i in range(m):
        offset = i * block
        edges.extend((offset + u, offset + v) for u, v in base_edges)
        if i < m - 1:
            path = [offset] + list(range(offset + n, offset + n + t)) + [offset + block]
            edges.extend(zip(path, path[1:]))
    return Graph.from_edges(total, edges, name=f"H({g.name},{m},{t})")
