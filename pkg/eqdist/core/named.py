"""
命名图构造器
内置构造器优先,其余命名图从 data/named 下的 graph6 目录读取

规范编号:
    complete / cycle / path     0..n-1,环与路按编号顺序相连
    star S_n                    中心为 0,叶子 1..n-1
    extended_star ES(n, m)      中心为 0,第 k 条路(k=0..n-2)上距中心 j 的顶点编号 1+k·m+(j-1)
    hypercube Q_d               顶点为 0..2^d-1 的二进制计数,相差一位的相邻
    johnson J(n, k)             k-子集按 colex 顺序编号,交集大小 k-1 的相邻
    kneser K(n, k)              k-子集按 colex 顺序编号,不相交的相邻
    generalized_petersen GP(n,k) 外圈 0..n-1,内圈 n..2n-1,辐条 i–n+i,内圈 n+i–n+(i+k)
    其余命名图沿用 networkx 生成器或下文各构造函数注释中的编号
"""
import itertools
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from loguru import logger

from eqdist.core.errors import CatalogError, GraphDomainError
from eqdist.core.graph import Graph, induced_subgraph


class NamedGraphId(str, Enum):
    """内置构造器"""

    COMPLETE = "complete"
    CYCLE = "cycle"
    PATH = "path"
    STAR = "star"
    EXTENDED_STAR = "extended_star"
    HYPERCUBE = "hypercube"
    JOHNSON = "johnson"
    KNESER = "kneser"
    GENERALIZED_PETERSEN = "generalized_petersen"
    CIRCULANT = "circulant"
    LCF = "lcf"
    PETERSEN = "petersen"
    HEAWOOD = "heawood"
    THOMSEN = "thomsen"
    HEXAHEDRON = "hexahedron"
    OCTAHEDRON = "octahedron"
    ICOSAHEDRON = "icosahedron"
    DODECAHEDRON = "dodecahedron"
    DESARGUES = "desargues"
    PAPPUS = "pappus"
    MOEBIUS_KANTOR = "moebius_kantor"
    FRUCHT = "frucht"
    TRUNCATED_TETRAHEDRON = "truncated_tetrahedron"
    GROTZSCH = "grotzsch"
    CHVATAL = "chvatal"
    KRACKHARDT_KITE = "krackhardt_kite"
    HOFFMAN_SINGLETON = "hoffman_singleton"
    COXETER = "coxeter"
    NAURU = "nauru"
    DURER = "durer"
    WAGNER = "wagner"
    MOSER_SPINDLE = "moser_spindle"
    TIETZE = "tietze"
    FRANKLIN = "franklin"
    BIDIAKIS = "bidiakis"
    DYCK = "dyck"
    MCGEE = "mcgee"
    TUTTE_COXETER = "tutte_coxeter"
    F26A = "f26a"
    FOLKMAN = "folkman"
    FOSTER = "foster"
    GOSSET = "gosset"
    SHRIKHANDE = "shrikhande"
    CLEBSCH = "clebsch"
    SCHLAEFLI = "schlaefli"
    HIGMAN_SIMS = "higman_sims"
    M22 = "m22"
    SIMS_GEWIRTZ = "sims_gewirtz"


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise GraphDomainError(message)


def _from_nx(nx_graph: nx.Graph, name: str) -> Graph:
    return Graph.from_networkx(nx.convert_node_labels_to_integers(nx_graph, ordering="sorted"), name=name)


def _colex_subsets(n: int, k: int) -> List[Tuple[int, ...]]:
    return sorted(itertools.combinations(range(n), k), key=lambda s: tuple(reversed(s)))


# ---- 参数化族 ----

def complete(n: int) -> Graph:
    _check(n >= 1, f"K_n needs n >= 1, got {n}")
    adj = ~np.eye(n, dtype=bool)
    return Graph(adj, name=f"K{n}")


def cycle(n: int) -> Graph:
    _check(n >= 3, f"C_n needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def path(n: int) -> Graph:
    _check(n >= 1, f"P_n needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def star(n: int) -> Graph:
    """n 个顶点的星 S_n,中心为 0"""
    _check(n >= 1, f"S_n needs n >= 1, got {n}")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)], name=f"S{n}")


def extended_star(n: int, m: int) -> Graph:
    """
    ES(n, m): 中心挂 n-1 条长度为 m 的路,共 (n-1)m+1 个顶点
    """
    _check(n >= 1 and m >= 1, f"ES(n, m) needs n >= 1 and m >= 1, got ({n}, {m})")
    edges = []
    for k in range(n - 1):
        prev = 0
        for j in range(1, m + 1):
            v = 1 + k * m + (j - 1)
            edges.append((prev, v))
            prev = v
    return Graph.from_edges((n - 1) * m + 1, edges, name=f"ES({n},{m})")


def hypercube(d: int) -> Graph:
    _check(d >= 0, f"Q_d needs d >= 0, got {d}")
    n = 1 << d
    edges = [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)]
    return Graph.from_edges(n, edges, name=f"Q{d}")


def johnson(n: int, k: int) -> Graph:
    """J(n, k): k-子集,交集大小为 k-1 时相邻"""
    _check(1 <= k < n, f"J(n, k) needs 1 <= k < n, got ({n}, {k})")
    subsets = [frozenset(s) for s in _colex_subsets(n, k)]
    masks = np.array([[i in s for i in range(n)] for s in subsets], dtype=np.int64)
    inter = masks @ masks.T
    return Graph(inter == k - 1, name=f"J({n},{k})")


def kneser(n: int, k: int) -> Graph:
    """K(n, k): k-子集,不相交时相邻(n >= 2k+1 时连通)"""
    _check(k >= 1 and n >= 2 * k + 1, f"K(n, k) is connected only for n >= 2k+1, got ({n}, {k})")
    masks = np.array([[i in s for i in range(n)] for s in _colex_subsets(n, k)], dtype=np.int64)
    return Graph(masks @ masks.T == 0, name=f"K({n},{k})")


def generalized_petersen(n: int, k: int) -> Graph:
    _check(n >= 3 and 1 <= k and 2 * k < n, f"GP(n, k) needs n >= 3 and 1 <= k < n/2, got ({n}, {k})")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((i, n + i))
        edges.append((n + i, n + (i + k) % n))
    return Graph.from_edges(2 * n, edges, name=f"GP({n},{k})")


def circulant(n: int, offsets: Sequence[int]) -> Graph:
    _check(n >= 2, f"circulant graph needs n >= 2, got {n}")
    edges = [(i, (i + s) % n) for i in range(n) for s in offsets if s % n != 0]
    g = Graph.from_edges(n, edges, name=f"Ci{n}({','.join(map(str, offsets))})")
    _check(g.is_connected(), f"circulant graph C_{n}{tuple(offsets)} is disconnected")
    return g


def lcf(n: int, shifts: Sequence[int], repeats: int, name: Optional[str] = None) -> Graph:
    """LCF 记号: n 点 Hamilton 圈,顶点 i 另连 i+shifts[i mod len]"""
    _check(n >= 3 and repeats >= 1, f"invalid LCF parameters n={n}, repeats={repeats}")
    _check(len(shifts) * repeats == n, f"LCF shifts x repeats must cover {n} vertices")
    edges = [(i, (i + 1) % n) for i in range(n)]
    for i in range(n):
        edges.append((i, (i + shifts[i % len(shifts)]) % n))
    return Graph.from_edges(n, edges, name=name or f"LCF{list(shifts)}^{repeats}")


# ---- 单个命名图 ----

def coxeter() -> Graph:
    """Fano 平面(直线 {i, i+1, i+3} mod 7)的 28 个非直线三元组,不相交者相邻"""
    lines = {frozenset({i, (i + 1) % 7, (i + 3) % 7}) for i in range(7)}
    triples = [frozenset(s) for s in _colex_subsets(7, 3) if frozenset(s) not in lines]
    edges = [(a, b) for a, b in itertools.combinations(range(len(triples)), 2) if not triples[a] & triples[b]]
    return Graph.from_edges(len(triples), edges, name="Coxeter graph")


def moser_spindle() -> Graph:
    """两个共顶点 0 的菱形 (0,1,2,3) 与 (0,4,5,6),尖端 3–6 相连"""
    edges = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (4, 5), (4, 6), (5, 6), (3, 6)]
    return Graph.from_edges(7, edges, name="Moser spindle")


def tietze() -> Graph:
    """Petersen 图的顶点 0 换成三角形 (0, 10, 11),三个旧邻点各连三角形的一个顶点"""
    petersen = nx.petersen_graph()
    a, b, c = sorted(petersen.neighbors(0))
    edges = [(u, v) for u, v in petersen.edges() if 0 not in (u, v)]
    edges += [(0, a), (10, b), (11, c), (0, 10), (10, 11), (0, 11)]
    return Graph.from_edges(12, edges, name="Tietze Graph")


def gosset() -> Graph:
    """
    {0..7} 的 2-子集各取两份(0..27 与 28..55,同序);
    同一份中恰有一个公共元的相邻,不同份中不相交的相邻
    """
    pairs = [frozenset(p) for p in _colex_subsets(8, 2)]
    size = len(pairs)
    adj = np.zeros((2 * size, 2 * size), dtype=bool)
    for i, p in enumerate(pairs):
        for j, q in enumerate(pairs):
            common = len(p & q)
            if common == 1:
                adj[i, j] = adj[size + i, size + j] = True
            elif common == 0:
                adj[i, size + j] = adj[size + j, i] = True
    return Graph(adj, name="Gosset Graph")


def shrikhande() -> Graph:
    """Z4 x Z4,差为 ±(1,0), ±(0,1), ±(1,1);顶点 (a, b) 编号 4a+b"""
    steps = [(1, 0), (0, 1), (1, 1)]
    edges = []
    for a, b in itertools.product(range(4), repeat=2):
        for da, db in steps:
            edges.append((4 * a + b, 4 * ((a + da) % 4) + (b + db) % 4))
    return Graph.from_edges(16, edges, name="Shrikhande graph")


def clebsch() -> Graph:
    """折叠 5-立方体: Z2^4,差为单位向量或全 1 向量"""
    gens = [1, 2, 4, 8, 15]
    edges = [(v, v ^ s) for v in range(16) for s in gens if v < v ^ s]
    return Graph.from_edges(16, edges, name="Clebsch graph")


def schlaefli() -> Graph:
    """
    三次曲面上 27 条直线,异面者相邻
    编号: a_i = i, b_i = 6+i (i=0..5),c_ij 按 colex 顺序为 12..26
    """
    pairs = [frozenset(p) for p in _colex_subsets(6, 2)]
    lines: List[Tuple[str, object]] = [("a", i) for i in range(6)] + [("b", i) for i in range(6)]
    lines += [("c", p) for p in pairs]

    def meet(x, y) -> bool:
        (kx, vx), (ky, vy) = x, y
        if kx == ky == "c":
            return not vx & vy
        if kx == "c" or ky == "c":
            (_, single), (_, pair) = (x, y) if ky == "c" else (y, x)
            return single in pair
        return kx != ky and vx != vy

    edges = [(i, j) for i, j in itertools.combinations(range(27), 2) if not meet(lines[i], lines[j])]
    return Graph.from_edges(27, edges, name="Schläfli graph")


# GF(4) = {0, 1, w, w^2} 编码为 0..3,加法为异或
_GF4_EXP = (1, 2, 3)
_GF4_LOG = {1: 0, 2: 1, 3: 2}


def _gf4_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return _GF4_EXP[(_GF4_LOG[a] + _GF4_LOG[b]) % 3]


@lru_cache(maxsize=1)
def _steiner_22() -> Tuple[int, Tuple[frozenset, ...]]:
    """
    S(3,6,22): PG(2,4) 的 21 个点加无穷远点 21;
    区组为每条直线加无穷远点(21 个)与一类超卵形(56 个)
    """
    vectors = [v for v in itertools.product(range(4), repeat=3) if any(v)]
    points = [v for v in vectors if v[next(i for i in range(3) if v[i])] == 1]

    def dot(x, y) -> int:
        acc = 0
        for a, b in zip(x, y):
            acc ^= _gf4_mul(a, b)
        return acc

    line_masks = []
    for line in points:
        mask = 0
        for idx, p in enumerate(points):
            if dot(line, p) == 0:
                mask |= 1 << idx
        line_masks.append(mask)

    def no_three_collinear(mask: int) -> bool:
        return all(bin(mask & lm).count("1") <= 2 for lm in line_masks)

    hyperovals = []

    def extend(chosen: int, start: int, size: int) -> None:
        if size == 6:
            hyperovals.append(chosen)
            return
        for p in range(start, len(points)):
            candidate = chosen | (1 << p)
            if no_three_collinear(candidate):
                extend(candidate, p + 1, size + 1)

    extend(0, 0, 0)
    first = hyperovals[0]
    same_class = [h for h in hyperovals if bin(h & first).count("1") % 2 == 0]

    infinity = len(points)
    blocks = [frozenset(i for i in range(infinity) if lm >> i & 1) | {infinity} for lm in line_masks]
    blocks += [frozenset(i for i in range(infinity) if h >> i & 1) for h in same_class]
    logger.debug(f"S(3,6,22): {len(hyperovals)} hyperovals, {len(blocks)} blocks")
    return infinity + 1, tuple(blocks)


def higman_sims() -> Graph:
    """
    编号: 0 为额外顶点,1..22 为 S(3,6,22) 的点,23..99 为区组;
    额外顶点连全部点,点连包含它的区组,不相交的区组相邻
    """
    npoints, blocks = _steiner_22()
    n = 1 + npoints + len(blocks)
    adj = np.zeros((n, n), dtype=bool)
    adj[0, 1:1 + npoints] = True
    for b_idx, block in enumerate(blocks):
        bv = 1 + npoints + b_idx
        for p in block:
            adj[1 + p, bv] = True
        for c_idx in range(b_idx + 1, len(blocks)):
            if not block & blocks[c_idx]:
                adj[bv, 1 + npoints + c_idx] = True
    adj |= adj.T
    return Graph(adj, name="Higman-Sims graph")


def m22() -> Graph:
    """S(3,6,22) 的 77 个区组,不相交者相邻"""
    _, blocks = _steiner_22()
    size = len(blocks)
    adj = np.array([[i != j and not blocks[i] & blocks[j] for j in range(size)] for i in range(size)])
    return Graph(adj, name="M22 Graph")


def sims_gewirtz() -> Graph:
    """不含无穷远点的 56 个区组,不相交者相邻"""
    npoints, blocks = _steiner_22()
    infinity = npoints - 1
    keep = [i for i, b in enumerate(blocks) if infinity not in b]
    return induced_subgraph(m22(), keep, name="Sims-Gewirtz Graph")


_FAMILIES: Dict[NamedGraphId, Callable[..., Graph]] = {
    NamedGraphId.COMPLETE: complete,
    NamedGraphId.CYCLE: cycle,
    NamedGraphId.PATH: path,
    NamedGraphId.STAR: star,
    NamedGraphId.EXTENDED_STAR: extended_star,
    NamedGraphId.HYPERCUBE: hypercube,
    NamedGraphId.JOHNSON: johnson,
    NamedGraphId.KNESER: kneser,
    NamedGraphId.GENERALIZED_PETERSEN: generalized_petersen,
    NamedGraphId.CIRCULANT: circulant,
    NamedGraphId.LCF: lcf,
}

_SPORADIC: Dict[NamedGraphId, Callable[[], Graph]] = {
    NamedGraphId.PETERSEN: lambda: _from_nx(nx.petersen_graph(), "Petersen graph"),
    NamedGraphId.HEAWOOD: lambda: _from_nx(nx.heawood_graph(), "Heawood graph"),
    NamedGraphId.THOMSEN: lambda: _from_nx(nx.complete_bipartite_graph(3, 3), "Thomsen graph"),
    NamedGraphId.HEXAHEDRON: lambda: hypercube(3).renamed("Hexahedron"),
    NamedGraphId.OCTAHEDRON: lambda: _from_nx(nx.octahedral_graph(), "Octahedron"),
    NamedGraphId.ICOSAHEDRON: lambda: _from_nx(nx.icosahedral_graph(), "Icosahedron"),
    NamedGraphId.DODECAHEDRON: lambda: _from_nx(nx.dodecahedral_graph(), "Dodecahedron"),
    NamedGraphId.DESARGUES: lambda: _from_nx(nx.desargues_graph(), "Desargues Graph"),
    NamedGraphId.PAPPUS: lambda: _from_nx(nx.pappus_graph(), "Pappus Graph"),
    NamedGraphId.MOEBIUS_KANTOR: lambda: _from_nx(nx.moebius_kantor_graph(), "Moebius-Kantor Graph"),
    NamedGraphId.FRUCHT: lambda: _from_nx(nx.frucht_graph(), "Frucht graph"),
    NamedGraphId.TRUNCATED_TETRAHEDRON: lambda: _from_nx(nx.truncated_tetrahedron_graph(), "Truncated Tetrahedron"),
    NamedGraphId.GROTZSCH: lambda: _from_nx(nx.mycielski_graph(4), "Grotzsch graph"),
    NamedGraphId.CHVATAL: lambda: _from_nx(nx.chvatal_graph(), "Chvatal Graph"),
    NamedGraphId.KRACKHARDT_KITE: lambda: _from_nx(nx.krackhardt_kite_graph(), "Krackhardt Kite Graph"),
    NamedGraphId.HOFFMAN_SINGLETON: lambda: _from_nx(nx.hoffman_singleton_graph(), "Hoffman-Singleton graph"),
    NamedGraphId.COXETER: coxeter,
    NamedGraphId.NAURU: lambda: generalized_petersen(12, 5).renamed("Nauru Graph"),
    NamedGraphId.DURER: lambda: generalized_petersen(6, 2).renamed("Durer graph"),
    NamedGraphId.WAGNER: lambda: circulant(8, [1, 4]).renamed("Wagner Graph"),
    NamedGraphId.MOSER_SPINDLE: moser_spindle,
    NamedGraphId.TIETZE: tietze,
    NamedGraphId.FRANKLIN: lambda: lcf(12, [5, -5], 6, name="Franklin Graph"),
    NamedGraphId.BIDIAKIS: lambda: lcf(12, [6, 4, -4], 4, name="Bidiakis cube"),
    NamedGraphId.DYCK: lambda: lcf(32, [5, -5, 13, -13], 8, name="Dyck graph"),
    NamedGraphId.MCGEE: lambda: lcf(24, [12, 7, -7], 8, name="McGee graph"),
    NamedGraphId.TUTTE_COXETER: lambda: lcf(30, [-13, -9, 7, -7, 9, 13], 5, name="Tutte-Coxeter graph"),
    NamedGraphId.F26A: lambda: lcf(26, [-7, 7], 13, name="F26A Graph"),
    NamedGraphId.FOLKMAN: lambda: lcf(20, [5, -7, -7, 5], 5, name="Folkman Graph"),
    NamedGraphId.FOSTER: lambda: lcf(90, [17, -9, 37, -37, 9, -17], 15, name="Foster Graph"),
    NamedGraphId.GOSSET: gosset,
    NamedGraphId.SHRIKHANDE: shrikhande,
    NamedGraphId.CLEBSCH: clebsch,
    NamedGraphId.SCHLAEFLI: schlaefli,
    NamedGraphId.HIGMAN_SIMS: higman_sims,
    NamedGraphId.M22: m22,
    NamedGraphId.SIMS_GEWIRTZ: sims_gewirtz,
}

# 命令行短名前缀: j_7_3 -> johnson(7, 3)
_PREFIXES: Dict[str, NamedGraphId] = {
    "k": NamedGraphId.COMPLETE,
    "c": NamedGraphId.CYCLE,
    "p": NamedGraphId.PATH,
    "s": NamedGraphId.STAR,
    "es": NamedGraphId.EXTENDED_STAR,
    "q": NamedGraphId.HYPERCUBE,
    "j": NamedGraphId.JOHNSON,
    "gp": NamedGraphId.GENERALIZED_PETERSEN,
}

_ALIASES: Dict[str, NamedGraphId] = {
    "k33": NamedGraphId.THOMSEN,
    "cube": NamedGraphId.HEXAHEDRON,
    "mobius_kantor": NamedGraphId.MOEBIUS_KANTOR,
    "groetzsch": NamedGraphId.GROTZSCH,
    "dürer": NamedGraphId.DURER,
    "gewirtz": NamedGraphId.SIMS_GEWIRTZ,
}


def construct(graph_id: Union[NamedGraphId, str], *params) -> Graph:
    """
    构造命名图

    Args:
        graph_id: 构造器标识
        *params: 参数化族的参数,例如 construct("johnson", 7, 3)

    Returns:
        按模块文档中编号约定标号的图

    Raises:
        GraphDomainError: 参数不合法
    """
    try:
        gid = NamedGraphId(graph_id)
    except ValueError as e:
        raise GraphDomainError(f"unknown graph constructor: {graph_id}") from e

    if gid in _FAMILIES:
        try:
            return _FAMILIES[gid](*params)
        except TypeError as e:
            raise GraphDomainError(f"bad parameters for {gid.value}: {params}") from e
    if params:
        raise GraphDomainError(f"{gid.value} takes no parameters, got {params}")
    return _SPORADIC[gid]()


# ---- 目录 ----

class GraphCatalog:
    """data/named 下的 graph6 目录: named.g6 每行一个图,index.txt 为 “名称 行号”"""

    def __init__(self, catalog_dir: Union[str, Path]):
        self.catalog_dir = Path(catalog_dir)
        self._index: Optional[Dict[str, Tuple[int, str]]] = None

    def _load(self) -> Dict[str, Tuple[int, str]]:
        if self._index is not None:
            return self._index
        index_path = self.catalog_dir / "index.txt"
        g6_path = self.catalog_dir / "named.g6"
        if not index_path.exists() or not g6_path.exists():
            logger.warning(f"Graph catalog not found in {self.catalog_dir}")
            self._index = {}
            return self._index

        lines = g6_path.read_text(encoding="ascii").splitlines()
        index: Dict[str, Tuple[int, str]] = {}
        for raw in index_path.read_text(encoding="utf-8").splitlines():
            raw = raw.strip()
            if not raw or raw.startswith("#"):
                continue
            key, lineno, *display = raw.split(maxsplit=2)
            number = int(lineno)
            if not 1 <= number <= len(lines):
                raise CatalogError(f"catalog index points past the end of named.g6: {key} -> {number}")
            index[key] = (number, display[0] if display else key)
        self._index = {k: (lines[number - 1].strip(), display) for k, (number, display) in index.items()}
        logger.info(f"Loaded graph catalog: {len(self._index)} entries from {self.catalog_dir}")
        return self._index

    def names(self) -> List[str]:
        return sorted(self._load())

    def __contains__(self, key: str) -> bool:
        return key in self._load()

    def load(self, key: str) -> Graph:
        from eqdist.core.graph6 import parse_graph6

        entries = self._load()
        if key not in entries:
            raise CatalogError(f"graph not in catalog: {key}")
        text, display = entries[key]
        return parse_graph6(text, name=display)


def _default_catalog() -> GraphCatalog:
    from eqdist.utils.config import config

    return GraphCatalog(config.resolve_path("report.data.catalog_dir", "data/named"))


def load_catalog_graph(key: str, catalog: Optional[GraphCatalog] = None) -> Graph:
    return (catalog or _default_catalog()).load(key)


def available_graphs(catalog: Optional[GraphCatalog] = None) -> List[str]:
    """全部可用名称: 无参数构造器与目录条目"""
    names = {gid.value for gid in _SPORADIC}
    names.update((catalog or _default_catalog()).names())
    return sorted(names)


def resolve_graph(key: str, catalog: Optional[GraphCatalog] = None) -> Graph:
    """
    按名称取图: 先内置构造器(含 j_7_3、es_5_2、circulant_8_1_4 这类带参数短名),再目录

    Raises:
        CatalogError: 名称无法解析
    """
    normalized = key.strip().lower().replace("-", "_").replace(" ", "_")
    by_value = {gid.value: gid for gid in NamedGraphId}

    gid = _ALIASES.get(normalized) or by_value.get(normalized)
    if gid is not None and gid in _SPORADIC:
        return construct(gid)

    parts = normalized.split("_")
    split = len(parts)
    while split > 0 and parts[split - 1].isdigit():
        split -= 1
    head, params = "_".join(parts[:split]), [int(p) for p in parts[split:]]
    family = _PREFIXES.get(head) or by_value.get(head)
    if family in _FAMILIES and params:
        if family is NamedGraphId.CIRCULANT:
            return construct(family, params[0], params[1:])
        return construct(family, *params)

    catalog = catalog or _default_catalog()
    if normalized in catalog:
        return catalog.load(normalized)
    raise CatalogError(f"unknown graph name: {key}")
