"""
graph6 编解码
可打印 ASCII(63..126)、每字节 6 位、大端位序,上三角按列优先排列
"""
from pathlib import Path
from typing import Iterator, List, Tuple, Union

import numpy as np
from loguru import logger

from eqdist.core.errors import Graph6Error, GraphDomainError
from eqdist.core.graph import Graph

HEADER = ">>graph6<<"
_OFFSET = 63
_MAX_BYTE = 126


def _encode_size(n: int) -> List[int]:
    if n <= 62:
        return [n + _OFFSET]
    if n <= 258047:
        return [_MAX_BYTE] + [((n >> shift) & 0x3F) + _OFFSET for shift in (12, 6, 0)]
    if n <= 68719476735:
        return [_MAX_BYTE, _MAX_BYTE] + [((n >> shift) & 0x3F) + _OFFSET for shift in (30, 24, 18, 12, 6, 0)]
    raise GraphDomainError(f"graph6 cannot encode n={n}")


def _upper_triangle_indices(n: int) -> Tuple[np.ndarray, np.ndarray]:
    # 列优先: (0,1), (0,2), (1,2), (0,3), ...
    cols, rows = np.tril_indices(n, -1)
    return rows, cols


def encode_graph6(g: Graph, header: bool = False) -> str:
    """
    graph6 编码(按当前顶点编号,不做规范化)

    Args:
        g: 图
        header: 是否加 >>graph6<< 前缀

    Returns:
        ASCII 字符串(不含换行)
    """
    rows, cols = _upper_triangle_indices(g.n)
    bits = g.adjacency[rows, cols].astype(np.uint8)
    pad = (-bits.size) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 6)
    values = groups @ (1 << np.arange(5, -1, -1)).astype(np.uint8)
    body = bytes(_encode_size(g.n)) + bytes((values + _OFFSET).astype(np.uint8).tolist())
    text = body.decode("ascii")
    return HEADER + text if header else text


def _decode_size(data: bytes, base: int) -> Tuple[int, int]:
    """返回 (n, 头部之后的位置)"""

    def group(start: int, count: int) -> int:
        if start + count > len(data):
            raise Graph6Error("truncated size header", offset=base + len(data))
        value = 0
        for i in range(start, start + count):
            value = (value << 6) | (data[i] - _OFFSET)
        return value

    if not data:
        raise Graph6Error("empty graph6 string", offset=base)
    if data[0] != _MAX_BYTE:
        return data[0] - _OFFSET, 1
    if len(data) > 1 and data[1] == _MAX_BYTE:
        return group(2, 6), 8
    return group(1, 3), 4


def parse_graph6(text: str, name: str = "G") -> Graph:
    """
    解析一个 graph6 字符串

    Args:
        text: graph6 文本,可带 >>graph6<< 前缀与行尾换行
        name: 结果图的名称

    Returns:
        图对象

    Raises:
        Graph6Error: 头部错误、字节越界或位流长度不符,附带字节偏移
    """
    line = text.rstrip("\r\n")
    base = 0
    if line.startswith(HEADER):
        line = line[len(HEADER):]
        base = len(HEADER)
    try:
        data = line.encode("ascii")
    except UnicodeEncodeError as e:
        raise Graph6Error("non-ASCII character", offset=base + e.start) from e

    for i, byte in enumerate(data):
        if not _OFFSET <= byte <= _MAX_BYTE:
            raise Graph6Error(f"byte {byte} outside 63..126", offset=base + i)

    n, pos = _decode_size(data, base)
    if n < 1:
        raise Graph6Error("graph6 encodes a graph with no vertices", offset=base)

    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != expected:
        what = "truncated" if len(body) < expected else "trailing data in"
        raise Graph6Error(
            f"{what} bit stream: expected {expected} bytes for n={n}, got {len(body)}",
            offset=base + pos + min(len(body), expected),
        )

    values = np.frombuffer(body, dtype=np.uint8) - _OFFSET
    bits = np.unpackbits(values[:, None], axis=1)[:, 2:].reshape(-1)
    if bits[nbits:].any():
        raise Graph6Error("nonzero padding bits", offset=base + len(data) - 1)

    rows, cols = _upper_triangle_indices(n)
    adj = np.zeros((n, n), dtype=bool)
    adj[rows, cols] = bits[:nbits].astype(bool)
    adj |= adj.T
    return Graph(adj, name=name)


def iter_graph6(lines: Iterator[str], source: str = "<stream>") -> Iterator[Tuple[int, Graph]]:
    """逐行解析,跳过空行;错误信息中带上行号"""
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            yield lineno, parse_graph6(line, name=f"{Path(source).stem}:{lineno}")
        except Graph6Error as e:
            raise Graph6Error(f"{source} line {lineno}: {e.detail}", offset=e.offset) from e


def read_graph6_file(path: Union[str, Path]) -> List[Graph]:
    """读取每行一个 graph6 的文件"""
    path = Path(path)
    with open(path, "r", encoding="ascii") as f:
        graphs = [g for _, g in iter_graph6(f, source=str(path))]
    logger.info(f"Read {len(graphs)} graphs from {path}")
    return graphs
