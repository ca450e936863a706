"""
谱计算模块
稠密对称矩阵的 Jacobi 特征值求解,以及邻接、拉普拉斯、距离矩阵的谱
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np
from loguru import logger

from eqdist.core.errors import ConvergenceError, NonSymmetricMatrixError
from eqdist.core.graph import Graph, all_pairs_distances
from eqdist.core.tolerances import DEFAULT_TOLERANCES, Tolerances


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Spectrum:
    """降序排列的全部特征值 λ_1 ≥ … ≥ λ_n"""

    values: np.ndarray

    def __post_init__(self):
        values = np.sort(np.asarray(self.values, dtype=np.float64))[::-1].copy()
        object.__setattr__(self, "values", _readonly(values))

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, i):
        return self.values[i]

    @property
    def ascending(self) -> np.ndarray:
        """升序视图(拉普拉斯谱 μ_1 ≤ … ≤ μ_n 的习惯写法)"""
        return self.values[::-1]

    @property
    def max_abs(self) -> float:
        return float(np.abs(self.values).max()) if self.values.size else 0.0


@dataclass(frozen=True)
class DistinctSpectrum:
    """互异特征值 θ_0 > θ_1 > … > θ_d 及重数 m_0..m_d"""

    thetas: Tuple[float, ...]
    mults: Tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.thetas) - 1

    @property
    def n(self) -> int:
        return sum(self.mults)


def _round_robin(n: int) -> List[Tuple[np.ndarray, np.ndarray]]:
    """
    环形赛程: 每轮给出两两不交的 (p, q) 对,n-1 轮(n 为奇数时补一个虚拟下标)覆盖全部点对
    """
    size = n + (n % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        ps, qs = [], []
        for i in range(size // 2):
            a, b = players[i], players[size - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(a.diagonal())))


class JacobiEigenSolver:
    """
    循环 Jacobi 特征值求解器

    每轮同时施加一组互不相交的平面旋转(环形赛程顺序),
    一次扫描覆盖全部 n(n-1)/2 个非对角元。
    """

    def __init__(self, tolerance: float = 1e-12, max_sweeps: int = 60, symmetry_tolerance: float = 1e-12):
        """
        初始化求解器

        Args:
            tolerance: 收敛阈值,非对角 Frobenius 范数 ≤ tolerance·‖A‖_F
            max_sweeps: 最大扫描次数
            symmetry_tolerance: 对称性检查的相对容差
        """
        self.tolerance = tolerance
        self.max_sweeps = max_sweeps
        self.symmetry_tolerance = symmetry_tolerance
        self.last_sweeps = 0

        logger.debug(f"JacobiEigenSolver initialized with tolerance={tolerance}, max_sweeps={max_sweeps}")

    def _check_symmetric(self, m: np.ndarray) -> np.ndarray:
        a = np.array(m, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise NonSymmetricMatrixError(f"expected a square matrix, got shape {a.shape}")
        if not np.isfinite(a).all():
            raise NonSymmetricMatrixError("matrix has non-finite entries")
        scale = np.linalg.norm(a)
        asym = np.abs(a - a.T).max() if a.size else 0.0
        if asym > self.symmetry_tolerance * max(scale, 1.0):
            raise NonSymmetricMatrixError(f"matrix is not symmetric: max |m - m^T| = {asym:.3e}")
        return (a + a.T) / 2

    def decompose(self, m: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        特征分解 m = Q diag(w) Q^T

        Returns:
            (w, Q): 未排序的特征值与累积旋转得到的正交矩阵
        """
        a = self._check_symmetric(m)
        n = a.shape[0]
        q = np.eye(n)
        norm = np.linalg.norm(a)
        self.last_sweeps = 0
        if n < 2 or norm == 0.0:
            return a.diagonal().copy(), q

        threshold = self.tolerance * norm
        rounds = _round_robin(n)
        off = _off_diagonal_norm(a)
        for sweep in range(1, self.max_sweeps + 1):
            if off <= threshold:
                break
            for p, qq in rounds:
                self._rotate(a, q, p, qq)
            self.last_sweeps = sweep
            off = _off_diagonal_norm(a)
        if off > threshold:
            raise ConvergenceError(
                f"Jacobi did not converge in {self.max_sweeps} sweeps: off-diagonal norm {off:.3e}"
            )
        return a.diagonal().copy(), q

    @staticmethod
    def _rotate(a: np.ndarray, q: np.ndarray, p: np.ndarray, r: np.ndarray) -> None:
        apq = a[p, r]
        active = apq != 0.0
        if not active.any():
            return
        p, r, apq = p[active], r[active], apq[active]
        app, arr = a[p, p], a[r, r]
        with np.errstate(over="ignore", divide="ignore"):
            theta = (arr - app) / (2.0 * apq)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
        t = np.nan_to_num(t, nan=0.0)
        c = 1.0 / np.sqrt(t * t + 1.0)
        s = t * c

        cols_p, cols_r = a[:, p], a[:, r]
        a[:, p] = cols_p * c - cols_r * s
        a[:, r] = cols_p * s + cols_r * c
        rows_p, rows_r = a[p, :], a[r, :]
        a[p, :] = c[:, None] * rows_p - s[:, None] * rows_r
        a[r, :] = s[:, None] * rows_p + c[:, None] * rows_r
        a[p, r] = 0.0
        a[r, p] = 0.0

        vec_p, vec_r = q[:, p], q[:, r]
        q[:, p] = vec_p * c - vec_r * s
        q[:, r] = vec_p * s + vec_r * c

    def eigenvalues(self, m: np.ndarray) -> Spectrum:
        w, _ = self.decompose(m)
        return Spectrum(w)


@lru_cache(maxsize=8)
def _solver(tolerance: float, max_sweeps: int, symmetry_tolerance: float) -> JacobiEigenSolver:
    return JacobiEigenSolver(tolerance, max_sweeps, symmetry_tolerance)


def get_solver(tolerances: Tolerances = DEFAULT_TOLERANCES) -> JacobiEigenSolver:
    return _solver(tolerances.jacobi_tol, tolerances.jacobi_max_sweeps, tolerances.symmetry_tol)


# ---- 矩阵 ----

def adjacency_matrix(g: Graph) -> np.ndarray:
    return g.adjacency.astype(np.float64)


def laplacian_matrix(g: Graph) -> np.ndarray:
    """L = Deg - A"""
    return np.diag(g.degrees.astype(np.float64)) - adjacency_matrix(g)


def distance_matrix(g: Graph) -> np.ndarray:
    """距离矩阵 D 的实数视图"""
    return all_pairs_distances(g).d.astype(np.float64)


def eigenvalues(m: np.ndarray, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Spectrum:
    """
    对称矩阵的全部特征值

    Raises:
        NonSymmetricMatrixError: 输入不对称(超过相对 symmetry_tol)
    """
    return get_solver(tolerances).eigenvalues(m)


def distinct(s: Spectrum, group_tol: float = DEFAULT_TOLERANCES.group_tol) -> DistinctSpectrum:
    """
    把相邻间隔 ≤ group_tol·(1+max|λ|) 的特征值归为一组,组均值为 θ,组大小为重数
    """
    values = s.values
    if values.size == 0:
        return DistinctSpectrum((), ())
    tau = group_tol * (1.0 + s.max_abs)
    groups: List[List[float]] = [[float(values[0])]]
    for prev, cur in zip(values[:-1], values[1:]):
        if prev - cur <= tau:
            groups[-1].append(float(cur))
        else:
            groups.append([float(cur)])
    return DistinctSpectrum(
        thetas=tuple(float(np.mean(grp)) for grp in groups),
        mults=tuple(len(grp) for grp in groups),
    )


def count_at_most(s: Spectrum, threshold: float, slack: float = DEFAULT_TOLERANCES.inclusion_slack) -> int:
    """|{i : λ_i ≤ threshold}|,阈值向包含方向放宽 slack"""
    return int(np.count_nonzero(s.values <= threshold + slack))


def count_at_least(s: Spectrum, threshold: float, slack: float = DEFAULT_TOLERANCES.inclusion_slack) -> int:
    """|{i : λ_i ≥ threshold}|,阈值向包含方向放宽 slack"""
    return int(np.count_nonzero(s.values >= threshold - slack))


# ---- 图谱(缓存在图对象上) ----

def _cached_spectrum(g: Graph, kind: str, build, tolerances: Tolerances) -> Spectrum:
    key = f"spectrum:{kind}:{tolerances.jacobi_tol}"
    cached = g.cached(key)
    if cached is not None:
        return cached
    spectrum = eigenvalues(build(g), tolerances)
    logger.debug(f"{kind} spectrum of {g.name}: n={len(spectrum)}")
    return g.store(key, spectrum)


def adjacency_spectrum(g: Graph, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Spectrum:
    return _cached_spectrum(g, "adjacency", adjacency_matrix, tolerances)


def laplacian_spectrum(g: Graph, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Spectrum:
    return _cached_spectrum(g, "laplacian", laplacian_matrix, tolerances)


def distance_spectrum(g: Graph, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Spectrum:
    return _cached_spectrum(g, "distance", distance_matrix, tolerances)


def distinct_adjacency_spectrum(g: Graph, tolerances: Tolerances = DEFAULT_TOLERANCES) -> DistinctSpectrum:
    return distinct(adjacency_spectrum(g, tolerances), tolerances.group_tol)


def matrix_power_diagonals(g: Graph, degree: int) -> np.ndarray:
    """
    各顶点的 (A^i)_vv, i = 0..degree

    Returns:
        形状 (n, degree+1) 的整数数组
    """
    key = f"walks:{degree}"
    cached = g.cached(key)
    if cached is not None:
        return cached
    a = g.adjacency.astype(np.int64)
    n = g.n
    power = np.eye(n, dtype=np.int64)
    columns = [power.diagonal().copy()]
    for _ in range(degree):
        power = power @ a
        columns.append(power.diagonal().copy())
    return g.store(key, _readonly(np.stack(columns, axis=1)))
