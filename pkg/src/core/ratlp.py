"""
精确有理数线性规划内核
标准型 max cᵀx, Ax = b, x ≥ 0；两阶段单纯形法 + Bland 反循环规则，
所有运算在 Fraction 上进行，结果零残差
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..utils.config import get_setting
from ..utils.console import print_flush
from .errors import DimensionMismatch

ZERO = Fraction(0)
ONE = Fraction(1)


class LpStatus(str, Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True, eq=False)
class LpProblem:
    """
    约束矩阵 A（rows × num_vars）、右端 b、目标 c；c 为 None 表示纯可行性问题
    """

    A: np.ndarray
    b: np.ndarray
    c: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.A.ndim != 2:
            raise DimensionMismatch("约束矩阵必须是二维的")
        if self.b.shape != (self.A.shape[0],):
            raise DimensionMismatch(f"右端长度 {self.b.shape} 与约束行数 {self.A.shape[0]} 不一致")
        if self.c is not None and self.c.shape != (self.A.shape[1],):
            raise DimensionMismatch(f"目标长度 {self.c.shape} 与变量数 {self.A.shape[1]} 不一致")

    @property
    def num_rows(self) -> int:
        return self.A.shape[0]

    @property
    def num_vars(self) -> int:
        return self.A.shape[1]

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence],
        rhs: Sequence,
        objective: Optional[Sequence] = None,
        num_vars: Optional[int] = None,
    ) -> "LpProblem":
        """由嵌套序列构建问题；没有约束行时必须给出 num_vars"""
        if num_vars is None:
            if objective is not None:
                num_vars = len(objective)
            elif rows:
                num_vars = len(rows[0])
            else:
                raise DimensionMismatch("无法推断变量个数")
        for i, row in enumerate(rows):
            if len(row) != num_vars:
                raise DimensionMismatch(f"第 {i} 行长度 {len(row)} 与变量数 {num_vars} 不一致")
        A = np.empty((len(rows), num_vars), dtype=object)
        for i, row in enumerate(rows):
            A[i, :] = [Fraction(v) for v in row]
        b = np.array([Fraction(v) for v in rhs], dtype=object)
        c = None if objective is None else np.array([Fraction(v) for v in objective], dtype=object)
        return cls(A, b.reshape(len(rhs)), c)


@dataclass(frozen=True)
class LpOutcome:
    """
    求解结果

    status 为 OPTIMAL 时 assignment 与 value 有效；
    INFEASIBLE 时 certificate 为第一阶段最优值（人工变量之和，> 0）
    """

    status: LpStatus
    assignment: Optional[Tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None
    certificate: Optional[Fraction] = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


def _pivot(T: np.ndarray, basis: List[int], row: int, col: int):
    T[row, :] = T[row, :] / T[row, col]
    for i in range(T.shape[0]):
        if i != row and T[i, col] != 0:
            T[i, :] = T[i, :] - T[i, col] * T[row, :]
    basis[row] = col


def _reduced_costs(T: np.ndarray, basis: List[int], c: np.ndarray, ncols: int) -> List[Fraction]:
    costs = []
    for j in range(ncols):
        z = sum((c[basis[i]] * T[i, j] for i in range(T.shape[0])), ZERO)
        costs.append(c[j] - z)
    return costs


def _simplex(T: np.ndarray, basis: List[int], c: np.ndarray, ncols: int, debug_level: int, phase: int) -> bool:
    """
    在给定可行基上最大化 cᵀx，原地更新 T 和 basis

    Returns:
        True 表示到达最优，False 表示无界
    """
    iteration = 0
    while True:
        costs = _reduced_costs(T, basis, c, ncols)
        entering = next((j for j in range(ncols) if costs[j] > 0), None)
        if entering is None:
            return True

        leaving_row = None
        best_ratio = None
        for i in range(T.shape[0]):
            if T[i, entering] > 0:
                ratio = T[i, -1] / T[i, entering]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving_row])
                ):
                    best_ratio = ratio
                    leaving_row = i
        if leaving_row is None:
            return False

        iteration += 1
        if debug_level >= 1:
            print_flush(
                f"🔄 阶段 {phase} 第 {iteration} 次换基: x{entering} 入基, "
                f"x{basis[leaving_row]} 出基 (比值 {best_ratio})"
            )
        _pivot(T, basis, leaving_row, entering)
        if debug_level >= 2:
            for i in range(T.shape[0]):
                print_flush("   ", " ".join(str(v) for v in T[i, :]))


def solve(problem: LpProblem, debug_level: Optional[int] = None) -> LpOutcome:
    """
    两阶段单纯形求解

    Args:
        problem: 标准型线性规划
        debug_level: 0 静默，1 打印换基，2 同时打印单纯形表；默认读配置

    Returns:
        LpOutcome
    """
    if debug_level is None:
        debug_level = int(get_setting('ratlp.debug_level'))

    n = problem.num_vars
    A = problem.A.copy()
    b = problem.b.copy()

    # 右端取非负；全零行丢弃，全零但右端非零的行直接判不可行
    rows = []
    for i in range(problem.num_rows):
        if b[i] < 0:
            A[i, :] = -A[i, :]
            b[i] = -b[i]
        if all(v == 0 for v in A[i, :]):
            if b[i] != 0:
                return LpOutcome(LpStatus.INFEASIBLE, certificate=Fraction(b[i]))
            continue
        rows.append(i)
    m = len(rows)

    T = np.full((m, n + m + 1), ZERO, dtype=object)
    for k, i in enumerate(rows):
        T[k, :n] = A[i, :]
        T[k, n + k] = ONE
        T[k, -1] = Fraction(b[i])
    basis = list(range(n, n + m))

    # 第一阶段：最大化 -Σ人工变量
    phase1_cost = np.array([ZERO] * n + [-ONE] * m, dtype=object)
    _simplex(T, basis, phase1_cost, n + m, debug_level, phase=1)
    infeasibility = sum((T[i, -1] for i in range(m) if basis[i] >= n), ZERO)
    if infeasibility > 0:
        return LpOutcome(LpStatus.INFEASIBLE, certificate=infeasibility)

    # 人工变量以零值留在基中：能换出就换出，否则该行冗余
    redundant = []
    for i in range(m):
        if basis[i] < n:
            continue
        col = next((j for j in range(n) if T[i, j] != 0), None)
        if col is None:
            redundant.append(i)
        else:
            _pivot(T, basis, i, col)
    keep = [i for i in range(m) if i not in redundant]
    T = np.concatenate([T[keep, :n], T[keep, -1:]], axis=1)
    basis = [basis[i] for i in keep]

    objective = problem.c if problem.c is not None else np.full(n, ZERO, dtype=object)
    if not _simplex(T, basis, objective, n, debug_level, phase=2):
        return LpOutcome(LpStatus.UNBOUNDED)

    x = [ZERO] * n
    for i, var in enumerate(basis):
        x[var] = Fraction(T[i, -1])
    value = sum((Fraction(objective[j]) * x[j] for j in range(n)), ZERO)
    return LpOutcome(LpStatus.OPTIMAL, assignment=tuple(x), value=value)
