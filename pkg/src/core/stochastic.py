"""
随机状态与随机协变影响
概率向量、列随机矩阵、均匀（自由）态刻画，以及把转换问题化为精确线性规划
"""

from collections import abc
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np

from .deterministic import monotone_failures
from .errors import DimensionMismatch, InvalidProbability, LengthMismatch
from .ratlp import LpProblem, LpStatus, solve
from .rational import parse_rational
from .system import DynamicalSystem, FeatureTable, analyze, dynamical_matrix

ZERO = Fraction(0)
ONE = Fraction(1)

LP_CERTIFICATE = "LPCertificate"


@dataclass(frozen=True)
class ProbVec:
    """M 个非负有理数，和恰为 1"""

    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if any(p < 0 for p in self.entries):
            raise InvalidProbability(f"概率向量含负数: {[str(p) for p in self.entries]}")
        if sum(self.entries, ZERO) != 1:
            raise InvalidProbability(f"概率向量之和为 {sum(self.entries, ZERO)} 而不是 1")

    @classmethod
    def parse(cls, values: Sequence[Any]) -> "ProbVec":
        if isinstance(values, (str, bytes, dict)) or not isinstance(values, (abc.Sequence, np.ndarray, ProbVec)):
            raise InvalidProbability(f"概率向量必须是数组: {values!r}")
        return cls(tuple(parse_rational(v) for v in values))

    @classmethod
    def point_mass(cls, num_states: int, s: int) -> "ProbVec":
        return cls(tuple(ONE if k == s else ZERO for k in range(num_states)))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, k: int) -> Fraction:
        return self.entries[k]

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=object)


@dataclass(frozen=True, eq=False)
class StochMatrix:
    """M×M 列随机矩阵，matrix[i, j] = p(i|j)"""

    matrix: np.ndarray

    def __post_init__(self):
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise DimensionMismatch(f"随机矩阵必须是方阵，实际形状 {self.matrix.shape}")
        for value in self.matrix.flat:
            if not ZERO <= value <= ONE:
                raise InvalidProbability(f"矩阵元 {value} 不在 [0, 1] 内")
        for j in range(self.size):
            if sum(self.matrix[:, j], ZERO) != 1:
                raise InvalidProbability(f"第 {j} 列之和不为 1")

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Any]]) -> "StochMatrix":
        m = len(columns)
        matrix = np.full((m, m), ZERO, dtype=object)
        for j, column in enumerate(columns):
            if len(column) != m:
                raise DimensionMismatch(f"第 {j} 列长度 {len(column)} 与列数 {m} 不一致")
            matrix[:, j] = [parse_rational(v) for v in column]
        return cls(matrix)

    @classmethod
    def identity(cls, size: int) -> "StochMatrix":
        matrix = np.full((size, size), ZERO, dtype=object)
        for k in range(size):
            matrix[k, k] = ONE
        return cls(matrix)

    def columns(self) -> List[List[Fraction]]:
        return [list(self.matrix[:, j]) for j in range(self.size)]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, StochMatrix) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(tuple(self.matrix.flat))


@dataclass(frozen=True)
class StochVerdict:
    """feasible 时附带见证矩阵；不可行时 certificate 为第一阶段最优值"""

    feasible: bool
    witness: Optional[StochMatrix] = None
    certificate: Optional[Fraction] = None


class TransitionKind(str, Enum):
    FORBIDDEN = "Forbidden"
    POSSIBLY_ALLOWED = "PossiblyAllowed"
    ALLOWED_WITH_WITNESS = "AllowedWithWitness"


@dataclass(frozen=True)
class TransitionVerdict:
    kind: TransitionKind
    reasons: Tuple[str, ...] = ()
    value: Optional[Fraction] = None
    witness: Optional[StochMatrix] = None


MatrixLike = Union[StochMatrix, np.ndarray]
VectorLike = Union[ProbVec, Sequence[Fraction]]


def _as_matrix(F: MatrixLike) -> np.ndarray:
    return F.matrix if isinstance(F, StochMatrix) else np.asarray(F, dtype=object)


def _as_vector(p: VectorLike, num_states: int) -> np.ndarray:
    if len(p) != num_states:
        raise LengthMismatch(f"向量长度 {len(p)} 与状态数 {num_states} 不一致")
    return np.array([Fraction(v) for v in p], dtype=object)


def is_uniform(sys: DynamicalSystem, p: VectorLike, table: Optional[FeatureTable] = None) -> bool:
    """瞬态概率全为零，且同一吸引子上的状态概率相同；table 可传入已算好的 analyze(sys)"""
    vec = _as_vector(p, sys.num_states)
    if table is None:
        table = analyze(sys)
    for s in range(sys.num_states):
        if not table.is_attractor_state(s) and vec[s] != 0:
            return False
    return all(len({vec[s] for s in cycle}) == 1 for cycle in table.attractors)


def free_state_basis(sys: DynamicalSystem) -> List[ProbVec]:
    """每个吸引子一个均匀向量；自由随机态恰为它们的凸组合"""
    table = analyze(sys)
    basis = []
    for cycle in table.attractors:
        weight = Fraction(1, len(cycle))
        basis.append(ProbVec(tuple(weight if s in cycle else ZERO for s in range(sys.num_states))))
    return basis


def is_covariant_stoch(sys: DynamicalSystem, F: MatrixLike) -> bool:
    """[F, Φ] = 0，精确有理运算"""
    matrix = _as_matrix(F)
    m = sys.num_states
    if matrix.shape != (m, m):
        raise DimensionMismatch(f"矩阵形状 {matrix.shape} 与状态数 {m} 不一致")
    phi = dynamical_matrix(sys)
    return bool(np.array_equal(matrix.dot(phi), phi.dot(matrix)))


def commutant_constraints(sys: DynamicalSystem) -> List[np.ndarray]:
    """
    对易约束矩阵 G_ij = e_i e_{φ(j)}ᵀ − Σ_{k∈φ⁻¹(i)} e_k e_jᵀ

    按 i*M + j 顺序返回 M² 个矩阵；tr[F G_ijᵀ] = (FΦ − ΦF)[i, j]
    """
    m = sys.num_states
    constraints = []
    for i in range(m):
        for j in range(m):
            G = np.full((m, m), ZERO, dtype=object)
            G[i, sys.successor[j]] += ONE
            for k in sys.preimages[i]:
                G[k, j] -= ONE
            constraints.append(G)
    return constraints


def _structural_rows(sys: DynamicalSystem) -> Tuple[List[List[Fraction]], List[Fraction]]:
    """列和为一与对易约束；变量 F[i, j] 的下标为 i*M + j"""
    m = sys.num_states
    rows, rhs = [], []
    for j in range(m):
        row = [ZERO] * (m * m)
        for i in range(m):
            row[i * m + j] = ONE
        rows.append(row)
        rhs.append(ONE)
    for G in commutant_constraints(sys):
        rows.append(list(G.flat))
        rhs.append(ZERO)
    return rows, rhs


def encode_conversion_lp(sys: DynamicalSystem, p: VectorLike, q: VectorLike) -> LpProblem:
    """
    把 p → q 的随机转换问题编码为线性规划

    M² 个非负变量（F 按行展开），约束依次为：M 行列和为一、
    M² 行对易条件、M 行作用条件 F p = q。无目标函数。
    """
    m = sys.num_states
    p_vec = _as_vector(p, m)
    q_vec = _as_vector(q, m)
    rows, rhs = _structural_rows(sys)
    for i in range(m):
        row = [ZERO] * (m * m)
        for j in range(m):
            row[i * m + j] = p_vec[j]
        rows.append(row)
        rhs.append(q_vec[i])
    return LpProblem.from_rows(rows, rhs, num_vars=m * m)


def homogeneous_system(sys: DynamicalSystem, p: VectorLike, q: VectorLike) -> np.ndarray:
    """
    齐次形式 A f = 0 的 (M²+2M−1)×M² 矩阵，仅供检查

    行依次为：u_k（第 k 列与第 0 列列和之差，k = 1..M−1）、g_ij、
    h_i = (F p)_i − q_i·(第 0 列列和)。非零非负解归一化后即为见证。
    """
    m = sys.num_states
    p_vec = _as_vector(p, m)
    q_vec = _as_vector(q, m)
    rows = []
    for k in range(1, m):
        row = [ZERO] * (m * m)
        for i in range(m):
            row[i * m + k] += ONE
            row[i * m] -= ONE
        rows.append(row)
    for G in commutant_constraints(sys):
        rows.append(list(G.flat))
    for i in range(m):
        row = [ZERO] * (m * m)
        for j in range(m):
            row[i * m + j] += p_vec[j]
        for k in range(m):
            row[k * m] -= q_vec[i]
        rows.append(row)
    return np.array(rows, dtype=object).reshape(m * m + 2 * m - 1, m * m)


def _reshape(assignment: Sequence[Fraction], m: int) -> np.ndarray:
    return np.array(assignment, dtype=object).reshape(m, m)


def verify_witness(sys: DynamicalSystem, F: MatrixLike, p: VectorLike, q: VectorLike) -> bool:
    """独立复核三类约束：列随机、与 Φ 对易、F p = q"""
    matrix = _as_matrix(F)
    m = sys.num_states
    if matrix.shape != (m, m):
        return False
    if any(v < 0 for v in matrix.flat):
        return False
    if any(sum(matrix[:, j], ZERO) != 1 for j in range(m)):
        return False
    if not is_covariant_stoch(sys, matrix):
        return False
    return bool(np.array_equal(matrix.dot(_as_vector(p, m)), _as_vector(q, m)))


def decide_conversion(sys: DynamicalSystem, p: VectorLike, q: VectorLike) -> StochVerdict:
    """
    判定是否存在随机协变影响 F 使 F p = q

    Args:
        sys: 动力系统
        p: 初始概率向量
        q: 目标概率向量

    Returns:
        StochVerdict；可行时见证已经过精确复核
    """
    problem = encode_conversion_lp(sys, p, q)
    outcome = solve(problem)
    if outcome.status is not LpStatus.OPTIMAL:
        return StochVerdict(False, None, outcome.certificate)
    F = _reshape(outcome.assignment, sys.num_states)
    if not verify_witness(sys, F, p, q):
        raise AssertionError("单纯形返回的见证未通过复核")
    return StochVerdict(True, StochMatrix(F), None)


def max_transition_probability(sys: DynamicalSystem, s: int, s_prime: int) -> Tuple[Fraction, StochMatrix]:
    """在列随机且与 Φ 对易的矩阵中最大化 F[s', s]"""
    sys.check_state(s)
    sys.check_state(s_prime)
    m = sys.num_states
    rows, rhs = _structural_rows(sys)
    objective = [ZERO] * (m * m)
    objective[s_prime * m + s] = ONE
    outcome = solve(LpProblem.from_rows(rows, rhs, objective, num_vars=m * m))
    # 恒等矩阵总是可行，目标不超过 1
    if outcome.status is not LpStatus.OPTIMAL:
        raise AssertionError(f"转移概率线性规划意外地 {outcome.status.value}")
    return outcome.value, StochMatrix(_reshape(outcome.assignment, m))


def transition_allowed(
    sys: DynamicalSystem, s: int, s_prime: int, solve_lp: bool = True
) -> TransitionVerdict:
    """
    随机协变影响下 s → s' 是否允许

    先检查必要条件（d' ≤ d 与祖先深度），失败即 Forbidden；
    否则求 F[s', s] 的最大值：为 0 则 Forbidden(LPCertificate)，
    大于 0 则 AllowedWithWitness。solve_lp=False 时跳过线性规划，
    必要条件通过即返回 PossiblyAllowed。
    """
    sys.check_state(s)
    sys.check_state(s_prime)
    table = analyze(sys)
    failed = monotone_failures(sys, table, s, sys, table, s_prime, require_divisor=False)
    if failed:
        return TransitionVerdict(TransitionKind.FORBIDDEN, tuple(failed))
    if not solve_lp:
        return TransitionVerdict(TransitionKind.POSSIBLY_ALLOWED)
    value, witness = max_transition_probability(sys, s, s_prime)
    if value == 0:
        return TransitionVerdict(TransitionKind.FORBIDDEN, (LP_CERTIFICATE,), value)
    return TransitionVerdict(TransitionKind.ALLOWED_WITH_WITNESS, (), value, witness)


def apply(F: MatrixLike, p: VectorLike) -> ProbVec:
    """精确计算 F p"""
    matrix = _as_matrix(F)
    if matrix.ndim != 2 or matrix.shape[1] != len(p):
        raise DimensionMismatch(f"矩阵形状 {matrix.shape} 与向量长度 {len(p)} 不匹配")
    vec = np.array([Fraction(v) for v in p], dtype=object)
    return ProbVec(tuple(Fraction(v) for v in matrix.dot(vec)))


def stationary_uniform(sys: DynamicalSystem, p: VectorLike) -> ProbVec:
    """
    Φⁿp 在一个公共周期上的平均值的极限

    每个吸引域的总概率最终均匀分布在其吸引子上
    """
    vec = _as_vector(p, sys.num_states)
    table = analyze(sys)
    mass = [ZERO] * table.num_attractors
    for s in range(sys.num_states):
        mass[table.basin_id[s]] += vec[s]
    result = [ZERO] * sys.num_states
    for k, cycle in enumerate(table.attractors):
        for s in cycle:
            result[s] = mass[k] / len(cycle)
    return ProbVec(tuple(result))
