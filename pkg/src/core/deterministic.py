"""
确定性状态转换
判定协变影响能否把状态 s 变为 s'，并构造协变映射作为见证；
同时支持同一系统内与两个系统之间的转换
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .errors import NotConvertible, SystemMismatch
from .system import DynamicalSystem, FeatureTable, analyze, iterate

PROGENY_INCREASE = "ProgenyIncrease"
LENGTH_NOT_DIVISOR = "LengthNotDivisor"
NO_COVARIANT_MAPS = "NoCovariantMapsExist"


def ancestry_decrease(n: int) -> str:
    return f"AncestryDecrease({n})"


@dataclass(frozen=True)
class DetMap:
    """从 source 到 target 的全映射，table[j] 为 f(s_j)"""

    source: DynamicalSystem
    target: DynamicalSystem
    table: Tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.source.num_states:
            raise SystemMismatch(
                f"映射表长度 {len(self.table)} 与源系统状态数 {self.source.num_states} 不一致"
            )
        for value in self.table:
            self.target.check_state(value)

    def __call__(self, s: int) -> int:
        return self.table[s]

    @classmethod
    def identity(cls, sys: DynamicalSystem) -> "DetMap":
        return cls(sys, sys, tuple(range(sys.num_states)))


@dataclass(frozen=True)
class ConversionVerdict:
    convertible: bool
    failed_conditions: Tuple[str, ...] = field(default_factory=tuple)
    witness: Optional[DetMap] = None


def is_covariant(f: DetMap) -> bool:
    """f∘φ1 = φ2∘f 逐状态成立"""
    if len(f.table) != f.source.num_states:
        raise SystemMismatch("映射表长度与源系统不一致")
    phi1 = f.source.successor
    phi2 = f.target.successor
    return all(f.table[phi1[s]] == phi2[f.table[s]] for s in range(f.source.num_states))


def monotone_failures(
    sys1: DynamicalSystem,
    table1: FeatureTable,
    s: int,
    sys2: DynamicalSystem,
    table2: FeatureTable,
    s_prime: int,
    require_divisor: bool = True,
) -> List[str]:
    """
    检查单调量条件，返回全部失败项

    require_divisor=False 时只检查后代数与祖先深度（随机影响下的必要条件）
    """
    failed = []
    d, d_prime = table1.progeny[s], table2.progeny[s_prime]
    if d_prime > d:
        failed.append(PROGENY_INCREASE)
    if require_divisor and table1.length[s] % table2.length[s_prime] != 0:
        failed.append(LENGTH_NOT_DIVISOR)
    # 祖先深度条件只需检查 n < d'，其余 n 已被蕴含
    for n in range(d_prime):
        a_prime = table2.ancestry[iterate(sys2, s_prime, n)]
        a = table1.ancestry[iterate(sys1, s, n)]
        if a_prime < a:
            failed.append(ancestry_decrease(n))
    return failed


def _farthest_predecessor(target: DynamicalSystem, target_table: FeatureTable, t: int) -> int:
    """t 的前驱中祖先深度最大者（环上前驱视为无穷），并列取最小下标"""
    best = None
    for y in target.preimages[t]:
        if best is None or target_table.ancestry[y] > target_table.ancestry[best]:
            best = y
    return best


def _map_basin(
    source: DynamicalSystem,
    source_table: FeatureTable,
    basin: int,
    target: DynamicalSystem,
    target_table: FeatureTable,
    anchor: Tuple[int, int],
    chain: Optional[Tuple[int, int]],
    table: List[int],
):
    """
    把源系统的一个吸引域映入目标系统，结果写入 table

    anchor=(c, t) 要求 c、t 都在各自的吸引子上；chain=(s, s') 额外要求
    f(φⁿ(s)) = φⁿ(s')，此时 anchor 必须是 (φ^d(s), φ^d(s'))。
    其余瞬态状态按后代数升序处理：f(x) 取 f(φ(x)) 的最远前驱，
    由此保持 a(f(x)) ≥ a(x)，使下一层总能找到合适的前驱。
    """
    c, t = anchor
    for _ in range(source_table.length[c]):
        table[c] = t
        c, t = source.successor[c], target.successor[t]

    if chain is not None:
        s, s_prime = chain
        for _ in range(source_table.progeny[s]):
            table[s] = s_prime
            s, s_prime = source.successor[s], target.successor[s_prime]

    pending = sorted(
        (x for x in source_table.basin_states(basin) if table[x] < 0),
        key=lambda x: (source_table.progeny[x], x),
    )
    for x in pending:
        table[x] = _farthest_predecessor(target, target_table, table[source.successor[x]])


def _build_witness(sys: DynamicalSystem, table: FeatureTable, s: int, s_prime: int) -> DetMap:
    if s == s_prime:
        return DetMap.identity(sys)
    d = table.progeny[s]
    images = [-1] * sys.num_states
    basin = table.basin_id[s]
    for x in range(sys.num_states):
        if table.basin_id[x] != basin:
            images[x] = x
    anchor = (iterate(sys, s, d), iterate(sys, s_prime, d))
    _map_basin(sys, table, basin, sys, table, anchor, (s, s_prime), images)
    return DetMap(sys, sys, tuple(images))


def convertible(sys: DynamicalSystem, s: int, s_prime: int) -> ConversionVerdict:
    """
    同一系统内的确定性转换判定

    条件：d' ≤ d，ℓ' 整除 ℓ，且对 n < d' 有 a(φⁿ(s')) ≥ a(φⁿ(s))。
    所有不满足的条件都会列出；可转换时附带见证映射。

    Args:
        sys: 动力系统
        s: 初始状态
        s_prime: 目标状态

    Returns:
        ConversionVerdict
    """
    sys.check_state(s)
    sys.check_state(s_prime)
    table = analyze(sys)
    failed = monotone_failures(sys, table, s, sys, table, s_prime)
    if failed:
        return ConversionVerdict(False, tuple(failed), None)
    return ConversionVerdict(True, (), _build_witness(sys, table, s, s_prime))


def construct_witness(sys: DynamicalSystem, s: int, s_prime: int) -> DetMap:
    """构造 f(s) = s' 的协变映射，吸引域之外取恒等"""
    verdict = convertible(sys, s, s_prime)
    if not verdict.convertible:
        raise NotConvertible(f"{s} → {s_prime} 不可转换: {', '.join(verdict.failed_conditions)}")
    return verdict.witness


def _divisor_attractor(length: int, target_table: FeatureTable) -> Optional[int]:
    """目标系统中长度整除 length 的编号最小的吸引子"""
    for k, cycle in enumerate(target_table.attractors):
        if length % len(cycle) == 0:
            return k
    return None


def exists_covariant_maps(sys1: DynamicalSystem, sys2: DynamicalSystem) -> bool:
    """sys1 的每个吸引子在 sys2 中都有长度整除它的吸引子"""
    table1, table2 = analyze(sys1), analyze(sys2)
    return all(_divisor_attractor(len(cycle), table2) is not None for cycle in table1.attractors)


def _build_cross_witness(
    sys1: DynamicalSystem,
    table1: FeatureTable,
    s: int,
    sys2: DynamicalSystem,
    table2: FeatureTable,
    s_prime: int,
) -> DetMap:
    images = [-1] * sys1.num_states
    own_basin = table1.basin_id[s]
    d = table1.progeny[s]
    anchor = (iterate(sys1, s, d), iterate(sys2, s_prime, d))
    _map_basin(sys1, table1, own_basin, sys2, table2, anchor, (s, s_prime), images)

    for basin, cycle in enumerate(table1.attractors):
        if basin == own_basin:
            continue
        k = _divisor_attractor(len(cycle), table2)
        anchor = (cycle[0], table2.attractors[k][0])
        _map_basin(sys1, table1, basin, sys2, table2, anchor, None, images)
    return DetMap(sys1, sys2, tuple(images))


def convertible_cross(
    sys1: DynamicalSystem, s: int, sys2: DynamicalSystem, s_prime: int
) -> ConversionVerdict:
    """
    跨系统转换判定：在同系统条件之外还要求存在 sys1 → sys2 的协变映射

    Args:
        sys1: 源系统
        s: 源状态
        sys2: 目标系统
        s_prime: 目标状态

    Returns:
        ConversionVerdict，见证为 sys1 → sys2 的 DetMap
    """
    sys1.check_state(s)
    sys2.check_state(s_prime)
    if sys1 == sys2:
        return convertible(sys1, s, s_prime)

    table1, table2 = analyze(sys1), analyze(sys2)
    failed = []
    if not exists_covariant_maps(sys1, sys2):
        failed.append(NO_COVARIANT_MAPS)
    failed.extend(monotone_failures(sys1, table1, s, sys2, table2, s_prime))
    if failed:
        return ConversionVerdict(False, tuple(failed), None)
    return ConversionVerdict(True, (), _build_cross_witness(sys1, table1, s, sys2, table2, s_prime))


def construct_cross_witness(
    sys1: DynamicalSystem, s: int, sys2: DynamicalSystem, s_prime: int
) -> DetMap:
    verdict = convertible_cross(sys1, s, sys2, s_prime)
    if not verdict.convertible:
        raise NotConvertible(f"{s} → {s_prime} 不可转换: {', '.join(verdict.failed_conditions)}")
    return verdict.witness

