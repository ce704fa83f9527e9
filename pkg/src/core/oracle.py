"""
穷举预言机
枚举小系统之间的全部映射，筛出协变映射，用作判定算法的对照
"""

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterator, Optional, Tuple

from ..utils.config import get_setting
from .deterministic import DetMap
from .errors import SearchSpaceTooLarge
from .system import DynamicalSystem


@dataclass(frozen=True)
class MapEnumerator:
    """按映射表字典序遍历 M'^M 个全映射"""

    source_states: int
    target_states: int

    def __len__(self) -> int:
        return self.target_states ** self.source_states

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(range(self.target_states), repeat=self.source_states)


def _enumerator(sys1: DynamicalSystem, sys2: DynamicalSystem, max_maps: Optional[int]) -> MapEnumerator:
    cap = int(get_setting('limits.oracle_max_maps')) if max_maps is None else max_maps
    enumerator = MapEnumerator(sys1.num_states, sys2.num_states)
    if len(enumerator) > cap:
        raise SearchSpaceTooLarge(len(enumerator), cap)
    return enumerator


def enumerate_covariant(
    sys1: DynamicalSystem, sys2: DynamicalSystem, max_maps: Optional[int] = None
) -> Iterator[DetMap]:
    """
    按字典序产出 sys1 → sys2 的全部协变映射

    Args:
        sys1: 源系统
        sys2: 目标系统
        max_maps: 映射空间上限，默认读配置 limits.oracle_max_maps

    Yields:
        DetMap
    """
    enumerator = _enumerator(sys1, sys2, max_maps)
    phi1, phi2 = sys1.successor, sys2.successor
    m = sys1.num_states

    def generate():
        for table in enumerator:
            if all(table[phi1[s]] == phi2[table[s]] for s in range(m)):
                yield DetMap(sys1, sys2, table)

    return generate()


def oracle_conversion_pairs(
    sys1: DynamicalSystem, sys2: DynamicalSystem, max_maps: Optional[int] = None
) -> FrozenSet[Tuple[int, int]]:
    """某个协变映射实现的全部 (s, f(s)) 对"""
    pairs = set()
    for f in enumerate_covariant(sys1, sys2, max_maps):
        pairs.update(enumerate(f.table))
    return frozenset(pairs)


def oracle_convertible(
    sys: DynamicalSystem, s: int, s_prime: int, max_maps: Optional[int] = None
) -> bool:
    sys.check_state(s)
    sys.check_state(s_prime)
    return any(f(s) == s_prime for f in enumerate_covariant(sys, sys, max_maps))


def oracle_fixed_points(sys: DynamicalSystem, max_maps: Optional[int] = None) -> FrozenSet[int]:
    """能由常值协变映射产生的状态，即自由确定态"""
    return frozenset(
        f.table[0] for f in enumerate_covariant(sys, sys, max_maps) if len(set(f.table)) == 1
    )
