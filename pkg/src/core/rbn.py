"""
布尔网络
解析网络描述并展开为 2^N 个状态的离散动力系统

编码约定：
- 状态下标的第 i 位是基因 i 的取值，基因 0 为最低位
- 真值表下标把父节点取值读成二进制数，第一个父节点为最高位
"""

import json
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from ..utils.config import get_setting
from .errors import NetworkTooLarge, ParentOutOfRange, SchemaError, TruthTableSizeMismatch
from .system import DynamicalSystem, build_system


@dataclass(frozen=True)
class BooleanNode:
    parents: Tuple[int, ...]
    truth_table: Tuple[int, ...]


@dataclass(frozen=True)
class BooleanNetwork:
    nodes: Tuple[BooleanNode, ...]

    def __post_init__(self):
        n = len(self.nodes)
        for i, node in enumerate(self.nodes):
            for parent in node.parents:
                if not 0 <= parent < n:
                    raise ParentOutOfRange(i, parent)
            expected = 2 ** len(node.parents)
            if len(node.truth_table) != expected:
                raise TruthTableSizeMismatch(i, expected, len(node.truth_table))

    @property
    def num_genes(self) -> int:
        return len(self.nodes)


def _int_list(value: Any, what: str) -> Tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise SchemaError(f"{what} 必须是整数数组")
    return tuple(value)


def parse_network(doc: Union[str, Dict[str, Any]]) -> BooleanNetwork:
    """
    解析 {"n": N, "nodes": [{"parents": [...], "tt": [...]}, ...]}

    Args:
        doc: JSON 文本或已解析的字典

    Returns:
        校验后的 BooleanNetwork
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise SchemaError(f"网络文档不是合法 JSON: {e}")
    if not isinstance(doc, dict) or not isinstance(doc.get('nodes'), list):
        raise SchemaError("网络文档必须是包含 'nodes' 数组的对象")
    raw_nodes = doc['nodes']
    n = doc.get('n', len(raw_nodes))
    if n != len(raw_nodes):
        raise SchemaError(f"'n'={n} 与节点数 {len(raw_nodes)} 不一致")

    nodes = []
    for i, raw in enumerate(raw_nodes):
        if not isinstance(raw, dict) or 'parents' not in raw or 'tt' not in raw:
            raise SchemaError(f"节点 {i} 必须包含 'parents' 与 'tt'")
        parents = _int_list(raw['parents'], f"节点 {i} 的 parents")
        tt = _int_list(raw['tt'], f"节点 {i} 的 tt")
        if any(bit not in (0, 1) for bit in tt):
            raise SchemaError(f"节点 {i} 的真值表只能包含 0 和 1")
        nodes.append(BooleanNode(parents, tt))
    return BooleanNetwork(tuple(nodes))


def network_to_document(net: BooleanNetwork) -> Dict[str, Any]:
    return {
        'n': net.num_genes,
        'nodes': [{'parents': list(node.parents), 'tt': list(node.truth_table)} for node in net.nodes],
    }


def expand(net: BooleanNetwork, max_genes: Optional[int] = None) -> DynamicalSystem:
    """
    展开为 2^N 个状态的动力系统，对所有状态向量化求值

    Args:
        net: 布尔网络
        max_genes: 基因数上限，默认读配置 limits.rbn_max_genes

    Returns:
        DynamicalSystem
    """
    cap = int(get_setting('limits.rbn_max_genes')) if max_genes is None else max_genes
    if net.num_genes > cap:
        raise NetworkTooLarge(net.num_genes, cap)

    states = np.arange(2 ** net.num_genes, dtype=np.int64)
    successor = np.zeros_like(states)
    for i, node in enumerate(net.nodes):
        index = np.zeros_like(states)
        for parent in node.parents:
            index = (index << 1) | ((states >> parent) & 1)
        table = np.asarray(node.truth_table, dtype=np.int64)
        successor |= table[index] << i
    return build_system(successor.tolist())


def random_network(n: int, k: int, seed: int) -> BooleanNetwork:
    """
    随机网络：每个基因 k 个互不相同的父节点，真值表均匀随机

    Args:
        n: 基因数
        k: 每个基因的父节点数（不超过 n）
        seed: 随机种子

    Returns:
        BooleanNetwork
    """
    if not 0 <= k <= n:
        raise SchemaError(f"父节点数 {k} 必须在 [0, {n}] 内")
    rng = np.random.default_rng(seed)
    nodes = []
    for _ in range(n):
        parents = tuple(int(p) for p in rng.choice(n, size=k, replace=False))
        tt = tuple(int(bit) for bit in rng.integers(0, 2, size=2 ** k))
        nodes.append(BooleanNode(parents, tt))
    return BooleanNetwork(tuple(nodes))
