"""
离散动力系统核心
状态集合与生成元 φ、动力图、吸引子/吸引域分解以及每个状态的特征表
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from .errors import (
    EmptySystem,
    InvalidProbability,
    LabelLengthMismatch,
    OutOfRangeState,
    OutOfRangeSuccessor,
    SchemaError,
)
from .rational import format_rational, parse_rational


class _Infinite:
    """吸引子状态的祖先深度：比任何自然数都大"""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITE"

    def __str__(self) -> str:
        return "inf"

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("INFINITE")

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True


INFINITE = _Infinite()

Ancestry = Union[int, _Infinite]

# 动力矩阵：M×M 的 object 数组，元素为 Fraction，第 j 列为 e_{φ(j)}
DynamicalMatrix = np.ndarray


@dataclass(frozen=True)
class DynamicalSystem:
    """有限离散动力系统 (S, φ)，状态为 0..M-1"""

    successor: Tuple[int, ...]
    state_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if len(self.successor) == 0:
            raise EmptySystem("系统至少需要一个状态")
        m = len(self.successor)
        for index, value in enumerate(self.successor):
            if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < m:
                raise OutOfRangeSuccessor(index, value)
        if self.state_names is not None and len(self.state_names) != m:
            raise LabelLengthMismatch(f"状态名数量 {len(self.state_names)} 与状态数 {m} 不一致")

    @property
    def num_states(self) -> int:
        return len(self.successor)

    def phi(self, s: int) -> int:
        return self.successor[s]

    def check_state(self, s: int) -> int:
        if not isinstance(s, int) or isinstance(s, bool) or not 0 <= s < self.num_states:
            raise OutOfRangeState(s, self.num_states)
        return s

    def name(self, s: int) -> str:
        return self.state_names[s] if self.state_names else str(s)

    @cached_property
    def preimages(self) -> Tuple[Tuple[int, ...], ...]:
        """φ⁻¹(s)，按下标升序"""
        buckets: List[List[int]] = [[] for _ in range(self.num_states)]
        for j, target in enumerate(self.successor):
            buckets[target].append(j)
        return tuple(tuple(b) for b in buckets)


@dataclass(frozen=True)
class FeatureTable:
    """
    每个状态的特征

    basin_id 与 attractor_id 按吸引子上最小状态下标递增编号；
    attractors[k] 从最小状态出发按 φ 的顺序列出第 k 个吸引子
    """

    basin_id: Tuple[int, ...]
    attractor_id: Tuple[int, ...]
    length: Tuple[int, ...]
    progeny: Tuple[int, ...]
    ancestry: Tuple[Ancestry, ...]
    attractors: Tuple[Tuple[int, ...], ...]

    @property
    def num_states(self) -> int:
        return len(self.length)

    @property
    def num_attractors(self) -> int:
        return len(self.attractors)

    @property
    def basin_sizes(self) -> Tuple[int, ...]:
        sizes = [0] * self.num_attractors
        for b in self.basin_id:
            sizes[b] += 1
        return tuple(sizes)

    def basin_states(self, basin: int) -> Tuple[int, ...]:
        return tuple(s for s, b in enumerate(self.basin_id) if b == basin)

    def is_attractor_state(self, s: int) -> bool:
        return self.progeny[s] == 0

    def row(self, s: int) -> Dict[str, Any]:
        ancestry = self.ancestry[s]
        return {
            'state': s,
            'basin_id': self.basin_id[s],
            'attractor_id': self.attractor_id[s],
            'length': self.length[s],
            'progeny': self.progeny[s],
            'ancestry': str(ancestry) if ancestry is INFINITE else ancestry,
        }


def build_system(successor: Sequence[int], state_names: Optional[Sequence[str]] = None) -> DynamicalSystem:
    """
    由后继表构建并校验动力系统

    Args:
        successor: 第 j 项为 φ(s_j)
        state_names: 可选的显示名称

    Returns:
        校验后的 DynamicalSystem
    """
    names = tuple(str(n) for n in state_names) if state_names is not None else None
    return DynamicalSystem(tuple(successor), names)


def load_system(doc: Union[str, Dict[str, Any]]) -> DynamicalSystem:
    """
    解析系统 JSON 文档 {"states": M, "phi": [...], "names": [...]}

    Args:
        doc: JSON 文本或已解析的字典

    Returns:
        DynamicalSystem
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise SchemaError(f"系统文档不是合法 JSON: {e}")
    if not isinstance(doc, dict) or 'phi' not in doc:
        raise SchemaError("系统文档必须是包含 'phi' 的对象")
    phi = doc['phi']
    if not isinstance(phi, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in phi):
        raise SchemaError("'phi' 必须是整数数组")
    states = doc.get('states', len(phi))
    if states != len(phi):
        raise SchemaError(f"'states'={states} 与 'phi' 长度 {len(phi)} 不一致")
    names = doc.get('names')
    if names is not None and not isinstance(names, list):
        raise SchemaError("'names' 必须是字符串数组")
    return build_system(phi, names)


def system_to_document(sys: DynamicalSystem) -> Dict[str, Any]:
    doc: Dict[str, Any] = {'states': sys.num_states, 'phi': list(sys.successor)}
    if sys.state_names is not None:
        doc['names'] = list(sys.state_names)
    return doc


def iterate(sys: DynamicalSystem, s: int, n: int) -> int:
    """
    计算 φⁿ(s)

    Args:
        sys: 动力系统
        s: 起始状态
        n: 步数（自然数）

    Returns:
        φⁿ(s)
    """
    sys.check_state(s)
    if n < 0:
        raise ValueError("步数必须是自然数")
    # M 步之后必然已在环上，剩余步数按环长取模
    head = min(n, sys.num_states)
    for _ in range(head):
        s = sys.successor[s]
    remaining = n - head
    if remaining:
        period = 1
        t = sys.successor[s]
        while t != s:
            t = sys.successor[t]
            period += 1
        for _ in range(remaining % period):
            s = sys.successor[s]
    return s


def predecessors(sys: DynamicalSystem, s: int) -> Tuple[int, ...]:
    sys.check_state(s)
    return sys.preimages[s]


def fixed_points(sys: DynamicalSystem) -> Tuple[int, ...]:
    """确定性自由态（不动点）"""
    return tuple(s for s, t in enumerate(sys.successor) if s == t)


def to_graph(sys: DynamicalSystem) -> nx.DiGraph:
    """动力图：每个状态恰有一条出边 s → φ(s)"""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(sys.num_states))
    graph.add_edges_from((s, t) for s, t in enumerate(sys.successor))
    return graph


def analyze(sys: DynamicalSystem) -> FeatureTable:
    """
    吸引子/吸引域分解与特征计算

    函数图中吸引分量恰为环；每个弱连通分量恰含一个环，即一个吸引域。
    瞬态后代数 d 为反向图上到环的 BFS 深度；祖先深度 a 为瞬态子 DAG 上
    终止于该状态的最长路径长度，吸引子状态取 INFINITE。

    Args:
        sys: 动力系统

    Returns:
        FeatureTable
    """
    graph = to_graph(sys)
    m = sys.num_states

    cycles = []
    for component in nx.attracting_components(graph):
        start = min(component)
        cycle = [start]
        nxt = sys.successor[start]
        while nxt != start:
            cycle.append(nxt)
            nxt = sys.successor[nxt]
        cycles.append(tuple(cycle))
    cycles.sort(key=lambda c: c[0])

    attractor_id = [-1] * m
    for k, cycle in enumerate(cycles):
        for s in cycle:
            attractor_id[s] = k

    basin_id = [-1] * m
    for component in nx.weakly_connected_components(graph):
        k = next(attractor_id[s] for s in component if attractor_id[s] >= 0)
        for s in component:
            basin_id[s] = k

    progeny = [0] * m
    cycle_states = [s for cycle in cycles for s in cycle]
    for depth, layer in enumerate(nx.bfs_layers(graph.reverse(copy=False), cycle_states)):
        for s in layer:
            progeny[s] = depth

    ancestry: List[Ancestry] = [INFINITE] * m
    transient = graph.subgraph(s for s in range(m) if progeny[s] > 0)
    for s in nx.topological_sort(transient):
        ancestry[s] = max((ancestry[p] + 1 for p in transient.predecessors(s)), default=0)

    length = [len(cycles[basin_id[s]]) for s in range(m)]
    return FeatureTable(
        basin_id=tuple(basin_id),
        attractor_id=tuple(basin_id),
        length=tuple(length),
        progeny=tuple(progeny),
        ancestry=tuple(ancestry),
        attractors=tuple(cycles),
    )


def dynamical_matrix(sys: DynamicalSystem) -> DynamicalMatrix:
    """动力矩阵 Φ：动力图邻接矩阵的转置"""
    m = sys.num_states
    matrix = np.full((m, m), Fraction(0), dtype=object)
    for j, target in enumerate(sys.successor):
        matrix[target, j] = Fraction(1)
    return matrix


def export_dot(sys: DynamicalSystem, labels: Optional[Sequence[Any]] = None) -> str:
    """
    以 DOT 格式导出动力图

    Args:
        sys: 动力系统
        labels: 可选的概率向量（非负、和为 1），写入顶点标签并以灰度填充

    Returns:
        DOT 文本
    """
    probabilities = None
    if labels is not None:
        if len(labels) != sys.num_states:
            raise LabelLengthMismatch(f"标签数量 {len(labels)} 与状态数 {sys.num_states} 不一致")
        probabilities = [parse_rational(v) for v in labels]
        if any(p < 0 for p in probabilities) or sum(probabilities, Fraction(0)) != 1:
            raise InvalidProbability(f"顶点标签不是概率向量: {[str(p) for p in probabilities]}")

    graph = to_graph(sys)
    graph.name = "dds"
    for s in range(sys.num_states):
        if probabilities is not None:
            p = probabilities[s]
            # 概率越大颜色越深：gray100 为白，gray30 为最深
            graph.nodes[s]['label'] = format_rational(p)
            graph.nodes[s]['style'] = 'filled'
            graph.nodes[s]['fillcolor'] = f"gray{100 - round(70 * p)}"
        elif sys.state_names is not None:
            graph.nodes[s]['label'] = sys.state_names[s]
    return nx.nx_pydot.to_pydot(graph).to_string()
