"""
错误类型
所有领域错误共享一个基类，携带稳定的机器可读错误码
"""

from typing import Any, Dict


class DDSError(Exception):
    """领域错误基类，code 即类名"""

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.__class__.__name__)
        self.detail = detail

    @property
    def code(self) -> str:
        return self.__class__.__name__

    def to_payload(self) -> Dict[str, Any]:
        """CLI 输出用的错误载荷"""
        return {"error": self.code, "detail": self.detail}


class EmptySystem(DDSError):
    pass


class OutOfRangeSuccessor(DDSError):
    def __init__(self, index: int, value: int):
        super().__init__(f"状态 {index} 的后继 {value} 越界")
        self.index = index
        self.value = value


class OutOfRangeState(DDSError):
    def __init__(self, state: int, num_states: int):
        super().__init__(f"状态 {state} 不在 [0, {num_states}) 内")
        self.state = state
        self.num_states = num_states


class LabelLengthMismatch(DDSError):
    pass


class SystemMismatch(DDSError):
    pass


class NotConvertible(DDSError):
    pass


class LengthMismatch(DDSError):
    pass


class DimensionMismatch(DDSError):
    pass


class InvalidProbability(DDSError):
    pass


class InvalidRational(DDSError):
    pass


class SchemaError(DDSError):
    pass


class TruthTableSizeMismatch(DDSError):
    def __init__(self, node: int, expected: int, actual: int):
        super().__init__(f"节点 {node} 的真值表长度应为 {expected}，实际为 {actual}")
        self.node = node
        self.expected = expected
        self.actual = actual


class ParentOutOfRange(DDSError):
    def __init__(self, node: int, parent: int):
        super().__init__(f"节点 {node} 的父节点 {parent} 越界")
        self.node = node
        self.parent = parent


class NetworkTooLarge(DDSError):
    def __init__(self, num_genes: int, cap: int):
        super().__init__(f"网络有 {num_genes} 个基因，超过上限 {cap}")
        self.num_genes = num_genes
        self.cap = cap


class UnsupportedDegree(DDSError):
    pass


class MissingSymbol(DDSError):
    pass


class SearchSpaceTooLarge(DDSError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"映射空间大小 {size} 超过上限 {cap}")
        self.size = size
        self.cap = cap


class InvalidParameter(DDSError):
    pass


class OutputError(DDSError):
    pass
