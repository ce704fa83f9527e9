"""
共享测试夹具
"""

import pytest

from src.core.rbn import parse_network
from src.core.system import build_system


@pytest.fixture
def sys_a():
    """2-环 {0, 1} 加不动点 2"""
    return build_system([1, 0, 2])


@pytest.fixture
def sys_c():
    """4-环 {0,1,2,3}、2-环 {4,5}、瞬态 6 → 0"""
    return build_system([1, 2, 3, 0, 5, 4, 0])


@pytest.fixture
def chain():
    """0 → 1 → 2 → 3 为不动点，4 → 3"""
    return build_system([1, 2, 3, 3, 3])


@pytest.fixture
def swap_network():
    return parse_network({"n": 2, "nodes": [{"parents": [1], "tt": [0, 1]}, {"parents": [0], "tt": [0, 1]}]})
