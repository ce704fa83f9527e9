"""
默认配置加载
"""

import copy
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

import yaml

CONFIG_PATH = Path(__file__).parent.parent / "config" / "default.yaml"


@lru_cache(maxsize=1)
def _load_cached() -> Dict[str, Any]:
    with open(CONFIG_PATH, 'r', encoding='utf-8') as f:
        return yaml.safe_load(f)


def load_default_config() -> Dict[str, Any]:
    """加载默认配置（返回副本，调用方可自由修改）"""
    return copy.deepcopy(_load_cached())


def get_setting(dotted_key: str) -> Any:
    """
    读取单个配置项

    Args:
        dotted_key: 以点分隔的键，如 'limits.rbn_max_genes'

    Returns:
        配置值
    """
    current: Any = _load_cached()
    for key in dotted_key.split('.'):
        current = current[key]
    return copy.deepcopy(current)
