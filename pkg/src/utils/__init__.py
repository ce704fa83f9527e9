"""
Utils module

i18n 依赖 streamlit，按需从 src.utils.i18n 导入
"""

from .config import get_setting, load_default_config
from .console import print_flush

__all__ = [
    'get_setting',
    'load_default_config',
    'print_flush',
]
