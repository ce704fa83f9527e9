"""
Core module
"""

from .engine import AnalysisEngine
from .errors import DDSError

__all__ = ['AnalysisEngine', 'DDSError']
