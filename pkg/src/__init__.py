"""
DDS Covariance: 离散动力系统协变影响分析
"""

__version__ = "0.1.0"
