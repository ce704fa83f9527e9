"""
控制台输出工具
进度信息统一写到 stderr，stdout 只留给报告
"""

import sys


def print_flush(*args, **kwargs):
    """打印并立即刷新输出到控制台"""
    kwargs.setdefault("file", sys.stderr)
    print(*args, **kwargs)
    kwargs["file"].flush()
