"""
有理数文本编解码
JSON 中的有理数一律写作 "n/d" 字符串
"""

import re
from fractions import Fraction
from typing import Any, Iterable, List

from .errors import InvalidRational

_RATIONAL_RE = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(value: Any) -> Fraction:
    """
    解析有理数，接受整数或 "n" / "n/d" 字符串，拒绝浮点数

    Args:
        value: JSON 中读到的值

    Returns:
        约分后的 Fraction
    """
    if isinstance(value, bool):
        raise InvalidRational(f"不是有理数: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str) and _RATIONAL_RE.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise InvalidRational(f"分母为零: {value!r}")
    raise InvalidRational(f"不是有理数 (只接受整数或 'n/d' 字符串): {value!r}")


def parse_rationals(values: Iterable[Any]) -> List[Fraction]:
    return [parse_rational(v) for v in values]


def format_rational(value: Fraction) -> str:
    """规范形式：既约、分母为正，整数不带分母"""
    return str(Fraction(value))
