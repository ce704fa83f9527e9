"""
离散 logistic 映射上的多项式协变影响
符号部分用 sympy 在有理数域上精确计算；饱和性检查用 numpy 浮点迭代
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import sympy as sp

from ..utils.config import get_setting
from .errors import InvalidParameter, MissingSymbol, UnsupportedDegree
from .rational import parse_rational, parse_rationals

X, R, A3, A, B, C = sp.symbols('x r a3 a b c')
SYMBOL_ORDER = (X, R, A3, A, B, C)
SYMBOLS = {str(s): s for s in SYMBOL_ORDER}

# 多项式一律用 sympy.Poly 表示（有理系数、规范单项式顺序）
MultiPoly = sp.Poly

_EXPR_RE = re.compile(r"^[0-9r+\-*/() ]+$")


def to_poly(expr: Any) -> MultiPoly:
    expr = sp.expand(sp.sympify(expr))
    gens = [s for s in SYMBOL_ORDER if s in expr.free_symbols] or [X]
    return sp.Poly(expr, *gens, domain=sp.QQ)


def logistic_generator() -> MultiPoly:
    """φ(x) = r x (1 − x)"""
    return to_poly(R * X * (1 - X))


def influence(degree: int) -> MultiPoly:
    """一般的二次或三次影响 f(x)"""
    if degree == 2:
        return to_poly(A * X**2 + B * X + C)
    if degree == 3:
        return to_poly(A3 * X**3 + A * X**2 + B * X + C)
    raise UnsupportedDegree(f"只支持 2 次和 3 次影响，收到 {degree}")


def unknowns(degree: int) -> Tuple[sp.Symbol, ...]:
    if degree == 2:
        return (A, B, C)
    if degree == 3:
        return (A3, A, B, C)
    raise UnsupportedDegree(f"只支持 2 次和 3 次影响，收到 {degree}")


def compose(outer: MultiPoly, inner: MultiPoly) -> MultiPoly:
    """把 inner 代入 outer 中的 x，其他符号原样保留"""
    return to_poly(outer.as_expr().subs(X, inner.as_expr()))


def covariance_equations(influence_degree: int) -> List[MultiPoly]:
    """
    f∘φ − φ∘f 按 x 的降幂收集的系数，去掉恒为零的项

    每个返回的多项式（关于 r 与未知系数）都必须恒为零才满足协变
    """
    f = influence(influence_degree)
    phi = logistic_generator()
    difference = compose(f, phi).as_expr() - compose(phi, f).as_expr()
    equations = []
    for coefficient in sp.Poly(difference, X).all_coeffs():
        coefficient = sp.expand(coefficient)
        if coefficient != 0:
            equations.append(to_poly(coefficient))
    return equations


def _as_expr(value: Any) -> sp.Expr:
    if isinstance(value, sp.Poly):
        return value.as_expr()
    if isinstance(value, sp.Expr):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        value = Fraction(value)
        return sp.Rational(value.numerator, value.denominator)
    if isinstance(value, str) and _EXPR_RE.match(value):
        try:
            return sp.sympify(value, locals={'r': R})
        except (sp.SympifyError, SyntaxError, TypeError) as e:
            raise InvalidParameter(f"无法解析表达式 {value!r}: {e}")
    raise InvalidParameter(f"赋值只能是有理数或关于 r 的表达式: {value!r}")


def _as_symbol(key: Any) -> sp.Symbol:
    if isinstance(key, sp.Symbol):
        return key
    if key in SYMBOLS:
        return SYMBOLS[key]
    raise InvalidParameter(f"未知符号 {key!r}")


def verify_solution(equations: Sequence[MultiPoly], assignment: Mapping[Any, Any]) -> bool:
    """
    代入后每个方程是否都成为零多项式

    Args:
        equations: covariance_equations 的结果
        assignment: 符号 → 关于 r 的多项式（也接受有理数与 "-r" 这样的字符串）

    Returns:
        是否全部恒为零
    """
    values = {_as_symbol(k): _as_expr(v) for k, v in assignment.items()}
    needed = set()
    for eq in equations:
        needed |= eq.as_expr().free_symbols
    missing = sorted(str(s) for s in needed - {R, X} - set(values))
    if missing:
        raise MissingSymbol(f"缺少符号赋值: {', '.join(missing)}")
    return all(sp.expand(eq.as_expr().subs(values)) == 0 for eq in equations)


def _to_fraction(value: sp.Rational) -> Fraction:
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class Branch:
    """
    一个解分支

    assignment 为已确定的未知数取值；free 为始终未受约束的未知数；
    undecided 非空时表示遇到了在 ℚ 上不可约但有实根的因子，无法在有理数域内判定
    """

    assignment: Tuple[Tuple[str, Fraction], ...]
    free: Tuple[str, ...] = ()
    undecided: Optional[str] = None

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(self.assignment)

    @property
    def is_constant(self) -> bool:
        """除常数项外的系数都为零，即 f 是常值映射"""
        return self.undecided is None and not self.free and all(
            value == 0 for name, value in self.assignment if name != 'c'
        )

    @property
    def is_cubic(self) -> bool:
        return self.undecided is None and self.as_dict().get('a3', Fraction(0)) != 0


def solve_branches(
    equations: Sequence[MultiPoly], symbols: Sequence[sp.Symbol], r: Any
) -> List[Branch]:
    """
    在给定 r 下对方程组做三角化分支枚举

    依次取第一个只含一个未知数的非零方程，在 ℚ 上因式分解：
    一次因子给出有理根并继续分支；有实根的高次因子记为 undecided；
    无实根的因子直接舍弃。出现非零常数方程的分支被剪掉。

    Args:
        equations: 方程（关于 r 与未知数的多项式）
        symbols: 未知数
        r: 参数取值（有理数）

    Returns:
        存活的分支列表
    """
    r_value = _as_expr(parse_rational(r) if isinstance(r, str) else r)
    system = [sp.expand(eq.as_expr().subs(R, r_value)) for eq in equations]
    symbol_set = set(symbols)
    branches: List[Branch] = []

    def record(assignment: Dict[sp.Symbol, sp.Rational], undecided: Optional[str] = None):
        fixed = tuple((str(s), _to_fraction(assignment[s])) for s in symbols if s in assignment)
        free = tuple(str(s) for s in symbols if s not in assignment)
        branches.append(Branch(fixed, () if undecided else free, undecided))

    def descend(assignment: Dict[sp.Symbol, sp.Rational]):
        current = [sp.expand(eq.subs(assignment)) for eq in system]
        current = [eq for eq in current if eq != 0]
        if not current:
            record(assignment)
            return
        if any(not (eq.free_symbols & symbol_set) for eq in current):
            return
        step = next((eq for eq in current if len(eq.free_symbols & symbol_set) == 1), None)
        if step is None:
            record(assignment, undecided=f"非三角方程组: {current[0]}")
            return
        (var,) = step.free_symbols & symbol_set
        _, factors = sp.factor_list(step, var)
        for factor, _multiplicity in factors:
            poly = sp.Poly(factor, var)
            if poly.degree() == 1:
                c1, c0 = poly.all_coeffs()
                descend({**assignment, var: -c0 / c1})
            elif poly.count_roots() > 0:
                record(assignment, undecided=f"{var}: {factor} = 0")

    descend({})
    return branches


@dataclass(frozen=True)
class CubicSample:
    r: Fraction
    branches: Tuple[Branch, ...]

    @property
    def cubic_branches(self) -> Tuple[Branch, ...]:
        return tuple(b for b in self.branches if b.is_cubic)

    @property
    def undecided(self) -> Tuple[Branch, ...]:
        return tuple(b for b in self.branches if b.undecided is not None)

    @property
    def inconsistent(self) -> bool:
        """ℚ 上没有真正三次的分支，且没有无法判定的分支"""
        return not self.cubic_branches and not self.undecided


@dataclass(frozen=True)
class CubicReport:
    samples: Tuple[CubicSample, ...]
    field: str = "QQ"

    @property
    def all_inconsistent(self) -> bool:
        return all(sample.inconsistent for sample in self.samples)


def cubic_inconsistency_check(r_samples: Optional[Sequence[Any]] = None) -> CubicReport:
    """
    对每个采样的 r 枚举三次影响的有理解分支

    Args:
        r_samples: 非零有理数；默认读配置 logistic.cubic_r_samples

    Returns:
        CubicReport，存活的三次分支会被如实列出
    """
    if r_samples is None:
        r_samples = get_setting('logistic.cubic_r_samples')
    values = parse_rationals(r_samples)
    if not values or any(v == 0 for v in values):
        raise InvalidParameter("r 采样必须非空且不含 0")
    equations = covariance_equations(3)
    samples = tuple(
        CubicSample(r, tuple(solve_branches(equations, unknowns(3), r))) for r in values
    )
    return CubicReport(samples)


@dataclass(frozen=True)
class RangeVerdict:
    """WellPosed 时 witness 为 None；Escapes 时给出 g(x) 越出 [0, 1] 的点"""

    well_posed: bool
    witness: Optional[Fraction] = None
    value: Optional[Fraction] = None

    @property
    def kind(self) -> str:
        return "WellPosed" if self.well_posed else "Escapes"


def linear_case_range(r: Any, grid_denominator: Optional[int] = None) -> RangeVerdict:
    """
    检查 g(x) = (1+r)x − r x² 是否把 [0, 1] 映入自身

    先看顶点 x* = (1+r)/(2r)（若在 [0, 1] 内），再看网格 {k/D}

    Args:
        r: 非负有理数
        grid_denominator: 网格分母 D，默认读配置

    Returns:
        RangeVerdict
    """
    r = parse_rational(r)
    if r < 0:
        raise InvalidParameter(f"r 必须非负，收到 {r}")
    if grid_denominator is None:
        grid_denominator = int(get_setting('logistic.grid_denominator'))
    if grid_denominator <= 0:
        raise InvalidParameter(f"网格分母必须为正，收到 {grid_denominator}")

    def g(x: Fraction) -> Fraction:
        return (1 + r) * x - r * x * x

    candidates = []
    if r > 0:
        vertex = (1 + r) / (2 * r)
        if 0 <= vertex <= 1:
            candidates.append(vertex)
    candidates.extend(Fraction(k, grid_denominator) for k in range(grid_denominator + 1))
    for x in candidates:
        value = g(x)
        if not 0 <= value <= 1:
            return RangeVerdict(False, x, value)
    return RangeVerdict(True)


@dataclass(frozen=True)
class SaturationResult:
    r: Fraction
    x0: Fraction
    final: float
    passed: bool


def saturation_check(
    r_values: Optional[Sequence[Any]] = None,
    x0_values: Optional[Sequence[Any]] = None,
    steps: Optional[int] = None,
    tolerance: Optional[float] = None,
) -> List[SaturationResult]:
    """
    线性影响 x ← r x (1 − x) + x 迭代后是否收敛到 1

    所有 (r, x0) 组合一起用 numpy 向量化迭代；参数默认读配置
    """
    r_values = parse_rationals(r_values if r_values is not None else get_setting('logistic.saturation_r'))
    x0_values = parse_rationals(x0_values if x0_values is not None else get_setting('logistic.saturation_x0'))
    steps = int(get_setting('logistic.saturation_steps')) if steps is None else steps
    tolerance = float(get_setting('logistic.saturation_tolerance')) if tolerance is None else tolerance

    rates = np.array([float(v) for v in r_values])[:, None]
    xs = np.tile(np.array([float(v) for v in x0_values]), (len(r_values), 1))
    for _ in range(steps):
        xs = xs + rates * xs * (1.0 - xs)

    results = []
    for i, r in enumerate(r_values):
        for j, x0 in enumerate(x0_values):
            final = float(xs[i, j])
            results.append(SaturationResult(r, x0, final, abs(final - 1.0) < tolerance))
    return results


def orbit(r: Any, x0: Any, steps: int, a: Any = 0, b: Any = 0, c: Any = 0) -> np.ndarray:
    """受影响的递推 x ← r x (1 − x) + a x² + b x + c 的浮点轨道（含 x0）"""
    r, x0, a, b, c = (float(parse_rational(v)) for v in (r, x0, a, b, c))
    values = np.empty(steps + 1)
    values[0] = x0
    with np.errstate(over='ignore', invalid='ignore'):
        for n in range(steps):
            x = values[n]
            values[n + 1] = r * x * (1.0 - x) + a * x * x + b * x + c
    return values
