"""
分析引擎
把各模块的结果整理成键顺序固定、可直接 JSON 序列化的报告，
CLI 与交互式浏览器共用
"""

import json
import time
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence

from ..utils.console import print_flush
from . import deterministic, logistic, stochastic
from .errors import InvalidParameter
from .oracle import oracle_conversion_pairs
from .rational import format_rational, parse_rationals
from .rbn import BooleanNetwork, expand
from .system import DynamicalSystem, analyze, export_dot, fixed_points


def _rationals(values: Sequence) -> List[str]:
    return [format_rational(v) for v in values]


def _columns(F: Optional[stochastic.StochMatrix]) -> Optional[List[List[str]]]:
    if F is None:
        return None
    return [_rationals(column) for column in F.columns()]


def _optional_rational(value) -> Optional[str]:
    return None if value is None else format_rational(value)


def _branch(branch: logistic.Branch) -> Dict[str, Any]:
    return {
        'assignment': {name: format_rational(value) for name, value in branch.assignment},
        'free': list(branch.free),
        'undecided': branch.undecided,
        'constant': branch.is_constant,
    }


class AnalysisEngine:
    """分析引擎，负责调度计算并保存报告历史"""

    def __init__(self, config: Dict[str, Any]):
        """
        初始化分析引擎

        Args:
            config: 配置字典（load_default_config 的结果）
        """
        self.config = config
        self.history: List[Dict[str, Any]] = []
        self.state_version: int = 0
        self.last_report: Optional[Dict[str, Any]] = None
        self.on_complete: Optional[Callable] = None

    def _record(self, command: str, started: float, report: Any) -> Any:
        elapsed = time.time() - started
        self.state_version += 1
        self.last_report = {
            'version': self.state_version,
            'command': command,
            'elapsed_time': elapsed,
            'report': report,
        }
        self.history.append(self.last_report)
        print_flush(f"✅ {command} 完成，用时 {elapsed:.3f}s")
        if self.on_complete:
            self.on_complete(self.get_state())
        return report

    def _start(self, command: str) -> float:
        print_flush(f"🚀 开始 {command}")
        return time.time()

    def analyze_report(self, sys: DynamicalSystem) -> Dict[str, Any]:
        started = self._start('analyze')
        table = analyze(sys)
        sizes = table.basin_sizes
        report = {
            'states': sys.num_states,
            'attractors': [
                {'id': k, 'states': list(cycle), 'length': len(cycle), 'basin_size': sizes[k]}
                for k, cycle in enumerate(table.attractors)
            ],
            'fixed_points': list(fixed_points(sys)),
            'features': [table.row(s) for s in range(sys.num_states)],
        }
        if sys.state_names is not None:
            for row in report['features']:
                row['name'] = sys.state_names[row['state']]
        return self._record('analyze', started, report)

    def free_states_report(self, sys: DynamicalSystem) -> Dict[str, Any]:
        started = self._start('free-states')
        report = {
            'fixed_points': list(fixed_points(sys)),
            'basis': [_rationals(p) for p in stochastic.free_state_basis(sys)],
        }
        return self._record('free-states', started, report)

    def convert_report(
        self,
        sys: DynamicalSystem,
        s: int,
        s_prime: int,
        target: Optional[DynamicalSystem] = None,
        use_oracle: bool = False,
    ) -> Dict[str, Any]:
        """
        确定性转换报告；给出 target 时做跨系统判定

        Args:
            sys: 源系统
            s: 源状态
            s_prime: 目标状态
            target: 目标系统（可选）
            use_oracle: 同时附上穷举预言机的结论
        """
        started = self._start('convert')
        target_sys = target if target is not None else sys
        if target is None:
            verdict = deterministic.convertible(sys, s, s_prime)
        else:
            verdict = deterministic.convertible_cross(sys, s, target, s_prime)
        report: Dict[str, Any] = {
            'convertible': verdict.convertible,
            'failed': list(verdict.failed_conditions),
            'witness': list(verdict.witness.table) if verdict.witness else None,
        }
        if use_oracle:
            report['oracle'] = (s, s_prime) in oracle_conversion_pairs(sys, target_sys)
        return self._record('convert', started, report)

    def stochastic_convert_report(
        self,
        sys: DynamicalSystem,
        source: Sequence[Any],
        target: Sequence[Any],
    ) -> Dict[str, Any]:
        started = self._start('convert --stochastic')
        p = stochastic.ProbVec.parse(source)
        q = stochastic.ProbVec.parse(target)
        verdict = stochastic.decide_conversion(sys, p, q)
        report = {
            'feasible': verdict.feasible,
            'witness': _columns(verdict.witness),
            'certificate': _optional_rational(verdict.certificate),
        }
        return self._record('convert --stochastic', started, report)

    def witness_report(
        self,
        sys: DynamicalSystem,
        s: int,
        s_prime: int,
        target: Optional[DynamicalSystem] = None,
    ) -> Dict[str, Any]:
        started = self._start('witness')
        if target is None:
            f = deterministic.construct_witness(sys, s, s_prime)
        else:
            f = deterministic.construct_cross_witness(sys, s, target, s_prime)
        report = {
            'from': s,
            'to': s_prime,
            'witness': list(f.table),
            'covariant': deterministic.is_covariant(f),
        }
        return self._record('witness', started, report)

    def transition_report(self, sys: DynamicalSystem, s: int, s_prime: int) -> Dict[str, Any]:
        started = self._start('transition')
        verdict = stochastic.transition_allowed(sys, s, s_prime)
        report = {
            'verdict': verdict.kind.value,
            'reasons': list(verdict.reasons),
            'max_probability': _optional_rational(verdict.value),
            'witness': _columns(verdict.witness),
        }
        return self._record('transition', started, report)

    def rbn_report(
        self, net: BooleanNetwork, max_genes: Optional[int] = None, with_analysis: bool = False
    ) -> Dict[str, Any]:
        started = self._start('rbn-expand')
        sys = expand(net, max_genes=max_genes)
        report: Dict[str, Any] = {
            'genes': net.num_genes,
            'states': sys.num_states,
            'phi': list(sys.successor),
        }
        if with_analysis:
            table = analyze(sys)
            report['attractor_lengths'] = sorted(len(cycle) for cycle in table.attractors)
            report['attractors'] = [list(cycle) for cycle in table.attractors]
        return self._record('rbn-expand', started, report)

    def logistic_report(
        self,
        check: str,
        degree: int = 2,
        assignment: Optional[Mapping[str, Any]] = None,
        r_values: Optional[Sequence[Any]] = None,
        grid: Optional[int] = None,
    ) -> Dict[str, Any]:
        """
        logistic 映射检查

        Args:
            check: equations / verify / cubic / range / saturation
            degree: 影响的次数
            assignment: verify 用的系数赋值
            r_values: r 的取值；cubic、range、saturation 使用
            grid: range 的网格分母
        """
        started = self._start(f'logistic {check}')
        report: Dict[str, Any] = {'check': check}
        if check == 'equations':
            equations = logistic.covariance_equations(degree)
            report['degree'] = degree
            report['equations'] = [str(eq.as_expr()) for eq in equations]
            if r_values:
                report['branches'] = {
                    format_rational(r): [_branch(b) for b in logistic.solve_branches(
                        equations, logistic.unknowns(degree), r)]
                    for r in parse_rationals(r_values)
                }
        elif check == 'verify':
            if assignment is None:
                raise InvalidParameter("verify 需要 --assignment")
            equations = logistic.covariance_equations(degree)
            report['degree'] = degree
            report['assignment'] = {str(k): str(v) for k, v in assignment.items()}
            report['covariant'] = logistic.verify_solution(equations, assignment)
        elif check == 'cubic':
            cubic = logistic.cubic_inconsistency_check(r_values or None)
            report['field'] = cubic.field
            report['samples'] = [
                {
                    'r': format_rational(sample.r),
                    'inconsistent': sample.inconsistent,
                    'cubic_branches': [_branch(b) for b in sample.cubic_branches],
                    'undecided': [_branch(b) for b in sample.undecided],
                    'other_branches': [
                        _branch(b) for b in sample.branches
                        if not b.is_cubic and b.undecided is None
                    ],
                }
                for sample in cubic.samples
            ]
            report['all_inconsistent'] = cubic.all_inconsistent
        elif check == 'range':
            results = []
            for r in parse_rationals(r_values or ['0', '1/2', '1', '3/2', '2']):
                verdict = logistic.linear_case_range(r, grid)
                results.append({
                    'r': format_rational(r),
                    'verdict': verdict.kind,
                    'witness': _optional_rational(verdict.witness),
                    'value': _optional_rational(verdict.value),
                })
            report['results'] = results
        elif check == 'saturation':
            results = logistic.saturation_check(r_values or None)
            report['results'] = [
                {
                    'r': format_rational(item.r),
                    'x0': format_rational(item.x0),
                    'final': item.final,
                    'passed': item.passed,
                }
                for item in results
            ]
            report['all_passed'] = all(item.passed for item in results)
        else:
            raise InvalidParameter(f"未知的检查类型: {check}")
        return self._record(f'logistic {check}', started, report)

    def dot_report(self, sys: DynamicalSystem, labels: Optional[Sequence[Any]] = None) -> str:
        started = self._start('export-dot')
        probabilities = stochastic.ProbVec.parse(labels) if labels is not None else None
        return self._record('export-dot', started, export_dot(sys, probabilities))

    def get_state(self) -> Dict[str, Any]:
        """
        获取当前状态

        Returns:
            状态字典
        """
        return {
            'state_version': self.state_version,
            'reports': len(self.history),
            'last_command': self.last_report['command'] if self.last_report else None,
            'last_report': self.last_report,
        }

    def get_reports(self, since_version: Optional[int] = None) -> List[Dict[str, Any]]:
        if since_version is None:
            return list(self.history)
        return [r for r in self.history if r['version'] > since_version]

    def render(self, report: Any) -> str:
        """报告转文本：DOT 原样输出，其余为缩进 JSON"""
        if isinstance(report, str):
            return report
        indent = self.config.get('output', {}).get('indent', 2)
        return json.dumps(report, indent=indent, ensure_ascii=False)
