"""
命令行入口
子命令：analyze / free-states / convert / witness / transition / rbn-expand / logistic / export-dot

退出码：0 成功；1 为 --strict 下的否定结论或无法构造见证；2 为输入错误
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, List, Optional, Tuple

from .core.engine import AnalysisEngine
from .core.errors import DDSError, NotConvertible, OutputError, SchemaError
from .core.rbn import parse_network
from .core.system import load_system
from .utils.config import load_default_config

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2


def _emit_error(code: str, detail: str):
    print(json.dumps({"error": code, "detail": detail}, ensure_ascii=False))


class _JsonArgumentParser(argparse.ArgumentParser):
    """用法错误也输出机器可读的载荷"""

    def error(self, message: str):
        _emit_error("UsageError", message)
        self.exit(EXIT_INPUT_ERROR)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise SchemaError(f"无法读取 {path}: {e.strerror or e}")


def _json_argument(text: Optional[str], what: str) -> Any:
    if text is None:
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{what} 不是合法 JSON: {e}")


def _vector_argument(text: Optional[str], what: str) -> Optional[List[Any]]:
    value = _json_argument(text, what)
    if value is not None and not isinstance(value, list):
        raise SchemaError(f"{what} 必须是 JSON 数组")
    return value


def _write_text(path: str, text: str):
    try:
        Path(path).write_text(text, encoding='utf-8')
    except OSError as e:
        raise OutputError(f"无法写入 {path}: {e.strerror or e}")


def build_parser() -> argparse.ArgumentParser:
    parser = _JsonArgumentParser(
        prog='dds-covariance',
        description='离散动力系统在协变影响下的状态转换分析',
    )
    commands = parser.add_subparsers(dest='command', required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument('--output', help='报告写入的文件，默认 stdout')
        return sub

    def with_system(sub: argparse.ArgumentParser):
        sub.add_argument('--system', required=True, help='系统 JSON 文件')

    def with_pair(sub: argparse.ArgumentParser):
        sub.add_argument('--from', dest='source', type=int, required=True, help='初始状态')
        sub.add_argument('--to', dest='target', type=int, required=True, help='目标状态')

    sub = command('analyze', '吸引子、吸引域与特征表')
    with_system(sub)

    sub = command('free-states', '自由确定态与自由随机态')
    with_system(sub)

    sub = command('convert', '判定 s → s\' 是否可转换')
    with_system(sub)
    with_pair(sub)
    sub.add_argument('--target-system', help='跨系统转换的目标系统 JSON 文件')
    sub.add_argument('--stochastic', action='store_true', help='随机影响下判定概率向量的转换')
    sub.add_argument('--source-vec', help='初始概率向量，如 \'["0","0","1"]\'')
    sub.add_argument('--target-vec', help='目标概率向量')
    sub.add_argument('--strict', action='store_true', help='否定结论以退出码 1 结束')
    sub.add_argument('--oracle', action='store_true', help=argparse.SUPPRESS)

    sub = command('witness', '构造协变见证映射')
    with_system(sub)
    with_pair(sub)
    sub.add_argument('--target-system', help='跨系统转换的目标系统 JSON 文件')

    sub = command('transition', '随机影响下的转移判定')
    with_system(sub)
    with_pair(sub)
    sub.add_argument('--strict', action='store_true', help='Forbidden 以退出码 1 结束')

    sub = command('rbn-expand', '把布尔网络展开为动力系统')
    sub.add_argument('--network', required=True, help='网络 JSON 文件')
    sub.add_argument('--max-genes', type=int, help='基因数上限')
    sub.add_argument('--analyze', action='store_true', help='同时给出吸引子')

    sub = command('logistic', 'logistic 映射的协变影响检查')
    sub.add_argument(
        '--check', required=True, choices=['equations', 'verify', 'cubic', 'range', 'saturation']
    )
    sub.add_argument('--degree', type=int, choices=[2, 3], default=2)
    sub.add_argument('--assignment', help='系数赋值 JSON，如 \'{"a": "-r", "b": "r", "c": "0"}\'')
    sub.add_argument('--r', dest='r_values', nargs='+', help='r 的取值（有理数）')
    sub.add_argument('--grid', type=int, help='range 检查的网格分母')

    sub = command('export-dot', '导出 DOT 动力图')
    with_system(sub)
    sub.add_argument('--labels', help='概率向量 JSON，作为顶点标签')

    return parser


def _run(args: argparse.Namespace, engine: AnalysisEngine) -> Tuple[Any, bool]:
    """执行子命令，返回 (报告, 是否为否定结论)"""
    if args.command == 'rbn-expand':
        net = parse_network(_read_text(args.network))
        return engine.rbn_report(net, max_genes=args.max_genes, with_analysis=args.analyze), False

    if args.command == 'logistic':
        assignment = _json_argument(args.assignment, '--assignment')
        if assignment is not None and not isinstance(assignment, dict):
            raise SchemaError("--assignment 必须是 JSON 对象")
        report = engine.logistic_report(
            args.check, degree=args.degree, assignment=assignment,
            r_values=args.r_values, grid=args.grid,
        )
        return report, False

    sys_ = load_system(_read_text(args.system))

    if args.command == 'analyze':
        return engine.analyze_report(sys_), False
    if args.command == 'free-states':
        return engine.free_states_report(sys_), False
    if args.command == 'export-dot':
        return engine.dot_report(sys_, _vector_argument(args.labels, '--labels')), False

    target = load_system(_read_text(args.target_system)) if getattr(args, 'target_system', None) else None

    if args.command == 'convert' and args.stochastic:
        sys_.check_state(args.source)
        sys_.check_state(args.target)
        source_vec = _vector_argument(args.source_vec, '--source-vec')
        target_vec = _vector_argument(args.target_vec, '--target-vec')
        if source_vec is None:
            source_vec = [int(k == args.source) for k in range(sys_.num_states)]
        if target_vec is None:
            target_vec = [int(k == args.target) for k in range(sys_.num_states)]
        report = engine.stochastic_convert_report(sys_, source_vec, target_vec)
        return report, not report['feasible']
    if args.command == 'convert':
        report = engine.convert_report(sys_, args.source, args.target, target, use_oracle=args.oracle)
        return report, not report['convertible']
    if args.command == 'witness':
        return engine.witness_report(sys_, args.source, args.target, target), False
    if args.command == 'transition':
        report = engine.transition_report(sys_, args.source, args.target)
        return report, report['verdict'] == 'Forbidden'
    raise SchemaError(f"未知子命令 {args.command}")


def main(argv: Optional[List[str]] = None) -> int:
    """
    CLI 主函数

    Args:
        argv: 命令行参数，默认 sys.argv[1:]

    Returns:
        退出码
    """
    args = build_parser().parse_args(argv)
    engine = AnalysisEngine(load_default_config())
    try:
        report, negative = _run(args, engine)
    except DDSError as e:
        print(json.dumps(e.to_payload(), ensure_ascii=False))
        return EXIT_NEGATIVE if isinstance(e, NotConvertible) else EXIT_INPUT_ERROR

    text = engine.render(report)
    if args.output:
        try:
            _write_text(args.output, text + "\n")
        except OutputError as e:
            print(json.dumps(e.to_payload(), ensure_ascii=False))
            return EXIT_INPUT_ERROR
    else:
        print(text)
    if negative and getattr(args, 'strict', False):
        return EXIT_NEGATIVE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
