#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tuple-QA 命令行入口

子命令：
- build-kb   构建并保存元组知识库索引
- answer     对问题文件作答，输出JSON行
- evaluate   评测准确率（元组求解器或检索基线）
- compare    比较两份评测报告并做显著性检验

退出码：0 成功，1 用法或配置错误，2 数据错误，3 内部错误。
"""

import argparse
import json
import logging
import os
import sys
import time
from typing import Any, Dict, Iterable, List, Optional

from tuple_qa.config import Config, load_config
from tuple_qa.eval.metrics import EvaluationReport, evaluate
from tuple_qa.eval.sentence_index import IRSolver, SentenceIndex
from tuple_qa.eval.significance import compare_reports
from tuple_qa.kb.loader import load_kb, load_sentence_tuples, load_tables, load_tuple_kb, save_kb
from tuple_qa.qa.pipeline import QuestionAnswerer
from tuple_qa.qa.questions import load_questions
from tuple_qa.text import TextAnalyzer
from tuple_qa.utils.exceptions import ConfigError, DataError, EvaluationError, TextError, TupleQAError
from tuple_qa.utils.logger import set_global_config, setup_logger

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

SOLVER_TUPLE = 'tupleinf'
SOLVER_IR = 'ir'

logger = logging.getLogger('tuple_qa.cli')


class _ArgumentParser(argparse.ArgumentParser):
    """用法错误以退出码1结束"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    """
    构建命令行解析器

    Returns:
        argparse.ArgumentParser: 解析器
    """
    parser = _ArgumentParser(prog='tuple-qa', description='Tuple-QA: 基于开放信息抽取元组的多选题推理问答')

    parser.add_argument('-c', '--config',
                        help='配置文件路径 (YAML，缺省使用内置默认配置)')
    parser.add_argument('-l', '--log-level',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                        help='日志级别 (覆盖配置文件中的 log.level)')
    parser.add_argument('--log-file',
                        help='日志文件路径 (覆盖配置文件中的 log.file)')

    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND', parser_class=_ArgumentParser)
    subparsers.required = True

    build = subparsers.add_parser('build-kb', help='构建并保存元组知识库索引')
    build.add_argument('--tuples', required=True, help='元组TSV文件')
    build.add_argument('--out', required=True, help='输出目录')

    answer = subparsers.add_parser('answer', help='对问题文件作答')
    answer.add_argument('--kb', required=True, help='知识库目录或元组TSV文件')
    answer.add_argument('--questions', required=True, help='问题文件 (JSON行)')
    answer.add_argument('--sentences', help='即时元组句子文件 (JSON行)')
    answer.add_argument('--tables', help='整理表格文件 (JSON)')
    answer.add_argument('--graphs', help='支持图输出文件 (JSON行)')
    answer.add_argument('-o', '--output', help='作答结果输出文件 (缺省为标准输出)')
    answer.add_argument('--workers', type=int, help='并发线程数 (覆盖 evaluation.workers)')

    evaluate_parser = subparsers.add_parser('evaluate', help='评测准确率')
    evaluate_parser.add_argument('--kb', help='知识库目录或元组TSV文件 (tupleinf求解器必需)')
    evaluate_parser.add_argument('--questions', required=True, help='带标准答案的问题文件 (JSON行)')
    evaluate_parser.add_argument('--solver', choices=[SOLVER_TUPLE, SOLVER_IR], default=SOLVER_TUPLE,
                          help='求解器 (默认: tupleinf)')
    evaluate_parser.add_argument('--sentences', help='句子文件：tupleinf用于即时元组，ir用作检索语料')
    evaluate_parser.add_argument('--tables', help='整理表格文件 (JSON，仅tupleinf)')
    evaluate_parser.add_argument('-o', '--output', help='评测报告输出文件 (缺省为标准输出)')
    evaluate_parser.add_argument('--workers', type=int, help='并发线程数 (覆盖 evaluation.workers)')

    compare = subparsers.add_parser('compare', help='比较两份评测报告')
    compare.add_argument('--reports', nargs=2, required=True, metavar=('A.json', 'B.json'),
                         help='两份评测报告')
    compare.add_argument('-o', '--output', help='比较结果输出文件 (缺省为标准输出)')

    return parser


def _open_output(path: Optional[str]):
    if not path:
        return None
    output_dir = os.path.dirname(path)
    try:
        if output_dir:
            os.makedirs(output_dir, exist_ok=True)
        return open(path, 'w', encoding='utf-8')
    except OSError as e:
        raise DataError(f"无法写入输出文件: {path}: {str(e)}")


def write_lines(lines: Iterable[str], path: Optional[str]) -> None:
    """写出文本行到文件或标准输出"""
    handle = _open_output(path)
    stream = handle or sys.stdout
    try:
        for line in lines:
            stream.write(line + "\n")
    finally:
        if handle:
            handle.close()
        else:
            stream.flush()


def _json(data: Any, indent: Optional[int] = None) -> str:
    return json.dumps(data, ensure_ascii=False, sort_keys=True, indent=indent)


def _workers(args, config: Config) -> int:
    return args.workers if args.workers else int(config.get('evaluation.workers', 1))


def _build_answerer(args, config: Config, analyzer: TextAnalyzer) -> QuestionAnswerer:
    kb = load_kb(args.kb, analyzer)
    sentences = load_sentence_tuples(args.sentences) if args.sentences else None
    tables = load_tables(args.tables) if args.tables else None
    return QuestionAnswerer(config, kb, sentences, tables, analyzer=analyzer)


def cmd_build_kb(args, config: Config) -> int:
    analyzer = TextAnalyzer.from_config(config)
    kb = load_tuple_kb(args.tuples, analyzer)
    save_kb(kb, args.out)
    logger.info(f"知识库统计: {_json(kb.stats())}")
    return EXIT_OK


def cmd_answer(args, config: Config) -> int:
    analyzer = TextAnalyzer.from_config(config)
    questions = load_questions(args.questions, analyzer)
    answerer = _build_answerer(args, config, analyzer)
    results = answerer.answer_all(questions, workers=_workers(args, config))

    write_lines((_json(r.to_dict()) for r in results), args.output)
    if args.graphs:
        graph_lines = []
        for r in results:
            graphs = [a.support.to_dict() for a in r.ranking if a.support is not None]
            graph_lines.append(_json({'id': r.question_id, 'graphs': graphs}))
        write_lines(graph_lines, args.graphs)
        logger.info(f"支持图已保存到: {args.graphs}")

    failed = sum(1 for r in results if r.error)
    abstained = sum(1 for r in results if r.abstain)
    logger.info(f"作答完成: {len(results)} 道题, 弃权 {abstained} 道, 失败 {failed} 道")
    return EXIT_OK


def cmd_evaluate(args, config: Config, parser: argparse.ArgumentParser) -> int:
    analyzer = TextAnalyzer.from_config(config)
    if args.solver == SOLVER_TUPLE:
        if not args.kb:
            parser.error("tupleinf 求解器需要 --kb")
        solver = _build_answerer(args, config, analyzer)
    else:
        if not args.sentences:
            parser.error("ir 求解器需要 --sentences")
        solver = IRSolver.from_config(SentenceIndex.from_file(args.sentences, analyzer), config)

    questions = load_questions(args.questions, analyzer)
    report = evaluate(solver.answer_safe, questions,
                      tie_credit=config.get('evaluation.tie_credit', 'fractional'),
                      workers=_workers(args, config), solver_name=args.solver)

    write_lines([report.to_json().rstrip("\n")], args.output)
    logger.info(f"{args.solver} 准确率: {report.accuracy:.4f} ({report.n} 道题)")
    return EXIT_OK


def cmd_compare(args, config: Config) -> int:
    report_a = EvaluationReport.load(args.reports[0])
    report_b = EvaluationReport.load(args.reports[1])
    result = compare_reports(report_a, report_b, alpha=float(config.get('evaluation.significance_level', 0.05)))
    write_lines([_json(result.to_dict(), indent=2)], args.output)
    logger.info(f"分歧 {result.disagreements} 道, p = {result.p_value}, 显著: {result.significant}")
    return EXIT_OK


def _setup_logging(args, config: Config) -> None:
    set_global_config(config)
    setup_logger(
        log_level=args.log_level or config.get('log.level', 'INFO'),
        log_file=args.log_file or config.get('log.file'),
        max_bytes=int(config.get('log.max_size', 10)) * 1024 * 1024,
        backup_count=int(config.get('log.backup_count', 5)),
        detailed=bool(config.get('log.detailed', False)),
        json_format=bool(config.get('log.json_format', False)),
        separate_error_log=bool(config.get('log.separate_error_log', False)),
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    主程序入口点

    Args:
        argv: 命令行参数，None使用 sys.argv

    Returns:
        int: 退出码
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config)
    except ConfigError as e:
        setup_logger(log_level=args.log_level or 'INFO')
        logger.error(f"配置加载失败: {e.message}")
        return EXIT_USAGE
    _setup_logging(args, config)

    commands: Dict[str, Any] = {
        'build-kb': lambda: cmd_build_kb(args, config),
        'answer': lambda: cmd_answer(args, config),
        'evaluate': lambda: cmd_evaluate(args, config, parser),
        'compare': lambda: cmd_compare(args, config),
    }

    start_time = time.perf_counter()
    try:
        code = commands[args.command]()
        logger.info(f"命令 {args.command} 完成，耗时: {time.perf_counter() - start_time:.2f}秒")
        return code
    except (DataError, TextError, EvaluationError) as e:
        logger.error(f"数据错误: {e.message}")
        return EXIT_DATA
    except ConfigError as e:
        logger.error(f"配置错误: {e.message}")
        return EXIT_USAGE
    except TupleQAError as e:
        logger.error(f"执行失败: {e.message}")
        return EXIT_INTERNAL
    except Exception as e:
        logger.exception(f"发生未预期的错误: {str(e)}")
        return EXIT_INTERNAL


if __name__ == '__main__':
    sys.exit(main())
