#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
评测指标：按题计分与准确率汇总。

计分规则：
- fractional：最高分k个选项并列且包含标准答案时得 1/k，否则0
- strict：只有唯一最高分且为标准答案时得1
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from tuple_qa.graph.models import Question
from tuple_qa.qa.models import AnswerResult
from tuple_qa.utils.decorators import log_function
from tuple_qa.utils.exceptions import DataError, MissingAnswerKeyError
from tuple_qa.utils.logger import get_logger

logger = get_logger(__name__)

TIE_FRACTIONAL = 'fractional'
TIE_STRICT = 'strict'


def question_credit(chosen: Sequence[int], answer_key: int, mode: str = TIE_FRACTIONAL) -> float:
    """单题得分"""
    if answer_key not in chosen:
        return 0.0
    if mode == TIE_STRICT:
        return 1.0 if len(chosen) == 1 else 0.0
    return 1.0 / len(chosen)


@dataclass
class QuestionOutcome:
    """单题评测结果"""
    question_id: str
    chosen: List[int]
    answer_key: int
    credit: float
    abstain: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            'id': self.question_id,
            'chosen': list(self.chosen),
            'answer_key': self.answer_key,
            'credit': self.credit,
            'abstain': self.abstain,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'QuestionOutcome':
        return cls(str(data['id']), [int(i) for i in data['chosen']], int(data['answer_key']),
                   float(data['credit']), bool(data.get('abstain', False)))


@dataclass
class EvaluationReport:
    """评测报告，序列化结果只依赖输入，重复运行逐字节相同"""
    solver: str
    per_question: List[QuestionOutcome] = field(default_factory=list)
    tie_credit: str = TIE_FRACTIONAL

    @property
    def n(self) -> int:
        return len(self.per_question)

    @property
    def accuracy(self) -> float:
        if not self.per_question:
            return 0.0
        return sum(o.credit for o in self.per_question) / len(self.per_question)

    @property
    def abstained(self) -> int:
        return sum(1 for o in self.per_question if o.abstain)

    def credits(self) -> Dict[str, float]:
        return {o.question_id: o.credit for o in self.per_question}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'solver': self.solver,
            'tie_credit': self.tie_credit,
            'n': self.n,
            'accuracy': self.accuracy,
            'abstained': self.abstained,
            'per_question': [o.to_dict() for o in self.per_question],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True, indent=2) + "\n"

    def save(self, path: str) -> None:
        try:
            with open(path, 'w', encoding='utf-8') as f:
                f.write(self.to_json())
        except OSError as e:
            raise DataError(f"写入评测报告失败: {path}: {str(e)}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'EvaluationReport':
        try:
            return cls(
                solver=str(data.get('solver', '')),
                per_question=[QuestionOutcome.from_dict(item) for item in data['per_question']],
                tie_credit=str(data.get('tie_credit', TIE_FRACTIONAL)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise DataError(f"评测报告格式错误: {str(e)}")

    @classmethod
    def load(cls, path: str) -> 'EvaluationReport':
        """
        从JSON文件加载报告

        Raises:
            DataError: 文件无法读取或格式错误
        """
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except OSError as e:
            raise DataError(f"读取评测报告失败: {path}: {str(e)}")
        except ValueError as e:
            raise DataError(f"评测报告JSON格式错误: {path}: {str(e)}")
        return cls.from_dict(data)


def check_answer_keys(questions: Sequence[Question]) -> None:
    """
    Raises:
        MissingAnswerKeyError: 有问题缺少标准答案
    """
    missing = [q.id for q in questions if q.answer_key is None]
    if missing:
        raise MissingAnswerKeyError(missing)


def score_results(questions: Sequence[Question], results: Sequence[AnswerResult],
                  tie_credit: str = TIE_FRACTIONAL, solver_name: str = '') -> EvaluationReport:
    """
    按计分规则汇总作答结果，results 与 questions 一一对应

    Raises:
        MissingAnswerKeyError: 有问题缺少标准答案
    """
    check_answer_keys(questions)
    report = EvaluationReport(solver=solver_name, tie_credit=tie_credit)
    for question, result in zip(questions, results):
        chosen = result.chosen
        report.per_question.append(QuestionOutcome(
            question_id=question.id,
            chosen=chosen,
            answer_key=question.answer_key,
            credit=question_credit(chosen, question.answer_key, tie_credit),
            abstain=result.abstain,
        ))
    return report


@log_function(level='INFO')
def evaluate(solver: Callable[[Question], AnswerResult], questions: Sequence[Question],
             tie_credit: str = TIE_FRACTIONAL, workers: int = 1,
             solver_name: Optional[str] = None) -> EvaluationReport:
    """
    对每道题运行求解器并汇总准确率

    Args:
        solver: 作答函数
        questions: 带标准答案的问题
        tie_credit: 计分规则
        workers: 线程数
        solver_name: 报告中的求解器名称

    Returns:
        EvaluationReport: 评测报告

    Raises:
        MissingAnswerKeyError: 有问题缺少标准答案（列出全部问题ID）
    """
    check_answer_keys(questions)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(solver, questions))
    else:
        results = [solver(q) for q in questions]

    name = solver_name or (results[0].solver if results else '')
    report = score_results(questions, results, tie_credit, name)
    logger.info(f"评测完成: {report.n} 道题, 准确率 {report.accuracy:.4f}, 弃权 {report.abstained} 道")
    return report
