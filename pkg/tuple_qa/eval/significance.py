#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
两个求解器的显著性比较：在两者得分不同的题目上做二项精确检验（p0 = 0.5，双侧）。
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional

from scipy.stats import binomtest

from tuple_qa.eval.metrics import EvaluationReport
from tuple_qa.utils.exceptions import NoDisagreementError, ReportMismatchError
from tuple_qa.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_ALPHA = 0.05


def binomial_exact_test(wins_a: int, wins_b: int) -> float:
    """
    双侧二项精确检验的p值：k = wins_a，n = wins_a + wins_b，p0 = 0.5

    Raises:
        ValueError: 胜场为负
        NoDisagreementError: 两者都为0
    """
    if wins_a < 0 or wins_b < 0:
        raise ValueError(f"胜场数不能为负: {wins_a}, {wins_b}")
    n = wins_a + wins_b
    if n == 0:
        raise NoDisagreementError()
    return min(1.0, float(binomtest(wins_a, n, 0.5, alternative='two-sided').pvalue))


@dataclass
class ComparisonResult:
    """两份评测报告的比较结果"""
    solver_a: str
    solver_b: str
    n: int
    accuracy_a: float
    accuracy_b: float
    wins_a: int
    wins_b: int
    p_value: Optional[float]
    alpha: float = DEFAULT_ALPHA

    @property
    def disagreements(self) -> int:
        return self.wins_a + self.wins_b

    @property
    def significant(self) -> bool:
        return self.p_value is not None and self.p_value < self.alpha

    def to_dict(self) -> Dict[str, Any]:
        return {
            'solver_a': self.solver_a,
            'solver_b': self.solver_b,
            'n': self.n,
            'accuracy_a': self.accuracy_a,
            'accuracy_b': self.accuracy_b,
            'disagreements': self.disagreements,
            'wins_a': self.wins_a,
            'wins_b': self.wins_b,
            'p_value': self.p_value,
            'alpha': self.alpha,
            'significant': self.significant,
        }


def compare_reports(report_a: EvaluationReport, report_b: EvaluationReport,
                    alpha: float = DEFAULT_ALPHA) -> ComparisonResult:
    """
    逐题比较得分：A得分更高记为A胜，反之B胜，相等不计。

    Args:
        report_a: 报告A
        report_b: 报告B
        alpha: 显著性水平

    Returns:
        ComparisonResult: 比较结果；没有分歧时 p_value 为None

    Raises:
        ReportMismatchError: 两份报告的问题集合不同
    """
    credits_a = report_a.credits()
    credits_b = report_b.credits()
    if set(credits_a) != set(credits_b):
        only_a = sorted(set(credits_a) - set(credits_b))
        only_b = sorted(set(credits_b) - set(credits_a))
        raise ReportMismatchError("两份报告的问题集合不一致",
                                  details={'only_a': only_a[:20], 'only_b': only_b[:20]})

    wins_a = sum(1 for qid in credits_a if credits_a[qid] > credits_b[qid])
    wins_b = sum(1 for qid in credits_a if credits_a[qid] < credits_b[qid])
    try:
        p_value: Optional[float] = binomial_exact_test(wins_a, wins_b)
    except NoDisagreementError:
        logger.warning("两个求解器在所有问题上得分相同，无法做显著性检验")
        p_value = None

    return ComparisonResult(
        solver_a=report_a.solver,
        solver_b=report_b.solver,
        n=report_a.n,
        accuracy_a=report_a.accuracy,
        accuracy_b=report_b.accuracy,
        wins_a=wins_a,
        wins_b=wins_b,
        p_value=p_value,
        alpha=alpha,
    )
