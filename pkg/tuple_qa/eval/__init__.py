#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
评测模块 - 检索基线、准确率统计与显著性检验
"""

from tuple_qa.eval.sentence_index import SentenceIndex, ir_score, IRSolver
from tuple_qa.eval.metrics import (
    EvaluationReport,
    QuestionOutcome,
    evaluate,
    score_results,
    question_credit,
    check_answer_keys,
    TIE_FRACTIONAL,
    TIE_STRICT,
)
from tuple_qa.eval.significance import binomial_exact_test, compare_reports, ComparisonResult

__all__ = [
    'SentenceIndex',
    'ir_score',
    'IRSolver',
    'EvaluationReport',
    'QuestionOutcome',
    'evaluate',
    'score_results',
    'question_credit',
    'check_answer_keys',
    'TIE_FRACTIONAL',
    'TIE_STRICT',
    'binomial_exact_test',
    'compare_reports',
    'ComparisonResult',
]
