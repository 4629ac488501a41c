#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
问答模块 - 问题加载、逐选项打分与答案排序
"""

from tuple_qa.qa.models import RankedAnswer, AnswerResult, rank
from tuple_qa.qa.questions import load_questions, parse_question, parse_answer_key
from tuple_qa.qa.pipeline import QuestionAnswerer, score_choice, answer_question, merge_selected

__all__ = [
    'RankedAnswer',
    'AnswerResult',
    'rank',
    'load_questions',
    'parse_question',
    'parse_answer_key',
    'QuestionAnswerer',
    'score_choice',
    'answer_question',
    'merge_selected',
]
