#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
单题问答流程：元组选择 → 模型构建 → 逐个选项强制求解 → 排序。
"""

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

from tuple_qa.config import Config
from tuple_qa.graph.builder import build_model, choice_var
from tuple_qa.graph.models import GraphWeights, Question, SupportGraph
from tuple_qa.graph.support import extract_support_graph
from tuple_qa.ilp.lp_format import dump_lp
from tuple_qa.ilp.models import BinaryProgram
from tuple_qa.ilp.solver import BOUND_LP, solve
from tuple_qa.kb.models import CuratedTable, ScoredTuple, SentenceTuples, TupleKB
from tuple_qa.kb.selection import select_from_kb, select_on_the_fly
from tuple_qa.kb.tables import tables_to_tuples
from tuple_qa.qa.models import AnswerResult, RankedAnswer, rank
from tuple_qa.text import TextAnalyzer
from tuple_qa.utils.decorators import log_function
from tuple_qa.utils.exceptions import GraphBuildError, handle_exception
from tuple_qa.utils.logger import LogContext, StructuredLogger

logger = StructuredLogger(__name__)


def merge_selected(*groups: Sequence[ScoredTuple]) -> List[ScoredTuple]:
    """
    合并多组选中元组：字段字符串相同的元组只保留第一次出现的，
    ID冲突但内容不同的元组改名为 <id>#<n>。
    """
    merged: List[ScoredTuple] = []
    seen_keys = set()
    used_ids = set()
    for group in groups:
        for st in group:
            key = st.tuple.field_key()
            if key in seen_keys:
                continue
            seen_keys.add(key)
            t = st.tuple
            if t.id in used_ids:
                n = 2
                while f"{t.id}#{n}" in used_ids:
                    n += 1
                t = dataclasses.replace(t, id=f"{t.id}#{n}")
                st = ScoredTuple(t, st.score)
            used_ids.add(t.id)
            merged.append(st)
    return merged


def score_choice(question: Question, choice_index: int, tuples: Sequence[ScoredTuple],
                 weights: Optional[GraphWeights] = None, model: Optional[BinaryProgram] = None,
                 bound: str = BOUND_LP) -> Tuple[Optional[float], Optional[SupportGraph]]:
    """
    强制某个选项激活并求解，返回目标值与支持图。

    Args:
        question: 问题
        choice_index: 选项下标
        tuples: 选中的元组
        weights: 模型参数，默认值见 GraphWeights
        model: 已为该问题构建的模型，None时现场构建
        bound: 求解器上界方式

    Returns:
        Tuple: (得分, 支持图)；没有元组或规划不可行时为 (None, None)

    Raises:
        GraphBuildError: 选项下标无效
    """
    if not 0 <= choice_index < len(question.choices):
        raise GraphBuildError(f"问题 {question.id} 没有下标为 {choice_index} 的选项",
                              code='INVALID_CHOICE', details={'id': question.id})
    if not tuples:
        return None, None
    if model is None:
        model = build_model(question, tuples, weights or GraphWeights())

    forced = model.with_forced({choice_var(choice_index): 1})
    solution = solve(forced, bound=bound)
    if not solution.is_optimal:
        return None, None
    graph = extract_support_graph(forced, solution.assignment)
    return solution.objective, graph


class QuestionAnswerer:
    """
    问答器：持有配置、知识库和可选的句子、表格，对问题逐个作答。

    知识库只读，answer 可以在多个线程中并发调用。
    """

    def __init__(self, config: Optional[Config] = None, kb: Optional[TupleKB] = None,
                 sentences: Optional[Sequence[SentenceTuples]] = None,
                 tables: Optional[Sequence[CuratedTable]] = None,
                 analyzer: Optional[TextAnalyzer] = None,
                 weights: Optional[GraphWeights] = None):
        """
        初始化问答器

        Args:
            config: 配置，None使用默认配置
            kb: 元组知识库
            sentences: 即时元组的句子
            tables: 整理表格
            analyzer: 文本分析器，None时按配置构建
            weights: 模型参数，None时按配置构建
        """
        self.config = config or Config.from_dict({})
        self.kb = kb if kb is not None else TupleKB([])
        self.sentences = list(sentences or [])
        self.tables = list(tables or [])
        self.analyzer = analyzer or TextAnalyzer.from_config(self.config)
        self.weights = weights or GraphWeights.from_config(self.config, self.analyzer)
        self.bound = self.config.get('solver.bound', BOUND_LP)
        self.dump_lp_dir = self.config.get('solver.dump_lp_dir')

    def select_tuples(self, question: Question) -> List[ScoredTuple]:
        """选择 T_qa、T'_qa 以及表格元组并合并去重"""
        cfg = self.config
        from_kb = select_from_kb(question, self.kb, pool=cfg.get('selection.pool', 1000),
                                 k=cfg.get('selection.k', 50),
                                 normalization=cfg.get('selection.normalization', 'sum'))
        on_the_fly: List[ScoredTuple] = []
        if self.sentences:
            on_the_fly = select_on_the_fly(self.sentences, question, k=cfg.get('selection.on_the_fly_k', 50),
                                           max_chars=cfg.get('selection.max_sentence_chars', 300),
                                           analyzer=self.analyzer)
        from_tables: List[ScoredTuple] = []
        if self.tables:
            from_tables = tables_to_tuples(self.tables, question, max_tables=cfg.get('selection.max_tables', 7),
                                           max_rows=cfg.get('selection.max_rows', 20),
                                           k=cfg.get('selection.table_k', 50), analyzer=self.analyzer)
        merged = merge_selected(from_kb, on_the_fly, from_tables)
        logger.debug("元组选择完成", kb=len(from_kb), on_the_fly=len(on_the_fly),
                     tables=len(from_tables), merged=len(merged))
        return merged

    @log_function(level='DEBUG')
    def answer(self, question: Question) -> AnswerResult:
        """
        对一道题作答：模型只构建一次，每个选项以不同的强制赋值求解。

        Args:
            question: 问题

        Returns:
            AnswerResult: 排序后的选项得分；所有选项都无支持时 abstain 为真
        """
        LogContext.set_context_value('question_id', question.id)
        try:
            tuples = self.select_tuples(question)
            model = build_model(question, tuples, self.weights) if tuples else None
            if model is not None and self.dump_lp_dir:
                dump_lp(model, self.dump_lp_dir, f"question_{question.id}")

            answers = []
            for choice in question.choices:
                score, graph = score_choice(question, choice.index, tuples, self.weights, model, self.bound)
                answers.append(RankedAnswer(choice.index, score, graph, choice.label, choice.text))
            ranking = rank(answers)
            abstain = all(not a.is_supported for a in ranking)

            result = AnswerResult(
                question_id=question.id,
                ranking=ranking,
                abstain=abstain,
                answer_key=question.answer_key,
                num_tuples=len(tuples),
                stats=model.stats() if model is not None else {},
            )
            logger.info("作答完成", predicted=result.predicted, abstain=abstain, tuples=len(tuples))
            return result
        finally:
            LogContext.clear_context()

    def answer_safe(self, question: Question) -> AnswerResult:
        """作答，出错时记录日志并返回弃权结果，不中断批量处理"""
        try:
            return self.answer(question)
        except Exception as e:
            error = handle_exception(e, logger.logger)
            error.pop('traceback', None)
            ranking = [RankedAnswer(c.index, None, None, c.label, c.text) for c in question.choices]
            return AnswerResult(question_id=question.id, ranking=ranking, abstain=True,
                                answer_key=question.answer_key, error=error)

    def answer_all(self, questions: Sequence[Question], workers: int = 1) -> List[AnswerResult]:
        """
        批量作答，结果顺序与输入一致

        Args:
            questions: 问题列表
            workers: 线程数，1为顺序执行

        Returns:
            List[AnswerResult]: 作答结果
        """
        if workers <= 1:
            return [self.answer_safe(q) for q in questions]
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(self.answer_safe, questions))


def answer_question(question: Question, kb: Optional[TupleKB] = None,
                    extra_sentences: Optional[Sequence[SentenceTuples]] = None,
                    tables: Optional[Sequence[CuratedTable]] = None,
                    config: Optional[Config] = None) -> AnswerResult:
    """
    选择元组并对全部选项打分排序

    Args:
        question: 问题
        kb: 元组知识库
        extra_sentences: 即时元组的句子
        tables: 整理表格
        config: 配置

    Returns:
        AnswerResult: 作答结果
    """
    return QuestionAnswerer(config, kb, extra_sentences, tables).answer(question)
