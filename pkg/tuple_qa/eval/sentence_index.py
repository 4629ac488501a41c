#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
句子语料索引与信息检索基线：每个选项的得分是语料中与"问题+选项"最匹配的句子的分数。
"""

import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence

from tuple_qa.graph.models import Question
from tuple_qa.kb.selection import NORMALIZATION_SUM, normalized_tfidf
from tuple_qa.qa.models import AnswerResult, RankedAnswer, rank
from tuple_qa.text import TextAnalyzer, get_default_analyzer
from tuple_qa.utils.exceptions import DataError, handle_exception
from tuple_qa.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_TOP_HITS = 200


class SentenceIndex:
    """句子倒排索引，构建后只读"""

    def __init__(self, sentences: Iterable[str], analyzer: Optional[TextAnalyzer] = None):
        analyzer = analyzer or get_default_analyzer()
        self.sentences: List[str] = list(sentences)
        self.token_sets: List[FrozenSet[str]] = [analyzer.token_set(s) for s in self.sentences]

        postings: Dict[str, List[int]] = {}
        for sid, stems in enumerate(self.token_sets):
            for stem in stems:
                postings.setdefault(stem, []).append(sid)
        self.index: Dict[str, List[int]] = {stem: sorted(ids) for stem, ids in postings.items()}
        self.doc_freq: Dict[str, int] = {stem: len(ids) for stem, ids in self.index.items()}

    @property
    def n_sentences(self) -> int:
        return len(self.sentences)

    def __len__(self) -> int:
        return len(self.sentences)

    @classmethod
    def from_file(cls, path: str, analyzer: Optional[TextAnalyzer] = None) -> 'SentenceIndex':
        """
        从文件构建：纯文本每行一句，或与即时元组相同的JSON行格式（取sentence字段）

        Raises:
            DataError: 文件无法读取或JSON行格式错误
        """
        try:
            with open(path, 'r', encoding='utf-8') as f:
                lines = f.read().splitlines()
        except OSError as e:
            raise DataError(f"读取句子文件失败: {path}: {str(e)}")

        sentences = []
        for line_no, line in enumerate(lines, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith('{'):
                try:
                    record = json.loads(line)
                    sentences.append(str(record['sentence']))
                except (ValueError, KeyError, TypeError) as e:
                    raise DataError(f"{path}:{line_no} 句子记录格式错误: {str(e)}")
            else:
                sentences.append(line)
        logger.info(f"句子索引构建完成: {path}, 共 {len(sentences)} 个句子")
        return cls(sentences, analyzer)

    def overlap_counts(self, stems: Iterable[str]) -> Counter:
        counts: Counter = Counter()
        for stem in set(stems):
            for sid in self.index.get(stem, ()):
                counts[sid] += 1
        return counts


def ir_score(question: Question, choice_index: int, index: SentenceIndex,
             top_hits: int = DEFAULT_TOP_HITS, normalization: str = NORMALIZATION_SUM) -> float:
    """
    选项的检索得分。

    只考虑至少包含一个选项词干的句子；按与查询 tok(q) ∪ tok(a) 的重叠词干数取前 top_hits 个，
    再取归一化TF-IDF分数的最大值。没有匹配句子时为0。

    Args:
        question: 问题
        choice_index: 选项下标
        index: 句子索引
        top_hits: 候选句子上限
        normalization: 归一化方式

    Returns:
        float: 得分
    """
    choice_set = question.choices[choice_index].token_set
    if not choice_set or index.n_sentences == 0:
        return 0.0
    query = question.q_set | choice_set

    counts = index.overlap_counts(query)
    candidates = [sid for sid in counts if index.token_sets[sid] & choice_set]
    candidates.sort(key=lambda sid: (-counts[sid], sid))

    best = 0.0
    for sid in candidates[:top_hits]:
        score = normalized_tfidf(index.token_sets[sid], query, index.doc_freq, index.n_sentences, normalization)
        best = max(best, score)
    return best


class IRSolver:
    """检索基线求解器，输出与元组求解器相同结构的作答结果"""

    name = 'ir'

    def __init__(self, index: SentenceIndex, top_hits: int = DEFAULT_TOP_HITS,
                 normalization: str = NORMALIZATION_SUM):
        self.index = index
        self.top_hits = top_hits
        self.normalization = normalization

    @classmethod
    def from_config(cls, index: SentenceIndex, config) -> 'IRSolver':
        return cls(index, top_hits=config.get('evaluation.ir_top_hits', DEFAULT_TOP_HITS),
                   normalization=config.get('selection.normalization', NORMALIZATION_SUM))

    def answer(self, question: Question) -> AnswerResult:
        answers = [
            RankedAnswer(c.index, ir_score(question, c.index, self.index, self.top_hits, self.normalization),
                         None, c.label, c.text)
            for c in question.choices
        ]
        return AnswerResult(question_id=question.id, ranking=rank(answers), answer_key=question.answer_key,
                            solver=self.name)

    def answer_safe(self, question: Question) -> AnswerResult:
        try:
            return self.answer(question)
        except Exception as e:
            error = handle_exception(e, logger)
            error.pop('traceback', None)
            ranking = [RankedAnswer(c.index, None, None, c.label, c.text) for c in question.choices]
            return AnswerResult(question_id=question.id, ranking=ranking, abstain=True,
                                answer_key=question.answer_key, solver=self.name, error=error)

    def answer_all(self, questions: Sequence[Question], workers: int = 1) -> List[AnswerResult]:
        if workers <= 1:
            return [self.answer_safe(q) for q in questions]
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(self.answer_safe, questions))
