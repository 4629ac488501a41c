#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
元组选择：从知识库检索候选元组（T_qa），以及从句子即时抽取的元组中挑选（T'_qa）。
"""

import math
from typing import TYPE_CHECKING, AbstractSet, Iterable, List, Mapping, Optional, Sequence

from tuple_qa.kb.models import KBTuple, ScoredTuple, SentenceTuples, TupleKB
from tuple_qa.text import TextAnalyzer, get_default_analyzer
from tuple_qa.utils.decorators import validate_params
from tuple_qa.utils.exceptions import TupleFormatError
from tuple_qa.utils.logger import get_logger

if TYPE_CHECKING:
    from tuple_qa.graph.models import Question

logger = get_logger(__name__)

NORMALIZATION_SUM = 'sum'
NORMALIZATION_PRODUCT = 'product'

NEGATION_WORDS = frozenset(['not', 'except'])
NEGATION_SUFFIXES = ("n't", "'nt")


def idf(doc_freq: int, n_docs: int) -> float:
    """idf(x) = ln(1 + N/n_x)"""
    if doc_freq <= 0:
        return 0.0
    return math.log(1.0 + n_docs / doc_freq)


def normalized_tfidf(doc_stems: AbstractSet[str],
                     query_stems: AbstractSet[str],
                     doc_freq: Mapping[str, int],
                     n_docs: int,
                     normalization: str = NORMALIZATION_SUM) -> float:
    """
    归一化的TF-IDF重叠分数，tf为二值（词在查询中即为1）。

    Args:
        doc_stems: 文档词干集合
        query_stems: 查询词干集合
        doc_freq: 词干 → 包含该词干的文档数
        n_docs: 文档总数
        normalization: sum 除以 |doc|+|query|，product 除以 |doc|·|query|

    Returns:
        float: 分数
    """
    overlap = doc_stems & query_stems
    if not overlap:
        return 0.0
    total = sum(idf(doc_freq.get(x, 0), n_docs) for x in sorted(overlap))
    if normalization == NORMALIZATION_PRODUCT:
        denominator = len(doc_stems) * len(query_stems)
    else:
        denominator = len(doc_stems) + len(query_stems)
    return total / denominator if denominator else 0.0


def tfidf_score(t: KBTuple, q_tokens: Iterable[str], kb: TupleKB,
                normalization: str = NORMALIZATION_SUM) -> float:
    """
    以问题为查询、元组为文档的归一化TF-IDF分数。

    Args:
        t: 元组
        q_tokens: 问题词干（TokenList或任意词干序列，按去重集合计算）
        kb: 知识库，提供 N 和 n_x
        normalization: 归一化方式

    Returns:
        float: 分数，重叠为空时为0
    """
    return normalized_tfidf(t.all_tokens, frozenset(q_tokens), kb.doc_freq, kb.size_N, normalization)


def jaccard(a: AbstractSet[str], b: AbstractSet[str]) -> float:
    """|a∩b| / |a∪b|，两者都为空时为0"""
    union = len(a | b)
    if union == 0:
        return 0.0
    return len(a & b) / union


@validate_params(pool=lambda v: v > 0, k=lambda v: v > 0)
def select_from_kb(question: 'Question', kb: TupleKB, pool: int = 1000, k: int = 50,
                   normalization: str = NORMALIZATION_SUM) -> List[ScoredTuple]:
    """
    从知识库选择与问题相关的元组 T_qa。

    1. 按与 tok(qa) 重叠的去重词干数取前 pool 个候选（并列按ID升序）
    2. 去掉与任何选项都没有重叠的元组
    3. 按 tfidf_score(t, q) 打分，取前 k 个

    Args:
        question: 问题
        kb: 知识库
        pool: 候选池大小
        k: 返回数量
        normalization: TF-IDF归一化方式

    Returns:
        List[ScoredTuple]: 按分数降序排列的元组
    """
    if kb.size_N == 0:
        return []

    counts = kb.overlap_counts(question.qa_set)
    candidates = sorted(counts.items(), key=lambda item: (-item[1], item[0]))[:pool]

    choice_stems = question.choice_union
    scored = []
    dropped = 0
    for tuple_id, _ in candidates:
        t = kb.get(tuple_id)
        if not (t.all_tokens & choice_stems):
            dropped += 1
            continue
        scored.append(ScoredTuple(t, tfidf_score(t, question.q_set, kb, normalization)))

    scored.sort(key=lambda st: (-st.score, st.tuple.id))
    logger.debug(f"问题 {question.id}: 候选 {len(candidates)} 个, "
                 f"仅与问题重叠被过滤 {dropped} 个, 保留 {min(k, len(scored))} 个")
    return scored[:k]


def has_negation(tokens: Sequence[str]) -> bool:
    """表层词中是否含有否定标记（not、except，或以 n't / 'nt 结尾的词）"""
    return any(tok in NEGATION_WORDS or tok.endswith(NEGATION_SUFFIXES) for tok in tokens)


@validate_params(k=lambda v: v > 0, max_chars=lambda v: v > 0)
def select_on_the_fly(sentences: Sequence[SentenceTuples], question: 'Question', k: int = 50,
                      max_chars: int = 300, analyzer: Optional[TextAnalyzer] = None) -> List[ScoredTuple]:
    """
    从带有预抽取元组的句子中挑选 T'_qa。

    过滤掉超长句子（> max_chars 字符）、含否定的句子、以及一个选项都不覆盖
    或覆盖全部选项的句子；剩余句子的元组按 jaccard(tok(t), tok(qa)) 打分取前 k 个。

    Args:
        sentences: 句子及其元组
        question: 问题
        k: 返回数量
        max_chars: 句子长度上限
        analyzer: 文本分析器

    Returns:
        List[ScoredTuple]: 按分数降序排列的元组
    """
    analyzer = analyzer or get_default_analyzer()
    choice_sets = [choice.token_set for choice in question.choices]
    qa_set = question.qa_set

    ranked = []
    skipped = {'long': 0, 'negation': 0, 'coverage': 0}
    for sent_index, entry in enumerate(sentences):
        sentence = entry.sentence
        if len(sentence) > max_chars:
            skipped['long'] += 1
            continue
        if has_negation(analyzer.raw_tokens(sentence)):
            skipped['negation'] += 1
            continue
        sentence_set = analyzer.token_set(sentence)
        covered = sum(1 for cs in choice_sets if cs & sentence_set)
        if covered == 0 or covered == len(choice_sets):
            skipped['coverage'] += 1
            continue

        for tuple_index, parts in enumerate(entry.tuples):
            if len(parts) < 2:
                logger.debug(f"句子 {sent_index} 的元组 {tuple_index} 缺少谓语，已忽略")
                continue
            try:
                t = KBTuple.create(f"s{sent_index}:{tuple_index}", parts[0], parts[1], parts[2:],
                                   source=sentence, analyzer=analyzer)
            except TupleFormatError as e:
                logger.debug(f"忽略无效的即时元组: {e.message}")
                continue
            ranked.append((-jaccard(t.all_tokens, qa_set), sent_index, tuple_index, t))

    ranked.sort(key=lambda item: item[:3])
    logger.debug(f"问题 {question.id}: 即时元组过滤统计 {skipped}, 候选 {len(ranked)} 个")
    return [ScoredTuple(t, -neg_score) for neg_score, _, _, t in ranked[:k]]
