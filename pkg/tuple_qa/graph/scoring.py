#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
目标函数系数：边权重、qterm系数与元组系数。
"""

import math
from typing import AbstractSet, Sequence, Union

from tuple_qa.graph.models import GraphWeights, Question
from tuple_qa.kb.models import KBTuple, ScoredTuple
from tuple_qa.kb.selection import jaccard
from tuple_qa.text import QTerm
from tuple_qa.utils.exceptions import EmptyHeadError

IDF_UNION = 'union'
IDF_MIN = 'min'


def edge_weight(source_tokens: AbstractSet[str], target_tokens: AbstractSet[str]) -> float:
    """
    词重叠边权 |tok(t) ∩ tok(h)| / |tok(h)|，h为目标端

    Raises:
        EmptyHeadError: 目标端词集为空
    """
    if not target_tokens:
        raise EmptyHeadError()
    return len(source_tokens & target_tokens) / len(target_tokens)


def _tuple_of(item: Union[KBTuple, ScoredTuple]) -> KBTuple:
    return item.tuple if isinstance(item, ScoredTuple) else item


def qterm_doc_freq(q: QTerm, selected: Sequence[Union[KBTuple, ScoredTuple]], mode: str = IDF_UNION) -> int:
    """
    n_x：union 模式统计包含qterm任一词干的元组数，min 模式取各词干元组数的最小值
    """
    tuples = [_tuple_of(item) for item in selected]
    stems = q.stem_set
    if mode == IDF_MIN:
        return min((sum(1 for t in tuples if stem in t.all_tokens) for stem in stems), default=0)
    return sum(1 for t in tuples if t.all_tokens & stems)


def qterm_coefficient(q: QTerm, selected: Sequence[Union[KBTuple, ScoredTuple]],
                      weights: GraphWeights) -> float:
    """
    c_q = qterm_base · idfB · scienceB · locB

    - idfB = ln(1 + N/n_x)，N为选中元组数，n_x至少取1
    - scienceB = science_boost（任一词干在科学术语表中）否则为1
    - locB = 位置 / qterm总数
    """
    n_total = len(selected)
    n_x = max(qterm_doc_freq(q, selected, weights.idf_mode), 1)
    idf_boost = math.log(1.0 + n_total / n_x)
    science = weights.science_boost if q.stem_set & weights.science_terms else 1.0
    location = q.position / q.question_length
    return weights.qterm_base * idf_boost * science * location


def tuple_coefficient(t: Union[KBTuple, ScoredTuple], question: Question) -> float:
    """c_t = -1 + jaccard(tok(t), tok(qa))，恒不大于0"""
    return -1.0 + jaccard(_tuple_of(t).all_tokens, question.qa_set)
