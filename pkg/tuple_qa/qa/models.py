#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
问答结果数据模型。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from tuple_qa.graph.models import SupportGraph

# 选项得分并列的判定容差
SCORE_TIE_TOL = 1e-9


@dataclass
class RankedAnswer:
    """
    单个选项的得分。score 为 None 表示无支持（强制选中该选项时规划不可行），
    排在所有实数得分之后。
    """
    choice_index: int
    score: Optional[float] = None
    support: Optional[SupportGraph] = None
    label: str = ""
    text: str = ""

    @property
    def is_supported(self) -> bool:
        return self.score is not None

    def sort_key(self):
        if self.score is None:
            return (1, 0.0, self.choice_index)
        return (0, -self.score, self.choice_index)

    def to_dict(self, include_graph: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'choice_index': self.choice_index,
            'label': self.label,
            'text': self.text,
            'score': self.score,
        }
        if include_graph and self.support is not None:
            data['support'] = self.support.to_dict()
        return data


def rank(answers: List[RankedAnswer]) -> List[RankedAnswer]:
    """
    按得分降序排序，无支持的排最后，并列按选项下标升序。

    与组内最高分相差不超过 SCORE_TIE_TOL 的得分视为并列，
    因此第一名总是 AnswerResult.chosen 中下标最小的选项。
    """
    keyed = []
    group, head = -1, None
    for answer in sorted(answers, key=RankedAnswer.sort_key):
        if answer.score is None:
            keyed.append(((1, 0, answer.choice_index), answer))
            continue
        if head is None or head - answer.score > SCORE_TIE_TOL:
            group, head = group + 1, answer.score
        keyed.append(((0, group, answer.choice_index), answer))
    return [answer for _, answer in sorted(keyed, key=lambda pair: pair[0])]


@dataclass
class AnswerResult:
    """一道题的作答结果"""
    question_id: str
    ranking: List[RankedAnswer]
    abstain: bool = False
    answer_key: Optional[int] = None
    solver: str = 'tupleinf'
    num_tuples: int = 0
    error: Optional[Dict[str, Any]] = None
    stats: Dict[str, Any] = field(default_factory=dict)

    @property
    def predicted(self) -> Optional[int]:
        """排名第一的选项，弃权时为None"""
        if self.abstain or not self.ranking:
            return None
        return self.ranking[0].choice_index

    @property
    def chosen(self) -> List[int]:
        """与最高分并列的全部选项（弃权时为全部选项），升序"""
        if not self.ranking:
            return []
        top = self.ranking[0]
        if self.abstain or top.score is None:
            return sorted(a.choice_index for a in self.ranking)
        return sorted(a.choice_index for a in self.ranking
                      if a.score is not None and abs(a.score - top.score) <= SCORE_TIE_TOL)

    def score_of(self, choice_index: int) -> Optional[float]:
        for answer in self.ranking:
            if answer.choice_index == choice_index:
                return answer.score
        raise KeyError(choice_index)

    def to_dict(self, include_graphs: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'id': self.question_id,
            'solver': self.solver,
            'abstain': self.abstain,
            'predicted': self.predicted,
            'chosen': self.chosen,
            'num_tuples': self.num_tuples,
            'ranking': [a.to_dict(include_graphs) for a in self.ranking],
        }
        if self.answer_key is not None:
            data['answer_key'] = self.answer_key
        if self.error is not None:
            data['error'] = self.error
        return data
