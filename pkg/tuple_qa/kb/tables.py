#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
整理表格到元组的转换。
"""

from collections import Counter
from typing import TYPE_CHECKING, List, Optional, Sequence

from tuple_qa.kb.models import CuratedTable, KBTuple, ScoredTuple
from tuple_qa.kb.selection import jaccard, normalized_tfidf
from tuple_qa.text import TextAnalyzer, get_default_analyzer
from tuple_qa.utils.decorators import validate_params
from tuple_qa.utils.exceptions import TupleFormatError
from tuple_qa.utils.logger import get_logger

if TYPE_CHECKING:
    from tuple_qa.graph.models import Question

logger = get_logger(__name__)


def rank_tables(tables: Sequence[CuratedTable], question: 'Question', max_tables: int = 7,
                analyzer: Optional[TextAnalyzer] = None) -> List[CuratedTable]:
    """
    按表格词袋与问题的TF-IDF分数排序，idf在给定表格集合上计算。
    没有关系定义或分数为0的表格不参与。

    Returns:
        List[CuratedTable]: 最多 max_tables 个表格
    """
    analyzer = analyzer or get_default_analyzer()
    bags = [analyzer.token_set(table.token_bag_text()) for table in tables]
    doc_freq: Counter = Counter(stem for bag in bags for stem in bag)

    scored = []
    for index, (table, bag) in enumerate(zip(tables, bags)):
        if not table.relation_pairs:
            logger.debug(f"表格 {table.table_id} 没有关系定义，跳过")
            continue
        score = normalized_tfidf(bag, question.q_set, doc_freq, len(tables))
        if score > 0:
            scored.append((-score, index, table))
    scored.sort(key=lambda item: item[:2])
    return [table for _, _, table in scored[:max_tables]]


@validate_params(max_tables=lambda v: v > 0, max_rows=lambda v: v > 0, k=lambda v: v > 0)
def tables_to_tuples(tables: Sequence[CuratedTable], question: 'Question', max_tables: int = 7,
                     max_rows: int = 20, k: int = 50,
                     analyzer: Optional[TextAnalyzer] = None) -> List[ScoredTuple]:
    """
    将最匹配的表格行转换为元组。

    对每个保留的行和每个关系 (subject_column, object_column, label)，生成元组
    (subject单元格; label; object单元格, 其余非空单元格...)，并标记 from_table。

    Args:
        tables: 整理表格
        question: 问题
        max_tables: 保留的表格数
        max_rows: 每个表格保留的行数（按行与 tok(qa) 的Jaccard排序）
        k: 返回的元组数（按元组与 tok(qa) 的Jaccard排序）
        analyzer: 文本分析器

    Returns:
        List[ScoredTuple]: 按分数降序排列的元组
    """
    if not tables:
        return []
    analyzer = analyzer or get_default_analyzer()
    qa_set = question.qa_set

    ranked = []
    order = 0
    for table in rank_tables(tables, question, max_tables, analyzer):
        rows = sorted(
            enumerate(table.rows),
            key=lambda item: (-jaccard(analyzer.token_set(" ".join(item[1])), qa_set), item[0]),
        )[:max_rows]

        for row_index, row in rows:
            for pair_index, pair in enumerate(table.relation_pairs):
                context = [cell for col, cell in enumerate(row)
                           if col not in (pair.subject_column, pair.object_column) and cell.strip()]
                try:
                    t = KBTuple.create(
                        f"{table.table_id}:{row_index}:{pair_index}",
                        row[pair.subject_column],
                        pair.predicate,
                        [row[pair.object_column]] + context,
                        source=table.table_id,
                        from_table=True,
                        analyzer=analyzer,
                    )
                except TupleFormatError:
                    # 主语单元格为空
                    continue
                if not t.objects or not row[pair.object_column].strip():
                    continue
                ranked.append((-jaccard(t.all_tokens, qa_set), order, t))
                order += 1

    ranked.sort(key=lambda item: item[:2])
    logger.debug(f"问题 {question.id}: 表格生成元组 {len(ranked)} 个")
    return [ScoredTuple(t, -neg_score) for neg_score, _, t in ranked[:k]]
