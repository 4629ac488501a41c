#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
元组知识库模块 - 加载、索引、元组选择与表格转换
"""

from tuple_qa.kb.models import (
    KBTuple,
    ScoredTuple,
    TupleKB,
    RelationPair,
    CuratedTable,
    SentenceTuples,
    SUBJECT,
    PREDICATE,
    object_role,
)
from tuple_qa.kb.loader import (
    load_tuple_kb,
    save_kb,
    load_kb,
    load_sentence_tuples,
    load_tables,
    parse_table,
)
from tuple_qa.kb.selection import (
    idf,
    normalized_tfidf,
    tfidf_score,
    jaccard,
    select_from_kb,
    select_on_the_fly,
    has_negation,
)
from tuple_qa.kb.tables import rank_tables, tables_to_tuples

__all__ = [
    'KBTuple',
    'ScoredTuple',
    'TupleKB',
    'RelationPair',
    'CuratedTable',
    'SentenceTuples',
    'SUBJECT',
    'PREDICATE',
    'object_role',
    'load_tuple_kb',
    'save_kb',
    'load_kb',
    'load_sentence_tuples',
    'load_tables',
    'parse_table',
    'idf',
    'normalized_tfidf',
    'tfidf_score',
    'jaccard',
    'select_from_kb',
    'select_on_the_fly',
    'has_negation',
    'rank_tables',
    'tables_to_tuples',
]
