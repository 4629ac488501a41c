#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
元组知识库数据模型模块，定义元组、知识库索引、整理表格等数据结构。
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from tuple_qa.text import TextAnalyzer, TokenList, get_default_analyzer
from tuple_qa.utils.exceptions import TupleFormatError, TableFormatError

SUBJECT = 'subject'
PREDICATE = 'predicate'
OBJECT_PREFIX = 'object_'


def object_role(index: int) -> str:
    """第index个宾语字段的角色名（object_0, object_1, ...）"""
    return f"{OBJECT_PREFIX}{index}"


@dataclass
class KBTuple:
    """开放信息抽取元组 (subject; predicate; objects*)"""
    id: str
    subject: str
    predicate: str
    objects: List[str] = field(default_factory=list)
    source: str = ""
    from_table: bool = False
    field_tokens: Dict[str, TokenList] = field(default_factory=dict)
    all_tokens: FrozenSet[str] = field(default_factory=frozenset)

    @classmethod
    def create(cls, tuple_id: str, subject: str, predicate: str, objects: Iterable[str] = (),
               source: str = "", from_table: bool = False,
               analyzer: Optional[TextAnalyzer] = None) -> 'KBTuple':
        """
        创建元组并计算各字段的词干。

        Args:
            tuple_id: 元组ID
            subject: 主语
            predicate: 谓语
            objects: 宾语列表（可为空）
            source: 来源（句子或表格ID）
            from_table: 是否由整理表格转换而来
            analyzer: 文本分析器，None使用默认分析器

        Returns:
            KBTuple: 元组

        Raises:
            TupleFormatError: 主语或谓语为空
        """
        subject = (subject or "").strip()
        predicate = (predicate or "").strip()
        if not subject or not predicate:
            raise TupleFormatError(f"元组 {tuple_id} 的主语和谓语不能为空")

        analyzer = analyzer or get_default_analyzer()
        clean_objects = [o.strip() for o in objects if o is not None and o.strip()]

        field_tokens = {
            SUBJECT: analyzer.tokenize(subject),
            PREDICATE: analyzer.tokenize(predicate),
        }
        for i, obj in enumerate(clean_objects):
            field_tokens[object_role(i)] = analyzer.tokenize(obj)

        all_tokens = frozenset(stem for tokens in field_tokens.values() for stem in tokens.stems)
        return cls(
            id=str(tuple_id),
            subject=subject,
            predicate=predicate,
            objects=clean_objects,
            source=source,
            from_table=from_table,
            field_tokens=field_tokens,
            all_tokens=all_tokens,
        )

    @property
    def roles(self) -> List[str]:
        """字段角色列表：subject, predicate, object_0, ..."""
        return [SUBJECT, PREDICATE] + [object_role(i) for i in range(len(self.objects))]

    def field_text(self, role: str) -> str:
        """字段原文"""
        if role == SUBJECT:
            return self.subject
        if role == PREDICATE:
            return self.predicate
        return self.objects[int(role[len(OBJECT_PREFIX):])]

    def field_set(self, role: str) -> FrozenSet[str]:
        """字段词干集合"""
        return self.field_tokens[role].as_set()

    def field_key(self) -> Tuple[str, ...]:
        """字段字符串键，用于合并去重"""
        return tuple(part.lower() for part in [self.subject, self.predicate] + self.objects)

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {
            'id': self.id,
            'subject': self.subject,
            'predicate': self.predicate,
            'objects': list(self.objects),
        }
        if self.source:
            data['source'] = self.source
        if self.from_table:
            data['from_table'] = True
        return data

    def __str__(self) -> str:
        return f"({'; '.join([self.subject, self.predicate] + self.objects)})"


@dataclass
class ScoredTuple:
    """带分数的元组"""
    tuple: KBTuple
    score: float

    def to_dict(self) -> Dict[str, object]:
        data = self.tuple.to_dict()
        data['score'] = self.score
        return data


class TupleKB:
    """
    元组知识库：元组列表 + 倒排索引 + 文档频率。

    构建后不再修改，所有查询只读，可被多个线程共享。
    """

    def __init__(self, tuples: Iterable[KBTuple], skipped_lines: int = 0, source_path: str = ""):
        """
        构建知识库与索引

        Args:
            tuples: 元组
            skipped_lines: 加载时跳过的格式错误行数
            source_path: 来源文件

        Raises:
            TupleFormatError: 元组ID重复
        """
        self.tuples: List[KBTuple] = list(tuples)
        self.skipped_lines = skipped_lines
        self.source_path = source_path
        self._by_id: Dict[str, KBTuple] = {}
        for t in self.tuples:
            if t.id in self._by_id:
                raise TupleFormatError(f"元组ID重复: {t.id}")
            self._by_id[t.id] = t

        postings: Dict[str, List[str]] = {}
        for t in self.tuples:
            for stem in t.all_tokens:
                postings.setdefault(stem, []).append(t.id)
        self.index: Dict[str, List[str]] = {stem: sorted(ids) for stem, ids in postings.items()}
        self.doc_freq: Dict[str, int] = {stem: len(ids) for stem, ids in self.index.items()}

    @property
    def size_N(self) -> int:
        """元组总数 N"""
        return len(self.tuples)

    def __len__(self) -> int:
        return len(self.tuples)

    def get(self, tuple_id: str) -> KBTuple:
        return self._by_id[tuple_id]

    def overlap_counts(self, stems: Iterable[str]) -> Counter:
        """
        通过倒排索引统计每个元组与给定词干集合的重叠（去重词干计数）。

        Args:
            stems: 查询词干

        Returns:
            Counter: 元组ID → 重叠词干数
        """
        counts: Counter = Counter()
        for stem in set(stems):
            for tuple_id in self.index.get(stem, ()):
                counts[tuple_id] += 1
        return counts

    def stats(self) -> Dict[str, int]:
        return {
            'tuples': self.size_N,
            'vocabulary': len(self.index),
            'skipped_lines': self.skipped_lines,
        }


@dataclass
class RelationPair:
    """表格中由关系连接的两列"""
    subject_column: int
    object_column: int
    predicate: str


@dataclass
class CuratedTable:
    """人工整理的表格"""
    table_id: str
    header: List[str]
    rows: List[List[str]]
    relation_pairs: List[RelationPair] = field(default_factory=list)

    def validate(self) -> None:
        """
        校验表格结构

        Raises:
            TableFormatError: 行宽与表头不一致或关系列越界
        """
        width = len(self.header)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise TableFormatError(
                    f"表格 {self.table_id} 第{i}行有{len(row)}个单元格，表头有{width}列"
                )
        for pair in self.relation_pairs:
            for column in (pair.subject_column, pair.object_column):
                if not 0 <= column < width:
                    raise TableFormatError(f"表格 {self.table_id} 的关系列越界: {column}")
            if pair.subject_column == pair.object_column:
                raise TableFormatError(f"表格 {self.table_id} 的关系两端为同一列: {pair.subject_column}")
            if not pair.predicate.strip():
                raise TableFormatError(f"表格 {self.table_id} 的关系缺少谓语标签")

    def token_bag_text(self) -> str:
        """表头和所有单元格拼接的文本，用于表格排序"""
        return " ".join(self.header + [cell for row in self.rows for cell in row])


@dataclass
class SentenceTuples:
    """一个语料句子及从中预先抽取的元组"""
    sentence: str
    tuples: List[List[str]] = field(default_factory=list)
