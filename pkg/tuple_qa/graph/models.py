#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
支持图数据模型：问题、选项、顶点、边、模型权重与支持图。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from tuple_qa.kb.models import KBTuple
from tuple_qa.text import QTerm, TextAnalyzer, TokenList, get_default_analyzer, read_word_list
from tuple_qa.utils.exceptions import QuestionFormatError
from tuple_qa.utils.logger import get_logger

logger = get_logger(__name__)

KIND_QTERM = 'qterm'
KIND_TUPLE = 'tuple'
KIND_FIELD = 'field'
KIND_CHOICE = 'choice'

DEFAULT_W = (2, 4, 4, 4, 2)
DEFAULT_SCIENCE_BOOST = 1.5

CHOICE_LABELS = 'ABCDEFGHIJKLMNOPQRSTUVWXYZ'


@dataclass
class Choice:
    """答案选项"""
    index: int
    text: str
    tokens: TokenList

    @property
    def label(self) -> str:
        return CHOICE_LABELS[self.index] if self.index < len(CHOICE_LABELS) else str(self.index + 1)

    @property
    def token_set(self) -> FrozenSet[str]:
        return self.tokens.as_set()


@dataclass
class Question:
    """多选题：问题文本、qterm分块、选项与可选的标准答案"""
    id: str
    text: str
    qterms: List[QTerm]
    choices: List[Choice]
    question_tokens: TokenList
    answer_key: Optional[int] = None

    @classmethod
    def create(cls, question_id: str, text: str, choices: Sequence[str],
               answer_key: Optional[int] = None,
               analyzer: Optional[TextAnalyzer] = None) -> 'Question':
        """
        分词、分块并构建问题

        Args:
            question_id: 问题ID
            text: 问题文本
            choices: 选项文本
            answer_key: 标准答案下标（从0开始）
            analyzer: 文本分析器

        Returns:
            Question: 问题

        Raises:
            QuestionFormatError: 选项少于2个或答案下标越界
            EmptyQuestionError: 问题不含内容词
        """
        if len(choices) < 2:
            raise QuestionFormatError(f"问题 {question_id} 至少需要2个选项", details={'id': question_id})
        if answer_key is not None and not 0 <= answer_key < len(choices):
            raise QuestionFormatError(f"问题 {question_id} 的答案下标越界: {answer_key}",
                                      details={'id': question_id})
        analyzer = analyzer or get_default_analyzer()
        return cls(
            id=str(question_id),
            text=text,
            qterms=analyzer.chunk_qterms(text),
            choices=[Choice(i, c, analyzer.tokenize(c)) for i, c in enumerate(choices)],
            question_tokens=analyzer.tokenize(text),
            answer_key=answer_key,
        )

    @property
    def q_set(self) -> FrozenSet[str]:
        """tok(q)"""
        return self.question_tokens.as_set()

    @property
    def choice_union(self) -> FrozenSet[str]:
        """所有选项词干的并集"""
        return frozenset().union(*(c.token_set for c in self.choices))

    @property
    def qa_set(self) -> FrozenSet[str]:
        """tok(qa)：问题与全部选项的词干并集"""
        return self.q_set | self.choice_union


@dataclass(frozen=True)
class Vertex:
    """支持图顶点，每个qterm、选项、元组、元组字段各一个"""
    var_id: str
    kind: str
    label: str
    index: int = -1
    tuple_id: Optional[str] = None
    role: Optional[str] = None
    kb_tuple: Optional[KBTuple] = field(default=None, compare=False, hash=False, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'id': self.var_id, 'kind': self.kind, 'label': self.label}
        if self.kind in (KIND_QTERM, KIND_CHOICE):
            data['index'] = self.index
        if self.tuple_id is not None:
            data['tuple_id'] = self.tuple_id
        if self.role is not None:
            data['role'] = self.role
        return data


@dataclass(frozen=True)
class Edge:
    """对齐边：qterm→字段 或 字段→选项"""
    var_id: str
    source: Vertex
    target: Vertex
    weight: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            'id': self.var_id,
            'source': self.source.var_id,
            'target': self.target.var_id,
            'weight': self.weight,
        }


@dataclass
class GraphWeights:
    """
    模型参数。

    w = (w1..w5)：字段边数上限、选项边数上限、qterm边数上限、元组总数上限、元组最少激活字段数，
    前四个是严格上界（实际允许 w-1）。
    """
    w: Tuple[int, int, int, int, int] = DEFAULT_W
    qterm_base: float = 0.8
    edge_threshold_qf: float = 0.1
    edge_threshold_fc: float = 0.2
    edge_scale: float = 1.0
    science_terms: FrozenSet[str] = frozenset()
    science_boost: Optional[float] = None
    idf_mode: str = 'union'

    def __post_init__(self):
        self.w = tuple(int(x) for x in self.w)
        if self.science_boost is None:
            self.science_boost = DEFAULT_SCIENCE_BOOST if self.science_terms else 1.0

    @property
    def w1(self) -> int:
        return self.w[0]

    @property
    def w2(self) -> int:
        return self.w[1]

    @property
    def w3(self) -> int:
        return self.w[2]

    @property
    def w4(self) -> int:
        return self.w[3]

    @property
    def w5(self) -> int:
        return self.w[4]

    @classmethod
    def from_config(cls, config, analyzer: Optional[TextAnalyzer] = None) -> 'GraphWeights':
        """
        从配置的graph节构建

        Args:
            config: Config对象
            analyzer: 用于词干化科学词表的分析器

        Returns:
            GraphWeights: 模型参数
        """
        lexicon_path = config.get('graph.science_lexicon')
        science_terms = load_science_lexicon(lexicon_path, analyzer) if lexicon_path else frozenset()
        return cls(
            w=tuple(config.get('graph.w', list(DEFAULT_W))),
            qterm_base=float(config.get('graph.qterm_base', 0.8)),
            edge_threshold_qf=float(config.get('graph.edge_threshold_qf', 0.1)),
            edge_threshold_fc=float(config.get('graph.edge_threshold_fc', 0.2)),
            edge_scale=float(config.get('graph.edge_scale', 1.0)),
            science_terms=science_terms,
            science_boost=config.get('graph.science_boost'),
            idf_mode=config.get('graph.idf_mode', 'union'),
        )


def load_science_lexicon(path: str, analyzer: Optional[TextAnalyzer] = None) -> FrozenSet[str]:
    """
    加载科学术语表（每行一个术语），返回全部术语的词干集合

    Raises:
        DataError: 文件无法读取
    """
    analyzer = analyzer or get_default_analyzer()
    stems = set()
    for term in read_word_list(path):
        stems.update(analyzer.token_set(term))
    logger.info(f"科学术语表加载完成: {path}, 共 {len(stems)} 个词干")
    return frozenset(stems)


@dataclass
class SupportGraph:
    """某个选项的最优支持图：取值为1的顶点和边"""
    vertices: List[Vertex] = field(default_factory=list)
    edges: List[Edge] = field(default_factory=list)
    choice_index: Optional[int] = None
    objective: float = 0.0

    def of_kind(self, kind: str) -> List[Vertex]:
        return [v for v in self.vertices if v.kind == kind]

    @property
    def tuples(self) -> List[KBTuple]:
        return [v.kb_tuple for v in self.of_kind(KIND_TUPLE) if v.kb_tuple is not None]

    def is_empty(self) -> bool:
        return not self.vertices and not self.edges

    def to_dict(self) -> Dict[str, Any]:
        return {
            'choice_index': self.choice_index,
            'objective': self.objective,
            'vertices': [v.to_dict() for v in self.vertices],
            'edges': [e.to_dict() for e in self.edges],
            'tuples': [t.to_dict() for t in self.tuples],
        }
