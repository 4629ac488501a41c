#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
文本规范化：分词、词干化、停用词过滤与问题分块。

所有操作都是确定性的纯函数：同样的停用词表、例外表和词干器，
对同样的输入总是给出同样的输出，可在多线程中并发调用。
"""

import os
import re
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional

from nltk.stem import PorterStemmer

from tuple_qa.utils.exceptions import EmptyQuestionError, DataError
from tuple_qa.utils.logger import get_logger

logger = get_logger(__name__)

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')
DEFAULT_STOPWORDS_FILE = os.path.join(DATA_DIR, 'stopwords.txt')
DEFAULT_STEM_EXCEPTIONS_FILE = os.path.join(DATA_DIR, 'stem_exceptions.txt')
DEFAULT_PREDICATE_CUES_FILE = os.path.join(DATA_DIR, 'predicate_cues.txt')

# 小写后的词：字母数字串，允许内部撇号（isn't、children's）
TOKEN_RE = re.compile(r"[a-z0-9]+(?:'[a-z0-9]+)*")

# 不打断分块的词间字符
_CHUNK_JOINERS = set(" \t\r\n-")

# 词干迭代上限，超过即认为已收敛
_MAX_STEM_ROUNDS = 8


@dataclass
class TokenList:
    """词干序列及其在原文中的位置（从1开始）"""
    stems: List[str] = field(default_factory=list)
    original_positions: List[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.stems)

    def __iter__(self):
        return iter(self.stems)

    def as_set(self) -> FrozenSet[str]:
        return frozenset(self.stems)


@dataclass
class QTerm:
    """问题分块（qterm）"""
    text: str
    stems: TokenList
    position: int
    question_length: int

    @property
    def stem_set(self) -> FrozenSet[str]:
        return self.stems.as_set()

    def to_dict(self) -> Dict[str, object]:
        return {
            'text': self.text,
            'stems': list(self.stems.stems),
            'position': self.position,
        }


@dataclass
class _Token:
    position: int
    surface: str
    stem: Optional[str]
    start: int
    end: int


def normalize_text(text: str) -> str:
    """小写化并统一撇号"""
    return (text or '').lower().replace('’', "'").replace('‘', "'").replace('`', "'")


def read_word_list(path: str) -> List[str]:
    """
    读取每行一个条目的UTF-8文本文件，忽略空行和#注释行。

    Args:
        path: 文件路径

    Returns:
        List[str]: 条目列表

    Raises:
        DataError: 文件无法读取
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            lines = [line.strip() for line in f]
    except OSError as e:
        raise DataError(f"读取词表文件失败: {path}: {str(e)}")
    return [line for line in lines if line and not line.startswith('#')]


class TextAnalyzer:
    """
    文本分析器，封装停用词表、词干例外表、谓词提示词表与Porter词干器。

    词干化会迭代到不动点，保证对自身输出再次分词时结果不变。
    """

    def __init__(self,
                 stopwords: Iterable[str],
                 stem_exceptions: Optional[Dict[str, str]] = None,
                 predicate_cues: Iterable[str] = (),
                 chunking: str = 'span'):
        """
        初始化文本分析器

        Args:
            stopwords: 停用词（小写原形）
            stem_exceptions: 不规则词形映射，在词干化之前应用
            predicate_cues: 开启新分块的动词（原形，加载时词干化）
            chunking: 分块模式，span（停用词分隔的最长片段）或 unigram（每个内容词一个分块）
        """
        self.stopwords: FrozenSet[str] = frozenset(normalize_text(w) for w in stopwords)
        self.stem_exceptions: Dict[str, str] = {
            normalize_text(k): normalize_text(v) for k, v in (stem_exceptions or {}).items()
        }
        self.chunking = chunking
        self._stemmer = PorterStemmer()
        self._stem_cached = lru_cache(maxsize=65536)(self._stem_uncached)
        self.predicate_cues: FrozenSet[str] = frozenset(
            s for s in (self.stem(normalize_text(c)) for c in predicate_cues) if s
        )

    @classmethod
    def from_files(cls,
                   stopwords_file: Optional[str] = None,
                   stem_exceptions_file: Optional[str] = None,
                   predicate_cues_file: Optional[str] = None,
                   chunking: str = 'span') -> 'TextAnalyzer':
        """
        从数据文件构建分析器，未指定的文件使用内置数据。

        Returns:
            TextAnalyzer: 文本分析器
        """
        stopwords = read_word_list(stopwords_file or DEFAULT_STOPWORDS_FILE)

        exceptions: Dict[str, str] = {}
        for line in read_word_list(stem_exceptions_file or DEFAULT_STEM_EXCEPTIONS_FILE):
            parts = line.split()
            if len(parts) != 2:
                logger.warning(f"忽略格式错误的词干例外条目: {line}")
                continue
            exceptions[parts[0]] = parts[1]

        cues = read_word_list(predicate_cues_file or DEFAULT_PREDICATE_CUES_FILE)
        return cls(stopwords, exceptions, cues, chunking=chunking)

    @classmethod
    def from_config(cls, config) -> 'TextAnalyzer':
        """
        根据配置的text节构建分析器

        Args:
            config: Config对象

        Returns:
            TextAnalyzer: 文本分析器
        """
        return cls.from_files(
            stopwords_file=config.get('text.stopwords_file'),
            stem_exceptions_file=config.get('text.stem_exceptions_file'),
            predicate_cues_file=config.get('text.predicate_cues_file'),
            chunking=config.get('text.chunking', 'span'),
        )

    def _stem_uncached(self, word: str) -> str:
        # 例外映射与词干器一起迭代，结果再次输入时保持不变
        current = word
        for _ in range(_MAX_STEM_ROUNDS):
            nxt = self._stemmer.stem(self.stem_exceptions.get(current, current))
            if nxt == current:
                break
            current = nxt
        return current

    def stem(self, word: str) -> str:
        """对单个小写词做词干化（迭代到不动点）"""
        return self._stem_cached(word)

    def raw_tokens(self, text: str) -> List[str]:
        """
        小写的表层词序列（不做停用词过滤和词干化），用于否定词检测等表层匹配。

        Args:
            text: 输入文本

        Returns:
            List[str]: 表层词列表
        """
        return TOKEN_RE.findall(normalize_text(text))

    def _analyze(self, text: str) -> List[_Token]:
        normalized = normalize_text(text)
        tokens = []
        for position, match in enumerate(TOKEN_RE.finditer(normalized), start=1):
            surface = match.group()
            stem = None
            if surface not in self.stopwords:
                base = surface.split("'", 1)[0]
                if base and base not in self.stopwords:
                    candidate = self.stem(base)
                    if candidate and candidate not in self.stopwords:
                        stem = candidate
            tokens.append(_Token(position, surface, stem, match.start(), match.end()))
        return tokens

    def tokenize(self, text: str) -> TokenList:
        """
        分词、去停用词并词干化。

        Args:
            text: 输入文本

        Returns:
            TokenList: 词干序列与原文位置
        """
        result = TokenList()
        for token in self._analyze(text):
            if token.stem is not None:
                result.stems.append(token.stem)
                result.original_positions.append(token.position)
        return result

    def token_set(self, text: str) -> FrozenSet[str]:
        """文本的去重词干集合 tok(text)"""
        return frozenset(self.tokenize(text).stems)

    def chunk_qterms(self, question_text: str) -> List[QTerm]:
        """
        将问题切分为连续的内容词分块（qterm），位置按阅读顺序从1编号。

        分块边界：停用词、标点、以及谓词提示词（动词开启新分块，
        连续的提示词留在同一分块）。unigram 模式下每个内容词单独成块。

        Args:
            question_text: 问题文本

        Returns:
            List[QTerm]: 分块列表

        Raises:
            EmptyQuestionError: 问题不包含任何内容词
        """
        tokens = self._analyze(question_text)
        original = question_text or ''
        normalized = normalize_text(original)
        # lower() 在少数字符上会改变长度，此时只能用规范化文本取表层形式
        surface_source = original if len(original) == len(normalized) else normalized

        groups: List[List[_Token]] = []
        current: List[_Token] = []
        for token in tokens:
            if token.stem is None:
                if current:
                    groups.append(current)
                    current = []
                continue

            if current:
                previous = current[-1]
                gap = normalized[previous.end:token.start]
                breaks = (
                    self.chunking == 'unigram'
                    or any(ch not in _CHUNK_JOINERS for ch in gap)
                    or (token.stem in self.predicate_cues and previous.stem not in self.predicate_cues)
                )
                if breaks:
                    groups.append(current)
                    current = []
            current.append(token)
        if current:
            groups.append(current)

        if not groups:
            raise EmptyQuestionError(details={'question': question_text})

        qterms = []
        for index, group in enumerate(groups, start=1):
            qterms.append(QTerm(
                text=surface_source[group[0].start:group[-1].end],
                stems=TokenList([t.stem for t in group], [t.position for t in group]),
                position=index,
                question_length=len(groups),
            ))
        return qterms


_default_analyzer: Optional[TextAnalyzer] = None
_default_lock = threading.Lock()


def get_default_analyzer() -> TextAnalyzer:
    """获取使用内置数据文件的默认分析器（进程内单例）"""
    global _default_analyzer
    if _default_analyzer is None:
        with _default_lock:
            if _default_analyzer is None:
                _default_analyzer = TextAnalyzer.from_files()
    return _default_analyzer


def tokenize(text: str) -> TokenList:
    """使用默认分析器分词"""
    return get_default_analyzer().tokenize(text)


def token_set(text: str) -> FrozenSet[str]:
    """使用默认分析器计算 tok(text)"""
    return get_default_analyzer().token_set(text)


def chunk_qterms(question_text: str) -> List[QTerm]:
    """使用默认分析器对问题分块"""
    return get_default_analyzer().chunk_qterms(question_text)


def raw_tokens(text: str) -> List[str]:
    """使用默认分析器取表层词"""
    return get_default_analyzer().raw_tokens(text)
