#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
文本模块 - 分词、词干化、停用词过滤与问题分块
"""

from tuple_qa.text.tokenizer import (
    TokenList,
    QTerm,
    TextAnalyzer,
    get_default_analyzer,
    tokenize,
    token_set,
    chunk_qterms,
    raw_tokens,
    read_word_list,
)

__all__ = [
    'TokenList',
    'QTerm',
    'TextAnalyzer',
    'get_default_analyzer',
    'tokenize',
    'token_set',
    'chunk_qterms',
    'raw_tokens',
    'read_word_list',
]
