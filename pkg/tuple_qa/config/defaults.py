#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
默认配置。配置文件中缺失的键均从这里补齐。
"""

import copy
from typing import Dict, Any

DEFAULT_CONFIG: Dict[str, Any] = {
    'text': {
        'chunking': 'span',             # span | unigram
        'stopwords_file': None,         # None 使用内置列表
        'stem_exceptions_file': None,
        'predicate_cues_file': None,
    },
    'selection': {
        'pool': 1000,
        'k': 50,
        'normalization': 'sum',         # sum | product
        'on_the_fly_k': 50,
        'max_sentence_chars': 300,
        'max_tables': 7,
        'max_rows': 20,
        'table_k': 50,
    },
    'graph': {
        'w': [2, 4, 4, 4, 2],
        'qterm_base': 0.8,
        'edge_threshold_qf': 0.1,
        'edge_threshold_fc': 0.2,
        'edge_scale': 1.0,
        'science_lexicon': None,
        'science_boost': None,          # None: 有词表时1.5，否则1.0
        'idf_mode': 'union',            # union | min
        'which_term_boost': False,
    },
    'solver': {
        'bound': 'lp',                  # lp | greedy
        'dump_lp_dir': None,
    },
    'evaluation': {
        'tie_credit': 'fractional',     # fractional | strict
        'ir_top_hits': 200,
        'workers': 1,
        'significance_level': 0.05,
    },
    'log': {
        'level': 'INFO',
        'file': None,
        'max_size': 10,
        'backup_count': 5,
        'json_format': False,
        'detailed': False,
        'separate_error_log': False,
    },
}


def deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """
    递归合并两个字典，override 中的值优先。

    Args:
        base: 基础字典
        override: 覆盖字典

    Returns:
        Dict[str, Any]: 合并后的新字典
    """
    result = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = deep_merge(result[key], value)
        else:
            result[key] = copy.deepcopy(value)
    return result
