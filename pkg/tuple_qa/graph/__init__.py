#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
支持图模块 - 问题模型、目标系数、ILP模型构建与支持图提取
"""

from tuple_qa.graph.models import (
    Choice,
    Question,
    Vertex,
    Edge,
    GraphWeights,
    SupportGraph,
    load_science_lexicon,
    KIND_QTERM,
    KIND_TUPLE,
    KIND_FIELD,
    KIND_CHOICE,
)
from tuple_qa.graph.scoring import edge_weight, qterm_coefficient, qterm_doc_freq, tuple_coefficient
from tuple_qa.graph.builder import build_model, qterm_var, choice_var, tuple_var, field_var, edge_var
from tuple_qa.graph.support import extract_support_graph

__all__ = [
    'Choice',
    'Question',
    'Vertex',
    'Edge',
    'GraphWeights',
    'SupportGraph',
    'load_science_lexicon',
    'KIND_QTERM',
    'KIND_TUPLE',
    'KIND_FIELD',
    'KIND_CHOICE',
    'edge_weight',
    'qterm_coefficient',
    'qterm_doc_freq',
    'tuple_coefficient',
    'build_model',
    'qterm_var',
    'choice_var',
    'tuple_var',
    'field_var',
    'edge_var',
    'extract_support_graph',
]
