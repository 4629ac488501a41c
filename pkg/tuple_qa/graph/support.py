#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
从规划的赋值中还原支持图。
"""

from typing import Mapping

from tuple_qa.graph.models import Edge, SupportGraph, Vertex, KIND_CHOICE
from tuple_qa.ilp.models import BinaryProgram
from tuple_qa.utils.exceptions import InvalidAssignmentError


def extract_support_graph(model: BinaryProgram, assignment: Mapping[str, int]) -> SupportGraph:
    """
    取出赋值为1的顶点和边。

    Args:
        model: build_model 生成的规划
        assignment: 完整的可行赋值

    Returns:
        SupportGraph: 支持图

    Raises:
        InvalidAssignmentError: 赋值不完整或违反约束
    """
    problems = model.violations(assignment)
    if problems:
        raise InvalidAssignmentError(f"赋值不可行: {problems[0]}", details={'violations': problems[:20]})

    graph = SupportGraph(objective=model.objective_value(assignment))
    for var_id in model.variable_ids:
        if assignment[var_id] != 1:
            continue
        meta = model.metadata.get(var_id)
        if isinstance(meta, Edge):
            graph.edges.append(meta)
        elif isinstance(meta, Vertex):
            graph.vertices.append(meta)
            if meta.kind == KIND_CHOICE:
                graph.choice_index = meta.index
    return graph
