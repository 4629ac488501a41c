#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
支持图ILP模型构建。

变量命名：
- q:<位置>            qterm
- a:<下标>            答案选项
- t:<元组ID>          元组
- f:<元组ID>:<角色>    元组字段（subject、predicate、object_0...）
- e:<源>-><目标>       对齐边
"""

from collections import defaultdict
from typing import Dict, List, Sequence

from tuple_qa.graph.models import (
    Edge,
    GraphWeights,
    Question,
    Vertex,
    KIND_CHOICE,
    KIND_FIELD,
    KIND_QTERM,
    KIND_TUPLE,
)
from tuple_qa.graph.scoring import edge_weight, qterm_coefficient, tuple_coefficient
from tuple_qa.ilp.models import BinaryProgram, EQ, GE, LE
from tuple_qa.kb.models import PREDICATE, SUBJECT, ScoredTuple, object_role
from tuple_qa.utils.decorators import log_function
from tuple_qa.utils.exceptions import GraphBuildError
from tuple_qa.utils.logger import get_logger

logger = get_logger(__name__)


def qterm_var(position: int) -> str:
    return f"q:{position}"


def choice_var(index: int) -> str:
    return f"a:{index}"


def tuple_var(tuple_id: str) -> str:
    return f"t:{tuple_id}"


def field_var(tuple_id: str, role: str) -> str:
    return f"f:{tuple_id}:{role}"


def edge_var(source: str, target: str) -> str:
    return f"e:{source}->{target}"


class _ModelBuilder:
    """构建单个问题的规划，内部状态只在一次构建中使用"""

    def __init__(self, question: Question, tuples: Sequence[ScoredTuple], weights: GraphWeights):
        self.question = question
        self.tuples = [st.tuple for st in tuples]
        self.weights = weights
        self.program = BinaryProgram(name=f"question_{question.id}")
        # 顶点变量 → 关联边变量
        self.incident: Dict[str, List[str]] = defaultdict(list)

    def build(self) -> BinaryProgram:
        self._add_choices()
        if not self.tuples:
            return self.program

        self._add_qterms()
        for t in self.tuples:
            self._add_tuple(t)
        for t in self.tuples:
            self._add_edges(t)

        self._add_definitional_constraints()
        self._add_degree_constraints()
        for t in self.tuples:
            self._add_tuple_constraints(t)
        return self.program

    def _add_choices(self) -> None:
        for choice in self.question.choices:
            vertex = Vertex(choice_var(choice.index), KIND_CHOICE, choice.text, index=choice.index)
            self.program.add_variable(vertex.var_id, 0.0, vertex)
        self.program.add_constraint(
            [(choice_var(c.index), 1.0) for c in self.question.choices], EQ, 1.0, name='one_choice'
        )

    def _add_qterms(self) -> None:
        for q in self.question.qterms:
            vertex = Vertex(qterm_var(q.position), KIND_QTERM, q.text, index=q.position)
            coefficient = qterm_coefficient(q, self.tuples, self.weights)
            self.program.add_variable(vertex.var_id, coefficient, vertex)

    def _add_tuple(self, t) -> None:
        vertex = Vertex(tuple_var(t.id), KIND_TUPLE, str(t), tuple_id=t.id, kb_tuple=t)
        self.program.add_variable(vertex.var_id, tuple_coefficient(t, self.question), vertex)
        for role in t.roles:
            fvertex = Vertex(field_var(t.id, role), KIND_FIELD, t.field_text(role),
                             tuple_id=t.id, role=role, kb_tuple=t)
            self.program.add_variable(fvertex.var_id, 0.0, fvertex)

    def _add_edge(self, source: Vertex, target: Vertex, weight: float) -> None:
        var_id = edge_var(source.var_id, target.var_id)
        scaled = weight * self.weights.edge_scale
        self.program.add_variable(var_id, scaled, Edge(var_id, source, target, scaled))
        self.incident[source.var_id].append(var_id)
        self.incident[target.var_id].append(var_id)

    def _add_edges(self, t) -> None:
        metadata = self.program.metadata
        for role in t.roles:
            fvertex = metadata[field_var(t.id, role)]
            field_stems = t.field_set(role)
            if not field_stems:
                continue
            for q in self.question.qterms:
                weight = edge_weight(q.stem_set, field_stems)
                if weight > self.weights.edge_threshold_qf:
                    self._add_edge(metadata[qterm_var(q.position)], fvertex, weight)
            for choice in self.question.choices:
                if not choice.token_set:
                    continue
                weight = edge_weight(field_stems, choice.token_set)
                if weight > self.weights.edge_threshold_fc:
                    self._add_edge(fvertex, metadata[choice_var(choice.index)], weight)

    def _at_least_one_edge(self, vertex_var: str, label: str) -> None:
        edges = self.incident.get(vertex_var, [])
        if edges:
            self.program.add_constraint([(e, 1.0) for e in edges] + [(vertex_var, -1.0)], GE, 0.0, name=label)
        else:
            self.program.add_constraint([(vertex_var, 1.0)], LE, 0.0, name=label)

    def _add_definitional_constraints(self) -> None:
        program = self.program
        for q in self.question.qterms:
            self._at_least_one_edge(qterm_var(q.position), f"qterm_has_edge:{q.position}")
        for choice in self.question.choices:
            self._at_least_one_edge(choice_var(choice.index), f"choice_has_edge:{choice.index}")
        for t in self.tuples:
            for role in t.roles:
                fid = field_var(t.id, role)
                self._at_least_one_edge(fid, f"field_has_edge:{fid}")
                program.add_constraint([(fid, 1.0), (tuple_var(t.id), -1.0)], LE, 0.0,
                                       name=f"field_needs_tuple:{fid}")

        for var_id, meta in list(program.metadata.items()):
            if isinstance(meta, Edge):
                program.add_constraint([(var_id, 1.0), (meta.source.var_id, -1.0)], LE, 0.0,
                                       name=f"edge_source:{var_id}")
                program.add_constraint([(var_id, 1.0), (meta.target.var_id, -1.0)], LE, 0.0,
                                       name=f"edge_target:{var_id}")

    def _degree_limit(self, vertex_var: str, limit: int, label: str) -> None:
        edges = self.incident.get(vertex_var, [])
        if edges:
            self.program.add_constraint([(e, 1.0) for e in edges] + [(vertex_var, -float(limit))],
                                        LE, 0.0, name=label)

    def _add_degree_constraints(self) -> None:
        w = self.weights
        for t in self.tuples:
            for role in t.roles:
                fid = field_var(t.id, role)
                self._degree_limit(fid, w.w1 - 1, f"field_degree:{fid}")
        for choice in self.question.choices:
            self._degree_limit(choice_var(choice.index), w.w2 - 1, f"choice_degree:{choice.index}")
        for q in self.question.qterms:
            self._degree_limit(qterm_var(q.position), w.w3 - 1, f"qterm_degree:{q.position}")
        self.program.add_constraint([(tuple_var(t.id), 1.0) for t in self.tuples], LE, float(w.w4 - 1),
                                    name='tuple_budget')

    def _add_tuple_constraints(self, t) -> None:
        program = self.program
        metadata = program.metadata
        tid = tuple_var(t.id)
        fields = [field_var(t.id, role) for role in t.roles]

        program.add_constraint([(f, 1.0) for f in fields] + [(tid, -float(self.weights.w5))], GE, 0.0,
                               name=f"tuple_min_fields:{t.id}")

        qterm_side: List[str] = []
        choice_side: List[str] = []
        for fid in fields:
            for e in self.incident.get(fid, []):
                if metadata[e].source.var_id == fid:
                    choice_side.append(e)
                else:
                    qterm_side.append(e)
        program.add_constraint([(e, 1.0) for e in qterm_side] + [(tid, -1.0)], GE, 0.0,
                               name=f"tuple_needs_qterm:{t.id}")
        program.add_constraint([(e, 1.0) for e in choice_side] + [(tid, -1.0)], GE, 0.0,
                               name=f"tuple_needs_choice:{t.id}")

        program.add_constraint([(field_var(t.id, SUBJECT), 1.0), (tid, -1.0)], GE, 0.0,
                               name=f"tuple_needs_subject:{t.id}")
        if t.from_table and t.objects:
            program.add_constraint([(field_var(t.id, object_role(0)), 1.0), (tid, -1.0)], GE, 0.0,
                                   name=f"table_tuple_needs_object:{t.id}")

        self._add_ordering_constraints(t)

    def _qterm_edges(self, fid: str) -> List[tuple]:
        """字段的 qterm 侧边：(qterm位置, 边变量)"""
        result = []
        for e in self.incident.get(fid, []):
            edge = self.program.metadata[e]
            if edge.source.kind == KIND_QTERM:
                result.append((edge.source.index, e))
        return result

    def _add_ordering_constraints(self, t) -> None:
        predicate_edges = self._qterm_edges(field_var(t.id, PREDICATE))
        if not predicate_edges:
            return
        subject_edges = self._qterm_edges(field_var(t.id, SUBJECT))
        object_edges = [pe for i in range(len(t.objects)) for pe in self._qterm_edges(field_var(t.id, object_role(i)))]

        for p, pred_edge in predicate_edges:
            for j, subj_edge in subject_edges:
                if j >= p:
                    self.program.add_constraint([(pred_edge, 1.0), (subj_edge, 1.0)], LE, 1.0,
                                                name=f"order_subject:{pred_edge}|{subj_edge}")
            for j, obj_edge in object_edges:
                if j <= p:
                    self.program.add_constraint([(pred_edge, 1.0), (obj_edge, 1.0)], LE, 1.0,
                                                name=f"order_object:{pred_edge}|{obj_edge}")


@log_function(level='DEBUG')
def build_model(question: Question, tuples: Sequence[ScoredTuple], weights: GraphWeights) -> BinaryProgram:
    """
    为问题构建支持图0-1规划。

    没有元组时返回只含选项变量和"恰好一个选项"约束的退化规划。

    Args:
        question: 问题
        tuples: 选中的元组（T_qa ∪ T'_qa），元组ID必须唯一
        weights: 模型参数

    Returns:
        BinaryProgram: 规划，metadata 记录每个变量对应的顶点或边

    Raises:
        GraphBuildError: 选项少于2个或元组ID重复
    """
    if len(question.choices) < 2:
        raise GraphBuildError(f"问题 {question.id} 至少需要2个选项", code='TOO_FEW_CHOICES',
                              details={'id': question.id, 'choices': len(question.choices)})
    ids = [st.tuple.id for st in tuples]
    if len(set(ids)) != len(ids):
        raise GraphBuildError(f"问题 {question.id} 的候选元组ID重复", details={'id': question.id})

    program = _ModelBuilder(question, tuples, weights).build()
    logger.debug(f"问题 {question.id} 模型: {program.stats()}")
    return program
