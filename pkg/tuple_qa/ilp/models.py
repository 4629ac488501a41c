#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
0-1 线性规划数据模型：变量、线性约束、强制赋值与求解结果。
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

from tuple_qa.utils.exceptions import ProgramValidationError

LE = '<='
EQ = '='
GE = '>='
RELATIONS = (LE, EQ, GE)

STATUS_OPTIMAL = 'optimal'
STATUS_INFEASIBLE = 'infeasible'

FEASIBILITY_TOL = 1e-9
INTEGRALITY_TOL = 1e-6


@dataclass
class Variable:
    """二元变量及其目标系数"""
    id: str
    objective: float = 0.0


@dataclass
class LinearConstraint:
    """线性约束 Σ coef·x (<=|=|>=) bound"""
    terms: List[Tuple[str, float]]
    relation: str
    bound: float
    name: str = ""

    def activity(self, assignment: Mapping[str, int]) -> float:
        """约束左端在给定赋值下的取值"""
        return sum(coef * assignment[var_id] for var_id, coef in self.terms)

    def is_satisfied(self, assignment: Mapping[str, int], tol: float = FEASIBILITY_TOL) -> bool:
        value = self.activity(assignment)
        if self.relation == LE:
            return value <= self.bound + tol
        if self.relation == GE:
            return value >= self.bound - tol
        return abs(value - self.bound) <= tol

    def __str__(self) -> str:
        lhs = " + ".join(f"{coef:g}*{var_id}" for var_id, coef in self.terms)
        label = f"{self.name}: " if self.name else ""
        return f"{label}{lhs} {self.relation} {self.bound:g}"


@dataclass
class Solution:
    """求解结果"""
    status: str
    objective: Optional[float] = None
    assignment: Dict[str, int] = field(default_factory=dict)
    nodes: int = 0
    wall_time: float = 0.0

    @property
    def is_optimal(self) -> bool:
        return self.status == STATUS_OPTIMAL

    def active(self) -> List[str]:
        """取值为1的变量ID"""
        return [var_id for var_id, value in self.assignment.items() if value == 1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'status': self.status,
            'objective': self.objective,
            'nodes': self.nodes,
            'wall_time': round(self.wall_time, 6),
        }


class BinaryProgram:
    """
    最大化目标的0-1线性规划。

    metadata 保存变量ID到建模对象（顶点、边）的映射，求解器不读取它，
    只用于从求解结果还原支撑图。
    """

    def __init__(self, name: str = ""):
        self.name = name
        self.variables: List[Variable] = []
        self.constraints: List[LinearConstraint] = []
        self.forced: Dict[str, int] = {}
        self.metadata: Dict[str, Any] = {}
        self._index: Dict[str, int] = {}

    def add_variable(self, var_id: str, objective: float = 0.0, meta: Any = None) -> str:
        """
        添加变量

        Raises:
            ProgramValidationError: 变量ID重复或系数非有限值
        """
        if var_id in self._index:
            raise ProgramValidationError(f"变量ID重复: {var_id}", {'variable': var_id})
        if not math.isfinite(objective):
            raise ProgramValidationError(f"变量 {var_id} 的目标系数不是有限值", {'variable': var_id})
        self._index[var_id] = len(self.variables)
        self.variables.append(Variable(var_id, float(objective)))
        if meta is not None:
            self.metadata[var_id] = meta
        return var_id

    def add_constraint(self, terms: Iterable[Tuple[str, float]], relation: str, bound: float,
                       name: str = "") -> LinearConstraint:
        constraint = LinearConstraint([(v, float(c)) for v, c in terms], relation, float(bound), name)
        self.constraints.append(constraint)
        return constraint

    def force(self, var_id: str, value: int) -> None:
        """强制变量取值"""
        self.forced[var_id] = value

    def with_forced(self, forced: Mapping[str, int]) -> 'BinaryProgram':
        """
        返回附加强制赋值后的新规划，变量和约束与原规划共享。

        Args:
            forced: 变量ID → 0/1

        Returns:
            BinaryProgram: 新规划
        """
        program = BinaryProgram(self.name)
        program.variables = self.variables
        program.constraints = self.constraints
        program.metadata = self.metadata
        program._index = self._index
        program.forced = dict(self.forced)
        program.forced.update(forced)
        return program

    def __contains__(self, var_id: str) -> bool:
        return var_id in self._index

    def __len__(self) -> int:
        return len(self.variables)

    @property
    def variable_ids(self) -> List[str]:
        return [v.id for v in self.variables]

    def index_of(self, var_id: str) -> int:
        return self._index[var_id]

    def objective_of(self, var_id: str) -> float:
        return self.variables[self._index[var_id]].objective

    def validate(self) -> None:
        """
        校验规划结构

        Raises:
            ProgramValidationError: 约束引用未知变量、关系符无效、系数非有限值、
                约束为空或强制值不是0/1
        """
        for i, constraint in enumerate(self.constraints):
            label = constraint.name or f"#{i}"
            if constraint.relation not in RELATIONS:
                raise ProgramValidationError(f"约束 {label} 的关系符无效: {constraint.relation}")
            if not constraint.terms:
                raise ProgramValidationError(f"约束 {label} 没有任何项")
            if not math.isfinite(constraint.bound):
                raise ProgramValidationError(f"约束 {label} 的右端不是有限值")
            for var_id, coef in constraint.terms:
                if var_id not in self._index:
                    raise ProgramValidationError(f"约束 {label} 引用了未知变量: {var_id}",
                                                 {'constraint': label, 'variable': var_id})
                if not math.isfinite(coef):
                    raise ProgramValidationError(f"约束 {label} 中 {var_id} 的系数不是有限值")
        for var_id, value in self.forced.items():
            if var_id not in self._index:
                raise ProgramValidationError(f"强制赋值引用了未知变量: {var_id}", {'variable': var_id})
            if value not in (0, 1):
                raise ProgramValidationError(f"变量 {var_id} 的强制值必须是0或1: {value}")

    def objective_value(self, assignment: Mapping[str, int]) -> float:
        return sum(v.objective * assignment[v.id] for v in self.variables)

    def violations(self, assignment: Mapping[str, int], tol: float = FEASIBILITY_TOL) -> List[str]:
        """
        列出赋值违反的条件，空列表表示可行。

        Args:
            assignment: 变量ID → 0/1
            tol: 可行性容差

        Returns:
            List[str]: 违反描述
        """
        problems = []
        for v in self.variables:
            if assignment.get(v.id) not in (0, 1):
                problems.append(f"变量 {v.id} 未赋值或不是0/1")
        if problems:
            return problems
        for var_id, value in self.forced.items():
            if assignment[var_id] != value:
                problems.append(f"强制赋值 {var_id}={value} 未满足")
        for constraint in self.constraints:
            if not constraint.is_satisfied(assignment, tol):
                problems.append(f"约束未满足: {constraint}")
        return problems

    def is_feasible(self, assignment: Mapping[str, int], tol: float = FEASIBILITY_TOL) -> bool:
        return not self.violations(assignment, tol)

    def stats(self) -> Dict[str, int]:
        return {'variables': len(self.variables), 'constraints': len(self.constraints),
                'forced': len(self.forced)}
