#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
0-1 线性规划的精确求解器：深度优先分支定界。

每个节点先做单位传播（根据约束最小活动量固定变量），再计算上界：
- lp: scipy HiGHS 对偶单纯形求解的线性松弛
- greedy: 已固定部分的目标值 + 自由变量的正系数之和

所有约束统一转换为 A x <= b 的形式。
"""

import time
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

from tuple_qa.ilp.models import (
    BinaryProgram,
    Solution,
    LE,
    GE,
    STATUS_OPTIMAL,
    STATUS_INFEASIBLE,
    FEASIBILITY_TOL,
    INTEGRALITY_TOL,
)
from tuple_qa.utils.exceptions import ProgramValidationError
from tuple_qa.utils.logger import get_logger

logger = get_logger(__name__)

BOUND_LP = 'lp'
BOUND_GREEDY = 'greedy'
BOUND_MODES = (BOUND_LP, BOUND_GREEDY)

# 线性松弛最优值的数值余量，保证上界不低于真实最优值
LP_BOUND_SLACK = 1e-7
# 比当前最优解至少好这么多才值得继续搜索
IMPROVEMENT_TOL = 1e-9


class CompiledProgram:
    """编译为稀疏矩阵形式的规划：max c·x, A x <= b, x ∈ {0,1}"""

    def __init__(self, program: BinaryProgram):
        program.validate()
        self.program = program
        self.n = len(program.variables)
        self.c = np.array([v.objective for v in program.variables], dtype=float)

        rows: List[int] = []
        cols: List[int] = []
        data: List[float] = []
        bounds: List[float] = []

        def add_row(terms, sign: float, bound: float) -> None:
            row = len(bounds)
            merged: Dict[int, float] = {}
            for var_id, coef in terms:
                j = program.index_of(var_id)
                merged[j] = merged.get(j, 0.0) + sign * coef
            for j in sorted(merged):
                if merged[j] != 0.0:
                    rows.append(row)
                    cols.append(j)
                    data.append(merged[j])
            bounds.append(sign * bound)

        for constraint in program.constraints:
            if constraint.relation != GE:
                add_row(constraint.terms, 1.0, constraint.bound)
            if constraint.relation != LE:
                add_row(constraint.terms, -1.0, constraint.bound)

        self.m = len(bounds)
        self.b = np.array(bounds, dtype=float)
        self.A = sparse.csr_matrix((data, (rows, cols)), shape=(self.m, self.n), dtype=float)
        coo = self.A.tocoo()
        self._nz_rows = coo.row
        self._nz_cols = coo.col
        self._nz_data = coo.data
        self._A_pos = self.A.maximum(0).tocsr()
        self._A_neg = self.A.minimum(0).tocsr()

    def initial_box(self, fixed: Optional[Mapping[str, int]] = None) -> Tuple[np.ndarray, np.ndarray]:
        """按强制赋值和额外固定值得到变量上下界"""
        lo = np.zeros(self.n)
        hi = np.ones(self.n)
        values = dict(self.program.forced)
        if fixed:
            for var_id, value in fixed.items():
                if var_id not in self.program:
                    raise ProgramValidationError(f"固定值引用了未知变量: {var_id}", {'variable': var_id})
                values[var_id] = value
        for var_id, value in values.items():
            j = self.program.index_of(var_id)
            lo[j] = hi[j] = float(value)
        return lo, hi

    def propagate(self, lo: np.ndarray, hi: np.ndarray) -> bool:
        """
        单位传播：原地收紧 lo/hi。

        对每行计算盒约束下的最小活动量，若某个自由变量取不利值会使该行无法满足，
        就把它固定为另一个值。

        Returns:
            bool: False 表示节点不可行
        """
        if self.m == 0:
            return True
        while True:
            min_activity = self._A_pos @ lo + self._A_neg @ hi
            slack = self.b - min_activity
            if np.any(slack < -FEASIBILITY_TOL):
                return False

            free = (lo < hi)[self._nz_cols]
            tight = np.abs(self._nz_data) > slack[self._nz_rows] + FEASIBILITY_TOL
            hits = free & tight
            if not np.any(hits):
                return True

            cols = self._nz_cols[hits]
            positive = self._nz_data[hits] > 0
            to_zero = np.unique(cols[positive])
            to_one = np.unique(cols[~positive])
            if np.intersect1d(to_zero, to_one).size:
                return False
            hi[to_zero] = 0.0
            lo[to_one] = 1.0

    def is_feasible(self, x: np.ndarray) -> bool:
        if self.m == 0:
            return True
        return bool(np.all(self.A @ x <= self.b + FEASIBILITY_TOL))

    def greedy_bound(self, lo: np.ndarray, hi: np.ndarray) -> float:
        free = lo < hi
        return float(self.c @ lo + np.sum(np.maximum(self.c[free], 0.0)))

    def sign_completion(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """自由变量按目标系数符号取值（正系数取1），其目标值等于 greedy 上界"""
        x = lo.copy()
        free = lo < hi
        x[free & (self.c > 0)] = 1.0
        return x

    def lp_relaxation(self, lo: np.ndarray, hi: np.ndarray) -> Tuple[str, Optional[float], Optional[np.ndarray]]:
        """
        求解线性松弛

        Returns:
            Tuple: (状态, 上界, 松弛解)，状态为 optimal / infeasible / failed
        """
        if self.m == 0:
            x = self.sign_completion(lo, hi)
            return 'optimal', float(self.c @ x), x
        result = linprog(-self.c, A_ub=self.A, b_ub=self.b,
                         bounds=np.column_stack([lo, hi]), method='highs-ds')
        if result.status == 0:
            return 'optimal', float(-result.fun), np.asarray(result.x)
        if result.status == 2:
            return 'infeasible', None, None
        logger.warning(f"线性松弛求解失败（状态 {result.status}: {result.message}），改用贪心上界")
        return 'failed', None, None

    def to_assignment(self, x: np.ndarray) -> Dict[str, int]:
        return {v.id: int(round(x[j])) for j, v in enumerate(self.program.variables)}


def lp_bound(program: BinaryProgram, fixed: Optional[Mapping[str, int]] = None) -> Optional[float]:
    """
    在给定固定值下计算线性松弛上界（不做单位传播）。

    Args:
        program: 规划
        fixed: 额外固定的变量值

    Returns:
        Optional[float]: 上界；松弛不可行时为None
    """
    compiled = CompiledProgram(program)
    lo, hi = compiled.initial_box(fixed)
    status, bound, _ = compiled.lp_relaxation(lo, hi)
    if status == 'infeasible':
        return None
    if status == 'failed':
        return compiled.greedy_bound(lo, hi)
    return bound + LP_BOUND_SLACK * (1.0 + abs(bound))


def solve(program: BinaryProgram, bound: str = BOUND_LP) -> Solution:
    """
    求解0-1线性规划（最大化）。

    深度优先分支定界，在最分数的松弛变量上分支（并列取下标最小者），先探索取1分支。
    相同输入总是得到相同的赋值。

    Args:
        program: 规划
        bound: 上界方式，lp 或 greedy

    Returns:
        Solution: 最优解或不可行状态

    Raises:
        ProgramValidationError: 规划结构无效
    """
    if bound not in BOUND_MODES:
        raise ProgramValidationError(f"未知的上界方式: {bound}")

    started = time.perf_counter()
    compiled = CompiledProgram(program)

    best_value = -np.inf
    best_x: Optional[np.ndarray] = None
    nodes = 0

    def offer(x: np.ndarray) -> None:
        nonlocal best_value, best_x
        value = float(compiled.c @ x)
        if value > best_value + IMPROVEMENT_TOL:
            best_value = value
            best_x = x.copy()

    root_lo, root_hi = compiled.initial_box()
    stack = [(root_lo, root_hi)]

    while stack:
        lo, hi = stack.pop()
        nodes += 1

        if not compiled.propagate(lo, hi):
            continue

        upper = compiled.greedy_bound(lo, hi)
        if upper <= best_value + IMPROVEMENT_TOL:
            continue

        completion = compiled.sign_completion(lo, hi)
        if compiled.is_feasible(completion):
            offer(completion)
            continue

        relaxed: Optional[np.ndarray] = None
        if bound == BOUND_LP:
            status, lp_value, relaxed = compiled.lp_relaxation(lo, hi)
            if status == 'infeasible':
                continue
            if status == 'optimal':
                lp_value += LP_BOUND_SLACK * (1.0 + abs(lp_value))
                if lp_value <= best_value + IMPROVEMENT_TOL:
                    continue
                fractionality = np.minimum(relaxed, 1.0 - relaxed)
                if np.all(fractionality <= INTEGRALITY_TOL):
                    rounded = np.round(relaxed)
                    if compiled.is_feasible(rounded):
                        offer(rounded)
                        continue

        free = np.flatnonzero(lo < hi)
        if free.size == 0:
            # 全部固定但不可行
            continue
        if relaxed is not None:
            fractionality = np.minimum(relaxed[free], 1.0 - relaxed[free])
            j = int(free[int(np.argmax(fractionality))])
        else:
            j = int(free[0])

        zero_lo, zero_hi = lo.copy(), hi.copy()
        zero_hi[j] = 0.0
        one_lo, one_hi = lo.copy(), hi.copy()
        one_lo[j] = 1.0
        stack.append((zero_lo, zero_hi))
        stack.append((one_lo, one_hi))

    elapsed = time.perf_counter() - started
    if best_x is None:
        logger.debug(f"规划 {program.name or '<unnamed>'} 不可行, 节点数 {nodes}")
        return Solution(status=STATUS_INFEASIBLE, nodes=nodes, wall_time=elapsed)

    assignment = compiled.to_assignment(best_x)
    objective = program.objective_value(assignment)
    logger.debug(f"规划 {program.name or '<unnamed>'} 最优值 {objective:.6f}, "
                 f"节点数 {nodes}, 耗时 {elapsed:.3f}s")
    return Solution(status=STATUS_OPTIMAL, objective=objective, assignment=assignment,
                    nodes=nodes, wall_time=elapsed)
