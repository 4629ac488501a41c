#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
穷举求解器，用作测试基准。
"""

import time

import numpy as np

from tuple_qa.ilp.models import BinaryProgram, Solution, STATUS_OPTIMAL, STATUS_INFEASIBLE, FEASIBILITY_TOL
from tuple_qa.ilp.solver import CompiledProgram
from tuple_qa.utils.exceptions import OracleLimitError

MAX_FREE_VARIABLES = 25
CHUNK_BITS = 16


def brute_force(program: BinaryProgram) -> Solution:
    """
    枚举所有自由变量的取值组合，返回最优可行解。

    目标值相同的解取枚举序号最小者（第一个自由变量为最低位）。

    Args:
        program: 规划

    Returns:
        Solution: 与 solve 相同的约定

    Raises:
        OracleLimitError: 自由变量超过上限
    """
    started = time.perf_counter()
    compiled = CompiledProgram(program)
    lo, _ = compiled.initial_box()
    free = np.array([j for j, v in enumerate(program.variables) if v.id not in program.forced], dtype=int)
    if free.size > MAX_FREE_VARIABLES:
        raise OracleLimitError(details={'free_variables': int(free.size), 'limit': MAX_FREE_VARIABLES})

    dense = compiled.A.toarray()
    fixed_activity = dense @ lo
    fixed_value = float(compiled.c @ lo)
    A_free = dense[:, free]
    c_free = compiled.c[free]

    total = 1 << int(free.size)
    shifts = np.arange(free.size, dtype=np.int64)
    best_value = -np.inf
    best_bits = None
    for start in range(0, total, 1 << CHUNK_BITS):
        codes = np.arange(start, min(total, start + (1 << CHUNK_BITS)), dtype=np.int64)
        bits = ((codes[:, None] >> shifts) & 1).astype(float)
        if compiled.m:
            activity = bits @ A_free.T + fixed_activity
            feasible = np.all(activity <= compiled.b + FEASIBILITY_TOL, axis=1)
        else:
            feasible = np.ones(codes.size, dtype=bool)
        if not np.any(feasible):
            continue
        values = np.where(feasible, bits @ c_free + fixed_value, -np.inf)
        k = int(np.argmax(values))
        if values[k] > best_value:
            best_value = float(values[k])
            best_bits = bits[k]

    elapsed = time.perf_counter() - started
    if best_bits is None:
        return Solution(status=STATUS_INFEASIBLE, nodes=total, wall_time=elapsed)

    x = lo.copy()
    x[free] = best_bits
    assignment = compiled.to_assignment(x)
    return Solution(status=STATUS_OPTIMAL, objective=program.objective_value(assignment),
                    assignment=assignment, nodes=total, wall_time=elapsed)
