#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
0-1 线性规划模块 - 规划模型、分支定界求解器、穷举基准与LP导出
"""

from tuple_qa.ilp.models import (
    Variable,
    LinearConstraint,
    Solution,
    BinaryProgram,
    LE,
    EQ,
    GE,
    STATUS_OPTIMAL,
    STATUS_INFEASIBLE,
    FEASIBILITY_TOL,
    INTEGRALITY_TOL,
)
from tuple_qa.ilp.solver import solve, lp_bound, BOUND_LP, BOUND_GREEDY, BOUND_MODES
from tuple_qa.ilp.oracle import brute_force, MAX_FREE_VARIABLES
from tuple_qa.ilp.lp_format import to_lp_format, dump_lp

__all__ = [
    'Variable',
    'LinearConstraint',
    'Solution',
    'BinaryProgram',
    'LE',
    'EQ',
    'GE',
    'STATUS_OPTIMAL',
    'STATUS_INFEASIBLE',
    'FEASIBILITY_TOL',
    'INTEGRALITY_TOL',
    'solve',
    'lp_bound',
    'BOUND_LP',
    'BOUND_GREEDY',
    'BOUND_MODES',
    'brute_force',
    'MAX_FREE_VARIABLES',
    'to_lp_format',
    'dump_lp',
]
