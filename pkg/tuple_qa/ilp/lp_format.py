#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
将规划导出为 CPLEX LP 文本格式，便于用外部求解器交叉验证。
"""

import os
import re
from typing import Dict, List

from tuple_qa.ilp.models import BinaryProgram, GE, LE
from tuple_qa.utils.exceptions import DataError
from tuple_qa.utils.logger import get_logger

logger = get_logger(__name__)

_UNSAFE_CHARS = re.compile(r'[^A-Za-z0-9_.]')
_LINE_WIDTH = 200


def lp_names(program: BinaryProgram) -> Dict[str, str]:
    """变量ID → LP文件中的合法名称（x<序号>_<清洗后的ID>，保证唯一）"""
    return {v.id: f"x{j}_{_UNSAFE_CHARS.sub('_', v.id)}" for j, v in enumerate(program.variables)}


def _linear_expr(terms, names: Dict[str, str]) -> List[str]:
    parts = []
    for var_id, coef in terms:
        sign = '-' if coef < 0 else '+'
        parts.append(f"{sign} {abs(coef):.12g} {names[var_id]}")
    if parts and parts[0].startswith('+ '):
        parts[0] = parts[0][2:]
    return parts


def _wrap(prefix: str, parts: List[str]) -> List[str]:
    lines = []
    current = prefix
    for part in parts:
        if len(current) + len(part) + 1 > _LINE_WIDTH and current.strip():
            lines.append(current)
            current = "   "
        current += " " + part
    lines.append(current)
    return lines


def to_lp_format(program: BinaryProgram) -> str:
    """
    生成LP文本。强制赋值写为等式约束。

    Args:
        program: 规划

    Returns:
        str: LP格式文本
    """
    names = lp_names(program)
    lines = [f"\\ Problem: {program.name or 'tuple_qa'}", "Maximize"]

    objective = [(v.id, v.objective) for v in program.variables if v.objective != 0.0]
    if not objective and program.variables:
        objective = [(program.variables[0].id, 0.0)]
    lines.extend(_wrap(" obj:", _linear_expr(objective, names)))

    lines.append("Subject To")
    for i, constraint in enumerate(program.constraints):
        relation = {LE: '<=', GE: '>='}.get(constraint.relation, '=')
        parts = _linear_expr(constraint.terms, names) + [f"{relation} {constraint.bound:.12g}"]
        lines.extend(_wrap(f" c{i}:", parts))
    for i, (var_id, value) in enumerate(sorted(program.forced.items())):
        lines.append(f" fix{i}: {names[var_id]} = {value}")

    lines.append("Binary")
    binaries = [names[v.id] for v in program.variables]
    for start in range(0, len(binaries), 10):
        lines.append(" " + " ".join(binaries[start:start + 10]))
    lines.append("End")
    return "\n".join(lines) + "\n"


def dump_lp(program: BinaryProgram, out_dir: str, stem: str) -> str:
    """
    把规划写入 out_dir/<stem>.lp

    Returns:
        str: 文件路径

    Raises:
        DataError: 写文件失败
    """
    path = os.path.join(out_dir, _UNSAFE_CHARS.sub('_', stem) + '.lp')
    try:
        os.makedirs(out_dir, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(to_lp_format(program))
    except OSError as e:
        raise DataError(f"写入LP文件失败: {path}: {str(e)}")
    logger.debug(f"LP文件已写出: {path}")
    return path
