#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
异常模块 - 定义项目中使用的所有异常类型和异常处理工具
"""

import logging
import traceback
from typing import Dict, Any, Optional


# 基础异常类
class TupleQAError(Exception):
    """Tuple-QA 基础异常类"""

    def __init__(self, message: str = "", code: str = "", details: Any = None):
        """
        初始化异常

        Args:
            message: 异常消息
            code: 错误代码
            details: 详细信息
        """
        self.message = message
        self.code = code
        self.details = details
        super().__init__(message)

    def to_dict(self) -> Dict[str, Any]:
        """
        将异常转换为字典

        Returns:
            Dict[str, Any]: 异常字典
        """
        result = {
            'error': self.__class__.__name__,
            'message': self.message
        }

        if self.code:
            result['code'] = self.code

        if self.details:
            result['details'] = self.details

        return result


# 配置相关异常
class ConfigError(TupleQAError):
    """配置错误"""
    pass


class ConfigValidationError(ConfigError):
    """配置验证错误"""
    pass


class ConfigFileError(ConfigError):
    """配置文件错误"""
    pass


# 输入数据相关异常
class DataError(TupleQAError):
    """输入数据错误（元组文件、句子文件、表格文件、问题文件）"""
    pass


class TupleFormatError(DataError):
    """元组格式错误"""
    pass


class EmptyKBError(DataError):
    """知识库中没有任何有效元组"""

    def __init__(self, message: str = "知识库为空 (empty KB)", details: Any = None):
        super().__init__(message, code='EMPTY_KB', details=details)


class TableFormatError(DataError):
    """表格格式错误"""
    pass


class QuestionFormatError(DataError):
    """问题格式错误"""
    pass


# 文本处理相关异常
class TextError(TupleQAError):
    """文本处理错误"""
    pass


class EmptyQuestionError(TextError):
    """问题不包含任何内容词"""

    def __init__(self, message: str = "问题不包含任何内容词 (empty question)", details: Any = None):
        super().__init__(message, code='EMPTY_QUESTION', details=details)


# 支持图模型相关异常
class ModelError(TupleQAError):
    """支持图模型错误"""
    pass


class GraphBuildError(ModelError):
    """构建模型失败"""
    pass


class EmptyHeadError(ModelError):
    """边的目标端词集为空"""

    def __init__(self, message: str = "边的目标端词集为空 (empty head)", details: Any = None):
        super().__init__(message, code='EMPTY_HEAD', details=details)


class InvalidAssignmentError(ModelError):
    """赋值不完整或不可行"""

    def __init__(self, message: str, details: Any = None):
        super().__init__(message, code='INVALID_ASSIGNMENT', details=details)


# 求解器相关异常
class SolverError(TupleQAError):
    """求解器错误"""
    pass


class ProgramValidationError(SolverError):
    """0-1规划定义无效"""

    def __init__(self, message: str, details: Any = None):
        super().__init__(message, code='INVALID_PROGRAM', details=details)


class OracleLimitError(SolverError):
    """穷举求解的变量数超过上限"""

    def __init__(self, message: str = "自由变量过多，超出穷举上限 (oracle limit)", details: Any = None):
        super().__init__(message, code='ORACLE_LIMIT', details=details)


# 评测相关异常
class EvaluationError(TupleQAError):
    """评测错误"""
    pass


class MissingAnswerKeyError(EvaluationError):
    """问题缺少标准答案"""

    def __init__(self, question_ids, message: Optional[str] = None):
        ids = list(question_ids)
        super().__init__(
            message or f"以下问题缺少标准答案: {', '.join(ids)}",
            code='MISSING_ANSWER_KEY',
            details={'question_ids': ids}
        )


class NoDisagreementError(EvaluationError):
    """两个求解器没有任何分歧，无法做显著性检验"""

    def __init__(self, message: str = "两个求解器没有分歧 (no disagreements)"):
        super().__init__(message, code='NO_DISAGREEMENTS')


class ReportMismatchError(EvaluationError):
    """两份评测报告的问题集合不一致"""
    pass


# 异常处理工具
def handle_exception(exc: Exception, logger: logging.Logger) -> Dict[str, Any]:
    """
    统一处理异常，记录日志并返回错误信息

    Args:
        exc: 异常对象
        logger: 日志记录器

    Returns:
        Dict[str, Any]: 包含错误信息的字典
    """
    exc_type = type(exc).__name__
    exc_msg = str(exc)

    stack_trace = ''.join(traceback.format_exception(type(exc), exc, exc.__traceback__))

    # 自定义异常记录错误码和详情
    if isinstance(exc, TupleQAError):
        result = exc.to_dict()
        log_msg = f"{exc_type}[{exc.code or 'N/A'}]: {exc_msg}"
        logger.error(log_msg)
        logger.debug(f"异常详情: {stack_trace}")
    else:
        result = {
            'error': exc_type,
            'message': exc_msg
        }
        # 未知异常，记录完整堆栈
        logger.exception(f"{exc_type}: {exc_msg}")

    if logger.isEnabledFor(logging.DEBUG):
        result['traceback'] = stack_trace.split('\n')

    return result

