#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
装饰器模块，提供计时日志与参数校验装饰器。
"""

import time
import functools
import inspect
import logging
from typing import Callable, Any


def log_function(level: str = 'DEBUG', log_args: bool = False, log_result: bool = False,
                 log_time: bool = True, time_format: str = '.3f'):
    """
    日志记录装饰器，整合了执行时间记录和参数记录功能。

    Args:
        level: 日志级别
        log_args: 是否记录函数参数
        log_result: 是否记录函数返回值
        log_time: 是否记录执行时间
        time_format: 时间格式化字符串

    Returns:
        Callable: 装饰器函数
    """
    def decorator(func: Callable) -> Callable:
        logger = logging.getLogger(func.__module__)

        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            log = getattr(logger, level.lower())
            if log_args:
                args_str = ", ".join([repr(arg) for arg in args])
                kwargs_str = ", ".join([f"{k}={v!r}" for k, v in kwargs.items()])
                params = f"{args_str}{', ' if args_str and kwargs_str else ''}{kwargs_str}"
                log(f"调用函数 {func.__name__}({params})")
            else:
                log(f"调用函数 {func.__name__}")

            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                execution_time = time.perf_counter() - start_time
                logger.error(f"函数 {func.__name__} 执行异常: {str(e)}, 执行时间: {execution_time:{time_format}}秒")
                raise

            if log_result:
                log(f"函数 {func.__name__} 返回值: {result!r}")
            if log_time:
                execution_time = time.perf_counter() - start_time
                log(f"函数 {func.__name__} 执行时间: {execution_time:{time_format}}秒")
            return result

        return wrapper

    return decorator


def validate_params(**param_validators):
    """
    参数验证装饰器，用于验证函数参数。

    使用示例:
    ```python
    @validate_params(k=lambda v: v > 0)
    def select(question, kb, k=50):
        ...
    ```

    Args:
        **param_validators: 参数名和验证函数的映射

    Returns:
        Callable: 装饰器函数
    """
    def decorator(func: Callable) -> Callable:
        sig = inspect.signature(func)

        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            bound_args = sig.bind(*args, **kwargs)
            bound_args.apply_defaults()

            for param_name, validator in param_validators.items():
                if param_name in bound_args.arguments:
                    value = bound_args.arguments[param_name]
                    if not validator(value):
                        raise ValueError(f"参数 '{param_name}' 验证失败: {value}")

            return func(*args, **kwargs)

        return wrapper

    return decorator
