"""
工具模块 - 提供日志、异常处理、装饰器等通用功能
"""
