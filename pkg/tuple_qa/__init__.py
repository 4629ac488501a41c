"""
Tuple-QA - 基于开放信息抽取元组的多选题推理问答工具

从元组知识库中选择与问题相关的元组，构建支持图整数线性规划，
为每个答案选项求解最优支持图并以目标值作为得分。
"""

__version__ = '1.0.0'
