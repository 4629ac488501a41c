#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
问题文件加载。

每行一个JSON对象：
    {"id": "q1", "question": "...", "choices": ["...", "..."], "answerKey": "B"}

choices 的元素也可以是 {"label": "A", "text": "..."}；answerKey 可以是字母（A起）、
从1开始的数字，或与选项label相同的字符串。
"""

import json
from typing import Any, List, Optional, Sequence

from tuple_qa.graph.models import CHOICE_LABELS, Question
from tuple_qa.text import TextAnalyzer, get_default_analyzer
from tuple_qa.utils.exceptions import DataError, QuestionFormatError, TextError
from tuple_qa.utils.logger import get_logger

logger = get_logger(__name__)


def parse_answer_key(raw: Any, labels: Sequence[str]) -> Optional[int]:
    """
    将答案标记解析为选项下标

    Args:
        raw: answerKey 原始值
        labels: 各选项的label

    Returns:
        Optional[int]: 下标，raw为空时为None

    Raises:
        QuestionFormatError: 无法解析或越界
    """
    if raw is None or (isinstance(raw, str) and not raw.strip()):
        return None
    key = str(raw).strip()
    if key in labels:
        return list(labels).index(key)
    if key.isdigit():
        index = int(key) - 1
    elif len(key) == 1 and key.upper() in CHOICE_LABELS:
        index = CHOICE_LABELS.index(key.upper())
    else:
        raise QuestionFormatError(f"无法解析的答案标记: {raw}")
    if not 0 <= index < len(labels):
        raise QuestionFormatError(f"答案标记越界: {raw}")
    return index


def parse_question(record: Any, analyzer: Optional[TextAnalyzer] = None, default_id: str = "") -> Question:
    """
    从JSON对象构建问题

    Raises:
        QuestionFormatError: 字段缺失或格式错误
    """
    if not isinstance(record, dict):
        raise QuestionFormatError("问题记录必须是JSON对象")
    question_id = str(record.get('id') or default_id)
    text = record.get('question')
    raw_choices = record.get('choices')
    if not isinstance(text, str) or not isinstance(raw_choices, list):
        raise QuestionFormatError(f"问题 {question_id} 缺少question或choices字段", details={'id': question_id})

    texts: List[str] = []
    labels: List[str] = []
    for i, choice in enumerate(raw_choices):
        if isinstance(choice, dict):
            texts.append(str(choice.get('text', '')))
            labels.append(str(choice.get('label') or CHOICE_LABELS[i % len(CHOICE_LABELS)]))
        else:
            texts.append(str(choice))
            labels.append(CHOICE_LABELS[i % len(CHOICE_LABELS)])

    answer_key = parse_answer_key(record.get('answerKey'), labels)
    try:
        return Question.create(question_id, text, texts, answer_key, analyzer=analyzer)
    except TextError as e:
        raise QuestionFormatError(f"问题 {question_id}: {e.message}", details={'id': question_id})


def load_questions(path: str, analyzer: Optional[TextAnalyzer] = None) -> List[Question]:
    """
    加载问题文件（JSON行）

    Args:
        path: 文件路径
        analyzer: 文本分析器

    Returns:
        List[Question]: 问题列表

    Raises:
        DataError: 文件无法读取、JSON错误或问题格式错误（附行号）
    """
    analyzer = analyzer or get_default_analyzer()
    try:
        with open(path, 'r', encoding='utf-8') as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise DataError(f"读取问题文件失败: {path}: {str(e)}")

    questions: List[Question] = []
    seen = set()
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except ValueError as e:
            raise QuestionFormatError(f"{path}:{line_no} JSON格式错误: {str(e)}")
        try:
            question = parse_question(record, analyzer, default_id=f"line{line_no}")
        except QuestionFormatError as e:
            raise QuestionFormatError(f"{path}:{line_no} {e.message}", details=e.details)
        if question.id in seen:
            raise QuestionFormatError(f"{path}:{line_no} 问题ID重复: {question.id}")
        seen.add(question.id)
        questions.append(question)

    logger.info(f"问题文件加载完成: {path}, 共 {len(questions)} 道题")
    return questions
