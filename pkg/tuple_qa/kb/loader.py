#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
知识库加载器，负责从文件读取元组、句子、整理表格，以及索引的持久化。

文件格式：
- 元组文件：UTF-8 TSV，每行 `id<TAB>subject<TAB>predicate<TAB>object1<TAB>object2...`，#开头为注释
- 句子文件：JSON行 `{"sentence": str, "tuples": [[subj, pred, obj...], ...]}`
- 表格文件：JSON，单个表格对象、表格列表或 `{"tables": [...]}`
"""

import json
import os
from typing import Any, Dict, List, Optional

from tuple_qa.kb.models import KBTuple, TupleKB, CuratedTable, RelationPair, SentenceTuples
from tuple_qa.text import TextAnalyzer, get_default_analyzer
from tuple_qa.utils.decorators import log_function
from tuple_qa.utils.exceptions import DataError, EmptyKBError, TupleFormatError, TableFormatError
from tuple_qa.utils.logger import get_logger

logger = get_logger(__name__)

KB_TUPLES_FILE = 'tuples.tsv'
KB_INDEX_FILE = 'index.json'
KB_FORMAT_VERSION = 1


def _read_lines(path: str) -> List[str]:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return f.read().splitlines()
    except OSError as e:
        raise DataError(f"读取文件失败: {path}: {str(e)}")
    except UnicodeDecodeError as e:
        raise DataError(f"文件不是有效的UTF-8编码: {path}: {str(e)}")


@log_function(level='INFO')
def load_tuple_kb(path: str, analyzer: Optional[TextAnalyzer] = None) -> TupleKB:
    """
    从TSV文件加载元组知识库并建立倒排索引。

    格式错误的行（列数不足、字段为空、ID重复）会被跳过并记录警告，
    跳过的行数记录在 `TupleKB.skipped_lines`。

    Args:
        path: 元组TSV文件路径
        analyzer: 文本分析器

    Returns:
        TupleKB: 知识库

    Raises:
        DataError: 文件无法读取
        EmptyKBError: 没有任何有效元组
    """
    analyzer = analyzer or get_default_analyzer()
    tuples: List[KBTuple] = []
    seen_ids = set()
    skipped = 0

    for line_no, line in enumerate(_read_lines(path), start=1):
        if not line.strip() or line.lstrip().startswith('#'):
            continue

        columns = line.split('\t')
        if len(columns) < 3:
            logger.warning(f"{path}:{line_no} 列数不足（至少需要 id、subject、predicate），已跳过")
            skipped += 1
            continue

        tuple_id = columns[0].strip()
        if not tuple_id:
            logger.warning(f"{path}:{line_no} 缺少元组ID，已跳过")
            skipped += 1
            continue
        if tuple_id in seen_ids:
            logger.warning(f"{path}:{line_no} 元组ID重复: {tuple_id}，已跳过")
            skipped += 1
            continue

        try:
            t = KBTuple.create(tuple_id, columns[1], columns[2], columns[3:],
                               source=f"{os.path.basename(path)}:{line_no}", analyzer=analyzer)
        except TupleFormatError as e:
            logger.warning(f"{path}:{line_no} {e.message}，已跳过")
            skipped += 1
            continue

        seen_ids.add(tuple_id)
        tuples.append(t)

    if not tuples:
        raise EmptyKBError(details={'path': path, 'skipped_lines': skipped})

    kb = TupleKB(tuples, skipped_lines=skipped, source_path=path)
    if skipped:
        logger.warning(f"加载元组文件 {path} 时跳过了 {skipped} 行格式错误的数据")
    logger.info(f"知识库加载完成: {kb.size_N} 个元组, {len(kb.index)} 个词干")
    return kb


def save_kb(kb: TupleKB, out_dir: str) -> Dict[str, str]:
    """
    将知识库及其索引持久化到目录。

    Args:
        kb: 知识库
        out_dir: 输出目录

    Returns:
        Dict[str, str]: 写出的文件路径

    Raises:
        DataError: 写文件失败
    """
    try:
        os.makedirs(out_dir, exist_ok=True)
        tuples_path = os.path.join(out_dir, KB_TUPLES_FILE)
        index_path = os.path.join(out_dir, KB_INDEX_FILE)

        with open(tuples_path, 'w', encoding='utf-8') as f:
            for t in kb.tuples:
                f.write('\t'.join([t.id, t.subject, t.predicate] + t.objects) + '\n')

        manifest = {
            'format_version': KB_FORMAT_VERSION,
            'size_N': kb.size_N,
            'skipped_lines': kb.skipped_lines,
            'doc_freq': kb.doc_freq,
            'index': kb.index,
        }
        with open(index_path, 'w', encoding='utf-8') as f:
            json.dump(manifest, f, ensure_ascii=False, sort_keys=True, indent=1)
    except OSError as e:
        raise DataError(f"保存知识库失败: {out_dir}: {str(e)}")

    logger.info(f"知识库已保存到: {out_dir}")
    return {'tuples': tuples_path, 'index': index_path}


def load_kb(path: str, analyzer: Optional[TextAnalyzer] = None) -> TupleKB:
    """
    加载知识库：既可以是 build-kb 生成的目录，也可以直接是元组TSV文件。

    目录中的索引清单与重建结果不一致时（例如停用词表已更换）记录警告并以重建结果为准。

    Args:
        path: 目录或TSV文件
        analyzer: 文本分析器

    Returns:
        TupleKB: 知识库
    """
    if not os.path.isdir(path):
        return load_tuple_kb(path, analyzer)

    kb = load_tuple_kb(os.path.join(path, KB_TUPLES_FILE), analyzer)
    index_path = os.path.join(path, KB_INDEX_FILE)
    if not os.path.exists(index_path):
        logger.warning(f"知识库目录缺少索引清单: {index_path}，使用重建的索引")
        return kb

    try:
        with open(index_path, 'r', encoding='utf-8') as f:
            manifest = json.load(f)
    except (OSError, ValueError) as e:
        raise DataError(f"读取索引清单失败: {index_path}: {str(e)}")

    if manifest.get('format_version') != KB_FORMAT_VERSION:
        logger.warning(f"索引清单版本不匹配: {manifest.get('format_version')}")
    if manifest.get('doc_freq') != kb.doc_freq or manifest.get('size_N') != kb.size_N:
        logger.warning("索引清单与重建的索引不一致（分词配置可能已更改），使用重建的索引")
    return kb


def load_sentence_tuples(path: str) -> List[SentenceTuples]:
    """
    加载即时元组句子文件（JSON行）。

    Args:
        path: 文件路径

    Returns:
        List[SentenceTuples]: 句子及其元组

    Raises:
        DataError: 文件无法读取或JSON格式错误
    """
    entries: List[SentenceTuples] = []
    for line_no, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except ValueError as e:
            raise DataError(f"{path}:{line_no} JSON格式错误: {str(e)}")
        if not isinstance(record, dict) or not isinstance(record.get('sentence'), str):
            raise DataError(f"{path}:{line_no} 缺少sentence字段")

        tuples = []
        for raw in record.get('tuples') or []:
            if isinstance(raw, list) and all(isinstance(part, str) for part in raw):
                tuples.append(list(raw))
            else:
                logger.warning(f"{path}:{line_no} 忽略格式错误的元组: {raw}")
        entries.append(SentenceTuples(sentence=record['sentence'], tuples=tuples))

    logger.info(f"句子文件加载完成: {path}, 共 {len(entries)} 个句子")
    return entries


def _parse_relation_pair(raw: Any, table_id: str) -> RelationPair:
    if isinstance(raw, dict):
        try:
            return RelationPair(int(raw['subject']), int(raw['object']), str(raw['predicate']))
        except (KeyError, TypeError, ValueError):
            raise TableFormatError(f"表格 {table_id} 的关系定义格式错误: {raw}")
    if isinstance(raw, (list, tuple)) and len(raw) == 3:
        try:
            return RelationPair(int(raw[0]), int(raw[1]), str(raw[2]))
        except (TypeError, ValueError):
            raise TableFormatError(f"表格 {table_id} 的关系定义格式错误: {raw}")
    raise TableFormatError(f"表格 {table_id} 的关系定义格式错误: {raw}")


def parse_table(data: Dict[str, Any], default_id: str = "") -> CuratedTable:
    """
    从字典解析整理表格

    Args:
        data: 表格字典，包含 header、rows、relation_pairs
        default_id: 缺少ID时使用的表格ID

    Returns:
        CuratedTable: 表格

    Raises:
        TableFormatError: 结构无效
    """
    if not isinstance(data, dict):
        raise TableFormatError(f"表格定义应为对象: {default_id}")
    table_id = str(data.get('id') or data.get('table_id') or default_id)
    header = data.get('header')
    rows = data.get('rows')
    if not isinstance(header, list) or not isinstance(rows, list):
        raise TableFormatError(f"表格 {table_id} 缺少header或rows")

    table = CuratedTable(
        table_id=table_id,
        header=[str(h) for h in header],
        rows=[[str(cell) for cell in row] for row in rows if isinstance(row, list)],
        relation_pairs=[_parse_relation_pair(p, table_id) for p in data.get('relation_pairs') or []],
    )
    if len(table.rows) != len(rows):
        raise TableFormatError(f"表格 {table_id} 存在非列表的行")
    table.validate()
    return table


def load_tables(path: str) -> List[CuratedTable]:
    """
    加载整理表格文件

    Args:
        path: JSON文件路径

    Returns:
        List[CuratedTable]: 表格列表

    Raises:
        DataError: 文件无法读取或格式错误
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except OSError as e:
        raise DataError(f"读取表格文件失败: {path}: {str(e)}")
    except ValueError as e:
        raise DataError(f"表格文件JSON格式错误: {path}: {str(e)}")

    if isinstance(data, dict) and 'tables' in data:
        data = data['tables']
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise TableFormatError(f"表格文件格式无效: {path}")

    tables = [parse_table(item, default_id=f"table{i}") for i, item in enumerate(data)]
    logger.info(f"表格文件加载完成: {path}, 共 {len(tables)} 个表格")
    return tables
