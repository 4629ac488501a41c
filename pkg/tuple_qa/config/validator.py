#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
配置验证器，负责验证配置文件的有效性。
"""

from numbers import Real
from typing import Dict, Any

from tuple_qa.utils.exceptions import ConfigValidationError
from tuple_qa.utils.logger import get_logger

logger = get_logger(__name__)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value: Any) -> bool:
    return isinstance(value, Real) and not isinstance(value, bool)


class ConfigValidator:
    """
    配置验证器类。

    确保各配置节的字段类型正确、枚举值合法、数值在允许范围内。
    所有配置节都是可选的，验证在与默认配置合并之后进行。
    """

    CHUNKING_MODES = {'span', 'unigram'}
    NORMALIZATION_MODES = {'sum', 'product'}
    IDF_MODES = {'union', 'min'}
    BOUND_MODES = {'lp', 'greedy'}
    TIE_CREDIT_MODES = {'fractional', 'strict'}
    LOG_LEVELS = {'DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'}

    def validate(self, config: Dict[str, Any]) -> None:
        """
        验证配置的有效性。

        Args:
            config: 配置数据

        Raises:
            ConfigValidationError: 配置无效时抛出异常
        """
        for section in ('text', 'selection', 'graph', 'solver', 'evaluation', 'log'):
            if not isinstance(config.get(section), dict):
                raise ConfigValidationError(f"{section}配置应为字典类型")

        self._validate_text(config['text'])
        self._validate_selection(config['selection'])
        self._validate_graph(config['graph'])
        self._validate_solver(config['solver'])
        self._validate_evaluation(config['evaluation'])
        self._validate_log(config['log'])

        logger.debug("配置验证成功")

    def _validate_text(self, text_config: Dict[str, Any]) -> None:
        chunking = text_config.get('chunking')
        if chunking not in self.CHUNKING_MODES:
            raise ConfigValidationError(
                f"text.chunking 无效: {chunking}，有效值为: {', '.join(sorted(self.CHUNKING_MODES))}"
            )
        for key in ('stopwords_file', 'stem_exceptions_file', 'predicate_cues_file'):
            value = text_config.get(key)
            if value is not None and not isinstance(value, str):
                raise ConfigValidationError(f"text.{key} 应为字符串路径")

    def _validate_selection(self, selection: Dict[str, Any]) -> None:
        for key in ('pool', 'k', 'on_the_fly_k', 'max_sentence_chars', 'max_tables', 'max_rows', 'table_k'):
            value = selection.get(key)
            if not _is_int(value) or value <= 0:
                raise ConfigValidationError(f"selection.{key} 应为正整数: {value}")

        normalization = selection.get('normalization')
        if normalization not in self.NORMALIZATION_MODES:
            raise ConfigValidationError(
                f"selection.normalization 无效: {normalization}，有效值为: "
                f"{', '.join(sorted(self.NORMALIZATION_MODES))}"
            )

    def _validate_graph(self, graph: Dict[str, Any]) -> None:
        w = graph.get('w')
        if not isinstance(w, (list, tuple)) or len(w) != 5:
            raise ConfigValidationError(f"graph.w 应为5个正整数的列表: {w}")
        for i, value in enumerate(w, start=1):
            if not _is_int(value) or value <= 0:
                raise ConfigValidationError(f"graph.w 第{i}项应为正整数: {value}")

        for key in ('edge_threshold_qf', 'edge_threshold_fc'):
            value = graph.get(key)
            if not _is_number(value) or not 0.0 <= value <= 1.0:
                raise ConfigValidationError(f"graph.{key} 应在[0, 1]范围内: {value}")

        for key in ('qterm_base', 'edge_scale'):
            value = graph.get(key)
            if not _is_number(value) or value <= 0:
                raise ConfigValidationError(f"graph.{key} 应为正数: {value}")

        boost = graph.get('science_boost')
        if boost is not None and (not _is_number(boost) or boost <= 0):
            raise ConfigValidationError(f"graph.science_boost 应为正数: {boost}")

        lexicon = graph.get('science_lexicon')
        if lexicon is not None and not isinstance(lexicon, str):
            raise ConfigValidationError("graph.science_lexicon 应为字符串路径")

        idf_mode = graph.get('idf_mode')
        if idf_mode not in self.IDF_MODES:
            raise ConfigValidationError(
                f"graph.idf_mode 无效: {idf_mode}，有效值为: {', '.join(sorted(self.IDF_MODES))}"
            )

        if graph.get('which_term_boost'):
            raise ConfigValidationError("graph.which_term_boost 尚未实现，只能为false")

    def _validate_solver(self, solver: Dict[str, Any]) -> None:
        bound = solver.get('bound')
        if bound not in self.BOUND_MODES:
            raise ConfigValidationError(
                f"solver.bound 无效: {bound}，有效值为: {', '.join(sorted(self.BOUND_MODES))}"
            )
        dump_dir = solver.get('dump_lp_dir')
        if dump_dir is not None and not isinstance(dump_dir, str):
            raise ConfigValidationError("solver.dump_lp_dir 应为字符串路径")

    def _validate_evaluation(self, evaluation: Dict[str, Any]) -> None:
        tie_credit = evaluation.get('tie_credit')
        if tie_credit not in self.TIE_CREDIT_MODES:
            raise ConfigValidationError(
                f"evaluation.tie_credit 无效: {tie_credit}，有效值为: "
                f"{', '.join(sorted(self.TIE_CREDIT_MODES))}"
            )
        for key in ('ir_top_hits', 'workers'):
            value = evaluation.get(key)
            if not _is_int(value) or value <= 0:
                raise ConfigValidationError(f"evaluation.{key} 应为正整数: {value}")
        level = evaluation.get('significance_level')
        if not _is_number(level) or not 0.0 < level < 1.0:
            raise ConfigValidationError(f"evaluation.significance_level 应在(0, 1)范围内: {level}")

    def _validate_log(self, log_config: Dict[str, Any]) -> None:
        level = log_config.get('level', 'INFO')
        if level and str(level).upper() not in self.LOG_LEVELS:
            raise ConfigValidationError(f"日志级别无效: {level}，有效值为: {', '.join(sorted(self.LOG_LEVELS))}")

        file_path = log_config.get('file')
        if file_path and not isinstance(file_path, str):
            raise ConfigValidationError("日志文件路径应为字符串类型")

        max_size = log_config.get('max_size')
        if max_size is not None and (not _is_int(max_size) or max_size <= 0):
            raise ConfigValidationError("max_size选项应为正整数")

        backup_count = log_config.get('backup_count')
        if backup_count is not None and (not _is_int(backup_count) or backup_count < 0):
            raise ConfigValidationError("backup_count选项应为非负整数")
