#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
配置模块，提供配置加载、验证和管理功能。
"""

from tuple_qa.config.loader import Config, load_config
from tuple_qa.config.validator import ConfigValidator
from tuple_qa.config.defaults import DEFAULT_CONFIG

__all__ = ['Config', 'load_config', 'ConfigValidator', 'DEFAULT_CONFIG']
