#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
测试公共夹具
"""

import os

import pytest

from tuple_qa.config import Config
from tuple_qa.graph.models import Question
from tuple_qa.kb.loader import load_tuple_kb
from tuple_qa.text import get_default_analyzer

FIXTURES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'fixtures')

MOON_QUESTION = ("Which object in our solar system reflects light and is a satellite "
                 "that orbits around one planet?")
MOON_CHOICES = ["Earth", "Mercury", "the Sun", "the Moon"]

NITROGEN_QUESTION = "Which gas makes up most of the air and is needed by plants to grow?"
NITROGEN_CHOICES = ["oxygen", "nitrogen", "carbon dioxide", "helium"]


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES_DIR, name)


@pytest.fixture
def analyzer():
    return get_default_analyzer()


@pytest.fixture
def config():
    return Config.from_dict({})


@pytest.fixture
def moon_kb(analyzer):
    return load_tuple_kb(fixture_path('moon_kb.tsv'), analyzer)


@pytest.fixture
def moon_question(analyzer):
    return Question.create('moon', MOON_QUESTION, MOON_CHOICES, answer_key=3, analyzer=analyzer)


@pytest.fixture
def nitrogen_kb(analyzer):
    return load_tuple_kb(fixture_path('nitrogen_kb.tsv'), analyzer)


@pytest.fixture
def nitrogen_question(analyzer):
    return Question.create('nitrogen', NITROGEN_QUESTION, NITROGEN_CHOICES, answer_key=1, analyzer=analyzer)
