#!/usr/bin/env python
# -*- coding: utf-8 -*-

import pytest

from tuple_qa.config import Config, DEFAULT_CONFIG, load_config
from tuple_qa.graph.models import GraphWeights
from tuple_qa.utils.exceptions import ConfigFileError, ConfigValidationError

from tests.conftest import fixture_path


def test_defaults_without_file():
    config = load_config()
    assert config.get('graph.w') == [2, 4, 4, 4, 2]
    assert config['selection.k'] == 50
    assert config.get('selection.missing', 'x') == 'x'
    assert 'solver.bound' in config
    assert config.to_dict()['evaluation']['tie_credit'] == DEFAULT_CONFIG['evaluation']['tie_credit']


def test_file_overrides_and_env_substitution(tmp_path, monkeypatch):
    monkeypatch.setenv('TUPLE_QA_TEST_LEXICON', fixture_path('science_lexicon.txt'))
    path = tmp_path / 'config.yaml'
    path.write_text(
        "selection:\n"
        "  k: 10\n"
        "graph:\n"
        "  w: [3, 4, 4, 5, 1]\n"
        "  science_lexicon: ${TUPLE_QA_TEST_LEXICON}\n"
        "solver:\n"
        "  bound: greedy\n",
        encoding='utf-8',
    )
    config = Config(str(path))
    assert config['selection.k'] == 10
    assert config['selection.pool'] == 1000
    assert config['solver.bound'] == 'greedy'

    weights = GraphWeights.from_config(config)
    assert weights.w == (3, 4, 4, 5, 1)
    assert 'satellit' in weights.science_terms or 'satellite' in weights.science_terms
    assert weights.science_boost == 1.5


def test_default_weights_have_no_science_boost(config):
    weights = GraphWeights.from_config(config)
    assert weights.science_terms == frozenset()
    assert weights.science_boost == 1.0


def test_missing_file():
    with pytest.raises(ConfigFileError):
        Config('/nonexistent/tuple-qa.yaml')


def test_bad_yaml(tmp_path):
    path = tmp_path / 'bad.yaml'
    path.write_text("graph: [unclosed\n", encoding='utf-8')
    with pytest.raises(ConfigFileError):
        Config(str(path))


@pytest.mark.parametrize('overrides', [
    {'graph': {'w': [2, 4, 4]}},
    {'graph': {'w': [2, 4, 0, 4, 2]}},
    {'graph': {'edge_threshold_qf': 1.5}},
    {'graph': {'idf_mode': 'max'}},
    {'graph': {'which_term_boost': True}},
    {'selection': {'k': 0}},
    {'selection': {'normalization': 'cosine'}},
    {'solver': {'bound': 'simplex'}},
    {'evaluation': {'tie_credit': 'random'}},
    {'evaluation': {'significance_level': 1.0}},
    {'text': {'chunking': 'bigram'}},
    {'log': {'level': 'LOUD'}},
])
def test_invalid_values(overrides):
    with pytest.raises(ConfigValidationError):
        Config.from_dict(overrides)


def test_save_round_trip(tmp_path):
    config = Config.from_dict({'selection': {'k': 7}})
    path = tmp_path / 'saved' / 'config.yaml'
    config.save(str(path))
    assert Config(str(path))['selection.k'] == 7
