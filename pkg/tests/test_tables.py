#!/usr/bin/env python
# -*- coding: utf-8 -*-

import pytest

from tuple_qa.graph.models import Question
from tuple_qa.kb import CuratedTable, RelationPair, load_tables, rank_tables, tables_to_tuples

from tests.conftest import fixture_path


@pytest.fixture
def hawk_question(analyzer):
    return Question.create('hawk', "Which adaptation helps a hawk hunt from the sky?",
                           ["wings", "fins", "gills", "roots"], analyzer=analyzer)


def test_hawk_row_becomes_tuple(analyzer, hawk_question):
    tables = load_tables(fixture_path('tables.json'))
    selected = tables_to_tuples(tables, hawk_question, analyzer=analyzer)
    by_id = {st.tuple.id: st.tuple for st in selected}

    hawk = by_id['adaptations:0:0']
    assert hawk.subject == 'hawk'
    assert hawk.predicate == 'has adaptation'
    assert hawk.objects == ['wings', 'flying', 'uses wings to fly']
    assert hawk.from_table
    assert hawk.source == 'adaptations'
    assert selected[0].tuple.id == 'adaptations:0:0'


def test_empty_cells_are_not_context(analyzer, hawk_question):
    tables = load_tables(fixture_path('tables.json'))
    by_id = {st.tuple.id: st.tuple for st in tables_to_tuples(tables, hawk_question, analyzer=analyzer)}
    assert by_id['adaptations:3:0'].objects == ['spines', 'protection']


def test_table_without_relations_contributes_nothing(analyzer, hawk_question):
    tables = load_tables(fixture_path('tables.json'))
    ranked = rank_tables(tables, hawk_question, analyzer=analyzer)
    assert 'notes' not in [t.table_id for t in ranked]
    assert all(not st.tuple.id.startswith('notes:')
               for st in tables_to_tuples(tables, hawk_question, analyzer=analyzer))


def test_empty_table_list(hawk_question):
    assert tables_to_tuples([], hawk_question) == []


def test_at_most_seven_tables(analyzer, hawk_question):
    tables = [
        CuratedTable(f"t{i}", ["animal", "adaptation"], [["hawk", f"feature{i}"]],
                     [RelationPair(0, 1, "has")])
        for i in range(10)
    ]
    selected = tables_to_tuples(tables, hawk_question, analyzer=analyzer)
    sources = {st.tuple.source for st in selected}
    assert len(sources) == 7
    assert len(rank_tables(tables, hawk_question, analyzer=analyzer)) == 7
    assert len(rank_tables(tables, hawk_question, max_tables=3, analyzer=analyzer)) == 3


def test_row_and_tuple_limits(analyzer, hawk_question):
    rows = [[f"animal{i}", "wings" if i % 2 else "scales"] for i in range(30)]
    table = CuratedTable("big", ["animal", "adaptation"], rows, [RelationPair(0, 1, "has")])
    assert len(tables_to_tuples([table], hawk_question, analyzer=analyzer)) == 20
    limited = tables_to_tuples([table], hawk_question, max_rows=25, k=5, analyzer=analyzer)
    assert len(limited) == 5
    scores = [st.score for st in limited]
    assert scores == sorted(scores, reverse=True)
    assert all('wings' in st.tuple.objects for st in limited)
