#!/usr/bin/env python
# -*- coding: utf-8 -*-

import logging
import os

import pytest

from tuple_qa.config import Config
from tuple_qa.kb import KBTuple, ScoredTuple, SentenceTuples, TupleKB
from tuple_qa.qa import (
    AnswerResult,
    QuestionAnswerer,
    RankedAnswer,
    answer_question,
    load_questions,
    merge_selected,
    parse_answer_key,
    parse_question,
    rank,
    score_choice,
)
from tuple_qa.utils.exceptions import DataError, GraphBuildError, QuestionFormatError
from tuple_qa.utils.logger import LogContext

from tests.conftest import fixture_path


def duplicated(kb, analyzer):
    copies = [KBTuple.create(f"dup_{t.id}", t.subject, t.predicate, t.objects, analyzer=analyzer)
              for t in kb.tuples]
    return TupleKB(list(kb.tuples) + copies)


class TestAnswer:

    def test_moon_ranking(self, moon_question, moon_kb):
        result = answer_question(moon_question, moon_kb)
        assert [a.choice_index for a in result.ranking] == [3, 2, 0, 1]
        assert result.predicted == 3
        assert not result.abstain
        assert result.score_of(3) == pytest.approx(8.3116, abs=1e-3)
        assert result.score_of(2) == pytest.approx(2.1097, abs=1e-3)
        assert result.score_of(0) == pytest.approx(2.0327, abs=1e-3)
        assert result.score_of(1) is None
        assert result.ranking[0].support.choice_index == 3
        assert sorted(t.id for t in result.ranking[0].support.tuples) == ['m2', 'm3', 'm4']
        assert result.num_tuples == 6

    def test_nitrogen_ranking(self, nitrogen_question, nitrogen_kb):
        result = answer_question(nitrogen_question, nitrogen_kb)
        assert result.predicted == 1
        assert result.score_of(1) == pytest.approx(9.6558, abs=1e-3)
        assert result.score_of(0) == pytest.approx(3.1362, abs=1e-3)
        assert result.score_of(2) is None and result.score_of(3) is None
        assert [a.choice_index for a in result.ranking[2:]] == [2, 3]

    def test_support_only_grows_with_more_tuples(self, moon_question, moon_kb):
        m5, m6 = moon_kb.get('m5'), moon_kb.get('m6')
        alone, _ = score_choice(moon_question, 0, [ScoredTuple(m6, 1.0)])
        more, _ = score_choice(moon_question, 0, [ScoredTuple(m6, 1.0), ScoredTuple(m5, 1.0)])
        assert alone == pytest.approx(1.7083, abs=1e-3)
        assert more >= alone - 1e-9

    def test_empty_kb_abstains(self, moon_question):
        result = answer_question(moon_question, TupleKB([]))
        assert result.abstain
        assert result.predicted is None
        assert result.chosen == [0, 1, 2, 3]
        assert all(a.score is None for a in result.ranking)
        assert result.stats == {}

    def test_duplicated_kb_keeps_argmax(self, moon_question, moon_kb, analyzer):
        result = answer_question(moon_question, duplicated(moon_kb, analyzer))
        assert result.predicted == 3

    @pytest.mark.parametrize('scale', [0.5, 2.0])
    def test_edge_scale_keeps_argmax(self, moon_question, moon_kb, scale):
        config = Config.from_dict({'graph': {'edge_scale': scale}})
        assert answer_question(moon_question, moon_kb, config=config).predicted == 3

    def test_greedy_bound_same_scores(self, moon_question, moon_kb):
        config = Config.from_dict({'solver': {'bound': 'greedy'}})
        lp = answer_question(moon_question, moon_kb)
        greedy = answer_question(moon_question, moon_kb, config=config)
        for index in range(4):
            if lp.score_of(index) is None:
                assert greedy.score_of(index) is None
            else:
                assert greedy.score_of(index) == pytest.approx(lp.score_of(index))

    def test_dump_lp_dir(self, moon_question, moon_kb, tmp_path):
        config = Config.from_dict({'solver': {'dump_lp_dir': str(tmp_path)}})
        QuestionAnswerer(config, moon_kb).answer(moon_question)
        assert os.path.exists(tmp_path / 'question_moon.lp')

    def test_sentences_and_tables_feed_selection(self, analyzer, config, moon_question):
        sentences = [SentenceTuples("The Moon reflects light from the Sun.", [["the Moon", "reflects", "light"]])]
        answerer = QuestionAnswerer(config, TupleKB([]), sentences, analyzer=analyzer)
        selected = answerer.select_tuples(moon_question)
        assert [st.tuple.id for st in selected] == ['s0:0']
        assert answerer.answer(moon_question).predicted == 3

    def test_answer_safe(self, moon_question, moon_kb, config):
        answerer = QuestionAnswerer(config, moon_kb)

        def broken(question):
            raise GraphBuildError("boom", code='BROKEN')

        answerer.select_tuples = broken
        result = answerer.answer_safe(moon_question)
        assert result.abstain
        assert result.error['code'] == 'BROKEN'
        assert 'traceback' not in result.error
        assert result.to_dict()['error']['message'] == 'boom'

    def test_question_id_scoped_to_answer(self, moon_question, moon_kb, config, caplog):
        answerer = QuestionAnswerer(config, moon_kb)
        trace_before = LogContext.get_context_value('trace_id')
        with caplog.at_level(logging.INFO, logger='tuple_qa.qa.pipeline'):
            answerer.answer(moon_question)
        assert any('"question_id": "moon"' in r.getMessage() for r in caplog.records)
        assert LogContext.get_context_value('question_id') is None
        assert LogContext.get_context_value('trace_id') != trace_before

    def test_answer_all_keeps_order(self, moon_question, nitrogen_question, moon_kb, config):
        answerer = QuestionAnswerer(config, moon_kb)
        questions = [nitrogen_question, moon_question, nitrogen_question]
        sequential = answerer.answer_all(questions)
        parallel = answerer.answer_all(questions, workers=3)
        assert [r.question_id for r in parallel] == ['nitrogen', 'moon', 'nitrogen']
        assert [r.to_dict() for r in parallel] == [r.to_dict() for r in sequential]


class TestRanking:

    def test_unsupported_sort_last(self):
        answers = [RankedAnswer(0, None), RankedAnswer(1, 0.5), RankedAnswer(2, -1.0), RankedAnswer(3, 0.5)]
        assert [a.choice_index for a in rank(answers)] == [1, 3, 2, 0]

    def test_ties(self):
        result = AnswerResult('t', rank([RankedAnswer(0, 1.0), RankedAnswer(1, 2.0), RankedAnswer(2, 2.0)]))
        assert result.predicted == 1
        assert result.chosen == [1, 2]
        with pytest.raises(KeyError):
            result.score_of(7)

    def test_near_ties_rank_by_index(self):
        # 2.1 + 0.2 与 2.3 在浮点下不相等
        answers = [RankedAnswer(0, 1.0), RankedAnswer(1, 2.3), RankedAnswer(2, 2.1 + 0.2),
                   RankedAnswer(3, None), RankedAnswer(4, 2.3 + 1e-12)]
        result = AnswerResult('t', rank(answers))
        assert [a.choice_index for a in result.ranking] == [1, 2, 4, 0, 3]
        assert result.predicted == 1
        assert result.chosen == [1, 2, 4]
        assert result.predicted == min(result.chosen)

    def test_distinct_scores_stay_ordered(self):
        answers = [RankedAnswer(0, 1.0), RankedAnswer(1, 1.0 + 1e-6), RankedAnswer(2, 1.0 - 1e-6)]
        assert [a.choice_index for a in rank(answers)] == [1, 0, 2]

    def test_to_dict(self):
        result = AnswerResult('t', [RankedAnswer(1, 2.0, label='B', text='heart'), RankedAnswer(0, None)],
                              answer_key=1)
        data = result.to_dict()
        assert data['predicted'] == 1
        assert data['answer_key'] == 1
        assert data['ranking'][0] == {'choice_index': 1, 'label': 'B', 'text': 'heart', 'score': 2.0}
        assert 'error' not in data


class TestMergeSelected:

    def test_dedup_and_rename(self, analyzer):
        a = KBTuple.create('s0:0', 'Moon', 'reflects', ['light'], analyzer=analyzer)
        same_fields = KBTuple.create('k9', 'moon', 'REFLECTS', ['Light'], analyzer=analyzer)
        clash = KBTuple.create('s0:0', 'sun', 'heats', ['earth'], analyzer=analyzer)
        clash_again = KBTuple.create('s0:0', 'rock', 'is', ['hard'], analyzer=analyzer)
        merged = merge_selected([ScoredTuple(a, 0.5)], [ScoredTuple(same_fields, 0.9), ScoredTuple(clash, 0.1)],
                                [ScoredTuple(clash_again, 0.2)])
        assert [st.tuple.id for st in merged] == ['s0:0', 's0:0#2', 's0:0#3']
        assert merged[1].tuple.subject == 'sun'
        assert merged[1].score == 0.1

    def test_empty(self):
        assert merge_selected([], []) == []


class TestQuestions:

    def test_load_fixture(self, analyzer):
        questions = load_questions(fixture_path('science_questions.jsonl'), analyzer)
        assert len(questions) == 23
        assert questions[0].id == 'q01'
        assert questions[0].answer_key == 3
        assert questions[1].answer_key == 1
        assert [c.text for c in questions[0].choices] == ["Earth", "Mercury", "the Sun", "the Moon"]

    @pytest.mark.parametrize('raw, expected', [
        ('B', 1),
        ('b', 1),
        ('2', 1),
        (2, 1),
        (None, None),
        ('', None),
    ])
    def test_parse_answer_key(self, raw, expected):
        assert parse_answer_key(raw, ['A', 'B', 'C', 'D']) == expected

    def test_answer_key_matches_label(self):
        assert parse_answer_key('2', ['1', '2', '3']) == 1

    @pytest.mark.parametrize('raw', ['Z', '9', 'foo'])
    def test_bad_answer_key(self, raw):
        with pytest.raises(QuestionFormatError):
            parse_answer_key(raw, ['A', 'B', 'C', 'D'])

    def test_parse_question_with_labelled_choices(self, analyzer):
        record = {'id': 'lab', 'question': 'Which organ pumps blood?',
                  'choices': [{'label': 'X', 'text': 'lungs'}, {'label': 'Y', 'text': 'heart'}],
                  'answerKey': 'Y'}
        question = parse_question(record, analyzer)
        assert question.answer_key == 1
        assert question.choices[1].text == 'heart'

    @pytest.mark.parametrize('record', [
        ['not', 'an', 'object'],
        {'id': 'a', 'choices': ['x', 'y']},
        {'id': 'a', 'question': 'Which rock glows?', 'choices': ['calcite']},
        {'id': 'a', 'question': 'Which of these is it?', 'choices': ['x', 'y']},
    ])
    def test_parse_question_errors(self, analyzer, record):
        with pytest.raises(QuestionFormatError):
            parse_question(record, analyzer)

    def test_errors_carry_line_numbers(self, tmp_path, analyzer):
        good = '{"id": "a", "question": "Which rock glows?", "choices": ["calcite", "granite"]}'
        path = tmp_path / 'dup.jsonl'
        path.write_text(good + "\n\n" + good + "\n", encoding='utf-8')
        with pytest.raises(QuestionFormatError, match=r':3 '):
            load_questions(str(path), analyzer)

        path.write_text(good + "\n{broken\n", encoding='utf-8')
        with pytest.raises(QuestionFormatError, match=r':2 '):
            load_questions(str(path), analyzer)

    def test_missing_file(self, analyzer):
        with pytest.raises(DataError):
            load_questions('/nonexistent/questions.jsonl', analyzer)
