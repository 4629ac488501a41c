#!/usr/bin/env python
# -*- coding: utf-8 -*-

import json
import math
from fractions import Fraction

import pytest

from tuple_qa.eval import (
    EvaluationReport,
    IRSolver,
    QuestionOutcome,
    SentenceIndex,
    binomial_exact_test,
    check_answer_keys,
    compare_reports,
    evaluate,
    ir_score,
    question_credit,
    score_results,
)
from tuple_qa.graph.models import Question
from tuple_qa.qa import AnswerResult, RankedAnswer, load_questions, rank
from tuple_qa.utils.exceptions import (
    DataError,
    MissingAnswerKeyError,
    NoDisagreementError,
    ReportMismatchError,
)

from tests.conftest import fixture_path

CHOICES = ["calcite", "granite", "basalt", "quartz"]


def keyed_question(question_id, answer_key, analyzer):
    return Question.create(question_id, "Which rock glows?", CHOICES, answer_key=answer_key, analyzer=analyzer)


def result_with_scores(question_id, scores):
    answers = [RankedAnswer(i, s) for i, s in enumerate(scores)]
    abstain = all(s is None for s in scores)
    return AnswerResult(question_id, rank(answers), abstain=abstain)


def report_from_credits(solver, credits):
    outcomes = [QuestionOutcome(qid, [0], 0, credit) for qid, credit in credits.items()]
    return EvaluationReport(solver, outcomes)


def exact_p_value(k, n):
    distance = abs(2 * k - n)
    total = sum(Fraction(math.comb(n, i), 2 ** n) for i in range(n + 1) if abs(2 * i - n) >= distance)
    return float(min(total, Fraction(1)))


class TestIRScore:

    @pytest.fixture
    def index(self, analyzer):
        return SentenceIndex(["The Moon reflects light", "Rocks are hard"], analyzer)

    @pytest.fixture
    def question(self, analyzer):
        return Question.create('ir', "Which object reflects light?", ["the Moon", "a rock"], analyzer=analyzer)

    def test_empty_corpus(self, question, analyzer):
        assert ir_score(question, 0, SentenceIndex([], analyzer)) == 0.0

    def test_hand_computed(self, question, index):
        assert ir_score(question, 0, index) == pytest.approx(3 * math.log(3) / 7)
        assert ir_score(question, 1, index) == pytest.approx(math.log(3) / 6)

    def test_sentence_must_contain_choice(self, analyzer, index):
        question = Question.create('ir2', "Which object reflects light?", ["a comet", "a rock"], analyzer=analyzer)
        assert ir_score(question, 0, index) == 0.0

    def test_matches_exhaustive_scan(self, analyzer):
        index = SentenceIndex.from_file(fixture_path('science_sentences.jsonl'), analyzer)
        assert len(index) == 24
        docs = [analyzer.token_set(s) for s in index.sentences]
        n = len(docs)
        for question in load_questions(fixture_path('science_questions.jsonl'), analyzer)[:10]:
            for choice in question.choices:
                query = question.q_set | choice.token_set
                best = 0.0
                for doc in docs:
                    if not doc & choice.token_set:
                        continue
                    total = sum(math.log(1 + n / sum(1 for d in docs if stem in d)) for stem in doc & query)
                    best = max(best, total / (len(doc) + len(query)))
                assert ir_score(question, choice.index, index) == pytest.approx(best)

    def test_plain_text_corpus(self, tmp_path, analyzer):
        path = tmp_path / 'corpus.txt'
        path.write_text("The Moon reflects light\n\nRocks are hard\n", encoding='utf-8')
        assert SentenceIndex.from_file(str(path), analyzer).sentences == ["The Moon reflects light", "Rocks are hard"]
        with pytest.raises(DataError):
            SentenceIndex.from_file(str(tmp_path / 'missing.txt'), analyzer)

    def test_solver(self, question, index):
        result = IRSolver(index).answer(question)
        assert result.solver == 'ir'
        assert result.predicted == 0
        assert [a.choice_index for a in result.ranking] == [0, 1]


class TestMetrics:

    @pytest.mark.parametrize('chosen, key, mode, expected', [
        ([1], 1, 'fractional', 1.0),
        ([0, 1, 2, 3], 2, 'fractional', 0.25),
        ([0, 1], 3, 'fractional', 0.0),
        ([1, 2], 1, 'fractional', 0.5),
        ([1, 2], 1, 'strict', 0.0),
        ([1], 1, 'strict', 1.0),
    ])
    def test_question_credit(self, chosen, key, mode, expected):
        assert question_credit(chosen, key, mode) == expected

    def test_all_correct(self, analyzer):
        questions = [keyed_question(f"q{i}", i % 4, analyzer) for i in range(4)]
        results = [result_with_scores(q.id, [1.0 if j == q.answer_key else 0.0 for j in range(4)])
                   for q in questions]
        assert score_results(questions, results).accuracy == 1.0

    def test_abstain_gets_chance_credit(self, analyzer):
        questions = [keyed_question('q', 2, analyzer)]
        report = score_results(questions, [result_with_scores('q', [None] * 4)])
        assert report.accuracy == 0.25
        assert report.abstained == 1

    def test_hand_computed_mean(self, analyzer):
        questions = [keyed_question(f"q{i}", 0, analyzer) for i in range(10)]
        scores = [[2.0, 1.0, None, 0.5]] * 6 + [
            [None] * 4,
            [3.0, 3.0, 1.0, None],
            [1.0, 2.0, None, None],
            [None, 0.1, None, None],
        ]
        results = [result_with_scores(q.id, s) for q, s in zip(questions, scores)]
        assert score_results(questions, results).accuracy == pytest.approx(0.675)
        assert score_results(questions, results, tie_credit='strict').accuracy == pytest.approx(0.6)

    def test_missing_keys(self, analyzer):
        questions = load_questions(fixture_path('nokey_questions.jsonl'), analyzer)
        with pytest.raises(MissingAnswerKeyError) as excinfo:
            check_answer_keys(questions)
        assert excinfo.value.details['question_ids'] == ['x2', 'x3']

        calls = []
        with pytest.raises(MissingAnswerKeyError):
            evaluate(lambda q: calls.append(q), questions)
        assert calls == []

    def test_evaluate_with_workers(self, analyzer):
        index = SentenceIndex.from_file(fixture_path('science_sentences.jsonl'), analyzer)
        questions = load_questions(fixture_path('science_questions.jsonl'), analyzer)
        solver = IRSolver(index)
        sequential = evaluate(solver.answer, questions)
        parallel = evaluate(solver.answer, questions, workers=4)
        assert sequential.solver == 'ir'
        assert sequential.n == 23
        assert parallel.to_json() == sequential.to_json()

    def test_report_round_trip(self, tmp_path):
        report = EvaluationReport('tupleinf', [QuestionOutcome('a', [1], 1, 1.0),
                                          QuestionOutcome('b', [0, 1, 2, 3], 2, 0.25, abstain=True)])
        path = tmp_path / 'report.json'
        report.save(str(path))
        loaded = EvaluationReport.load(str(path))
        assert loaded.to_json() == report.to_json()
        data = json.loads(report.to_json())
        assert data['accuracy'] == 0.625
        assert list(data) == sorted(data)

    def test_bad_report_files(self, tmp_path):
        bad = tmp_path / 'bad.json'
        bad.write_text("{not json", encoding='utf-8')
        with pytest.raises(DataError):
            EvaluationReport.load(str(bad))
        bad.write_text('{"solver": "tupleinf"}', encoding='utf-8')
        with pytest.raises(DataError):
            EvaluationReport.load(str(bad))


class TestSignificance:

    @pytest.mark.parametrize('n', range(1, 13))
    def test_matches_exact_oracle(self, n):
        for k in range(n + 1):
            assert binomial_exact_test(k, n - k) == pytest.approx(exact_p_value(k, n), rel=1e-9)

    @pytest.mark.parametrize('wins_a, wins_b, expected', [
        (8, 2, 0.109375),
        (10, 0, 2 / 1024),
        (5, 5, 1.0),
    ])
    def test_known_values(self, wins_a, wins_b, expected):
        assert binomial_exact_test(wins_a, wins_b) == pytest.approx(expected)
        assert binomial_exact_test(wins_b, wins_a) == pytest.approx(expected)

    def test_invalid_counts(self):
        with pytest.raises(ValueError):
            binomial_exact_test(-1, 3)
        with pytest.raises(NoDisagreementError):
            binomial_exact_test(0, 0)

    def test_compare_reports(self):
        ids = [f"q{i}" for i in range(12)]
        credits_a = {qid: 1.0 for qid in ids}
        credits_b = dict(credits_a)
        for qid in ids[:8]:
            credits_b[qid] = 0.0
        for qid in ids[8:10]:
            credits_a[qid] = 0.25
        result = compare_reports(report_from_credits('tupleinf', credits_a), report_from_credits('ir', credits_b))
        assert (result.wins_a, result.wins_b) == (8, 2)
        assert result.disagreements == 10
        assert result.p_value == pytest.approx(0.109375)
        assert not result.significant
        assert result.to_dict()['solver_b'] == 'ir'

    def test_no_disagreements(self):
        credits = {'a': 1.0, 'b': 0.0}
        result = compare_reports(report_from_credits('tupleinf', credits), report_from_credits('ir', credits))
        assert result.p_value is None
        assert not result.significant

    def test_mismatched_reports(self):
        with pytest.raises(ReportMismatchError):
            compare_reports(report_from_credits('tupleinf', {'a': 1.0}), report_from_credits('ir', {'b': 1.0}))
