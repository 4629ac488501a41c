#!/usr/bin/env python
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from tuple_qa.ilp import (
    EQ,
    GE,
    LE,
    MAX_FREE_VARIABLES,
    BinaryProgram,
    brute_force,
    dump_lp,
    lp_bound,
    solve,
    to_lp_format,
)
from tuple_qa.utils.exceptions import OracleLimitError, ProgramValidationError


def random_program(rng, max_vars=18, max_constraints=30):
    n = int(rng.integers(1, max_vars + 1))
    program = BinaryProgram(name='random')
    ids = [f"x{j}" for j in range(n)]
    for var_id in ids:
        program.add_variable(var_id, float(np.round(rng.normal(0.0, 2.0), 2)))
    for i in range(int(rng.integers(0, max_constraints + 1))):
        size = int(rng.integers(1, min(n, 5) + 1))
        chosen = rng.choice(n, size=size, replace=False)
        terms = [(ids[j], float(rng.choice([-2, -1, 1, 2]))) for j in sorted(chosen)]
        relation = [LE, GE, EQ][int(rng.integers(0, 3))]
        program.add_constraint(terms, relation, float(rng.integers(-1, 4)), name=f"c{i}")
    return program


RANDOM_PROGRAMS = [random_program(np.random.default_rng(seed)) for seed in range(200)]


class TestTrivialPrograms:

    def test_single_positive(self):
        program = BinaryProgram()
        program.add_variable('x', 5.0)
        solution = solve(program)
        assert solution.is_optimal
        assert solution.objective == 5.0
        assert solution.assignment == {'x': 1}

    def test_single_negative(self):
        program = BinaryProgram()
        program.add_variable('x', -3.0)
        solution = solve(program)
        assert solution.objective == 0.0
        assert solution.assignment == {'x': 0}

    def test_pick_one(self):
        program = BinaryProgram()
        program.add_variable('x1', 2.0)
        program.add_variable('x2', 3.0)
        program.add_constraint([('x1', 1.0), ('x2', 1.0)], LE, 1.0)
        solution = solve(program)
        assert solution.objective == 3.0
        assert solution.active() == ['x2']

    def test_empty_program(self):
        for solution in (solve(BinaryProgram()), brute_force(BinaryProgram())):
            assert solution.is_optimal
            assert solution.objective == 0.0
            assert solution.assignment == {}

    def test_forced_contradiction(self):
        program = BinaryProgram()
        program.add_variable('x', 1.0)
        program.add_constraint([('x', 1.0)], LE, 0.0)
        program.force('x', 1)
        assert not solve(program).is_optimal
        assert not brute_force(program).is_optimal
        assert lp_bound(program) is None


@pytest.mark.parametrize('bound', ['lp', 'greedy'])
def test_matches_brute_force(bound):
    for program in RANDOM_PROGRAMS:
        expected = brute_force(program)
        actual = solve(program, bound=bound)
        assert actual.status == expected.status, program.name
        if expected.is_optimal:
            assert actual.objective == pytest.approx(expected.objective, abs=1e-9)
            assert program.is_feasible(actual.assignment)
            assert program.objective_value(actual.assignment) == pytest.approx(actual.objective)


def test_lp_bound_is_admissible():
    for program in RANDOM_PROGRAMS[:60]:
        expected = brute_force(program)
        bound = lp_bound(program)
        if bound is None:
            assert not expected.is_optimal
        elif expected.is_optimal:
            assert bound >= expected.objective - 1e-9


def test_forcing_never_improves():
    for program in RANDOM_PROGRAMS[:60]:
        base = solve(program)
        if not base.is_optimal:
            continue
        for value in (0, 1):
            forced = solve(program.with_forced({'x0': value}))
            if forced.is_optimal:
                assert forced.objective <= base.objective + 1e-9
                assert forced.assignment['x0'] == value
        assert program.forced == {}


def test_deterministic():
    for program in RANDOM_PROGRAMS[:30]:
        assert solve(program).assignment == solve(program).assignment


class TestValidation:

    def test_unknown_variable_in_constraint(self):
        program = BinaryProgram()
        program.add_variable('x', 1.0)
        program.add_constraint([('y', 1.0)], LE, 1.0, name='bad')
        with pytest.raises(ProgramValidationError):
            solve(program)

    def test_bad_relation(self):
        program = BinaryProgram()
        program.add_variable('x', 1.0)
        program.add_constraint([('x', 1.0)], '<', 1.0)
        with pytest.raises(ProgramValidationError):
            program.validate()

    def test_empty_constraint(self):
        program = BinaryProgram()
        program.add_variable('x', 1.0)
        program.add_constraint([], LE, 1.0)
        with pytest.raises(ProgramValidationError):
            solve(program)

    def test_forced_value(self):
        program = BinaryProgram()
        program.add_variable('x', 1.0)
        program.force('x', 2)
        with pytest.raises(ProgramValidationError):
            solve(program)
        with pytest.raises(ProgramValidationError):
            solve(BinaryProgram().with_forced({'missing': 1}))

    def test_duplicate_and_non_finite(self):
        program = BinaryProgram()
        program.add_variable('x', 1.0)
        with pytest.raises(ProgramValidationError):
            program.add_variable('x', 2.0)
        with pytest.raises(ProgramValidationError):
            program.add_variable('y', float('nan'))

    def test_unknown_bound(self):
        with pytest.raises(ProgramValidationError):
            solve(BinaryProgram(), bound='simplex')


def test_oracle_limit():
    program = BinaryProgram()
    for j in range(MAX_FREE_VARIABLES + 1):
        program.add_variable(f"x{j}", 1.0)
    with pytest.raises(OracleLimitError):
        brute_force(program)
    for j in range(10):
        program.force(f"x{j}", 1)
    assert brute_force(program).objective == MAX_FREE_VARIABLES + 1


def test_violations():
    program = BinaryProgram()
    program.add_variable('x', 1.0)
    program.add_variable('y', 1.0)
    program.add_constraint([('x', 1.0), ('y', 1.0)], EQ, 1.0, name='one')
    assert program.is_feasible({'x': 1, 'y': 0})
    assert len(program.violations({'x': 1, 'y': 1})) == 1
    assert program.violations({'x': 1})


class TestLPFormat:

    @pytest.fixture
    def program(self):
        program = BinaryProgram(name='question_q1')
        program.add_variable('a:0', 0.0)
        program.add_variable('e:q:1->f:t1:subject', 0.5)
        program.add_variable('t:t1', -0.25)
        program.add_constraint([('a:0', 1.0)], EQ, 1.0, name='one_choice')
        program.add_constraint([('e:q:1->f:t1:subject', 1.0), ('t:t1', -1.0)], GE, 0.0)
        return program

    def test_sections(self, program):
        text = to_lp_format(program.with_forced({'a:0': 1}))
        lines = text.splitlines()
        assert lines[1] == 'Maximize'
        assert ' obj: 0.5 x1_e_q_1__f_t1_subject - 0.25 x2_t_t1' in lines
        assert 'Subject To' in lines
        assert ' c0: 1 x0_a_0 = 1' in lines
        assert ' c1: 1 x1_e_q_1__f_t1_subject - 1 x2_t_t1 >= 0' in lines
        assert ' fix0: x0_a_0 = 1' in lines
        assert lines[-2:] == [' x0_a_0 x1_e_q_1__f_t1_subject x2_t_t1', 'End']

    def test_dump(self, program, tmp_path):
        path = dump_lp(program, str(tmp_path / 'lp'), 'question q1')
        assert path.endswith('question_q1.lp')
        with open(path, encoding='utf-8') as f:
            assert f.read() == to_lp_format(program)
