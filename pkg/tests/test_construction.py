"""Level tower construction: step cases, conditions, the F oracle path."""

import pytest

import oracle
from nilgrowth import LevelStack, Schedule
from nilgrowth.errors import ConfigError, VerificationError
from nilgrowth.construction import FOracle, case3_select, verify_conditions
from nilgrowth.linear import Subspace, code_to_word, word_to_code

from conftest import explicit_f_texts


def test_base_level():
    stack = LevelStack(Schedule.default_real())
    base = stack.level(0)
    assert base.n == 0 and base.degree == 1
    assert sorted(stack.v_set(0)) == [word_to_code("x"), word_to_code("y")]
    assert base.V.dim() == 2 and base.U.dim() == 0
    assert base.labels() == (0, 1)


def test_real_tower_labels_match_oracle():
    stack = LevelStack(Schedule.default_real()).build_to(6)
    for level in range(7):
        d = 1 << level
        words = {code_to_word(c, d) for c in stack.v_set(level)}
        assert words == set(oracle.label_words(level)), level
        st = stack.level(level)
        assert st.V.dim() == 2
        assert st.U.dim() == (1 << d) - 2
        assert st.case == (2 if level else 0)


def test_build_to_is_idempotent_and_level_errors():
    stack = LevelStack(Schedule.default_real()).build_to(3)
    stack.build_to(2)  # no-op, never rebuilds
    assert stack.top() == 3
    with pytest.raises(KeyError):
        stack.level(4)


def test_toy_tower_matches_string_oracle(toy_stack):
    expected = oracle.toy_v_sets(4)
    for level in range(5):
        d = 1 << level
        words = {code_to_word(c, d) for c in toy_stack.v_set(level)}
        assert words == expected[level], level
    assert [toy_stack.level(k).case for k in range(1, 5)] == [2, 1, 3, 2]


def test_conditions_hold_on_toy_and_report_text(toy_stack):
    reports = verify_conditions(toy_stack)
    assert all(r.holds for r in reports)
    texts = [r.text() for r in reports]
    assert any("condition 1" in t for t in texts)
    # stack method is a shorthand for the module function
    assert len(toy_stack.verify_conditions()) == len(reports)


def test_explicit_f_selection_frozen_values(toy_f_stack_dense):
    l3 = toy_f_stack_dense.level(3)
    assert l3.case == 3
    assert l3.U.dim() == 254
    assert code_to_word(l3.m1, 8) == "xxxxxxxy"
    assert code_to_word(l3.m2, 8) == "xxxxxyxy"
    assert sorted(toy_f_stack_dense.v_set(4)) == [257, 261]
    assert toy_f_stack_dense.level(4).U.dim() == 65534
    # the chosen F really landed inside U(8)
    F = toy_f_stack_dense.foracle.space_for(2, 8, 2)
    assert F.dim() == 13
    assert l3.U.contains_space(F)


def test_null_and_explicit_f_differ_only_in_the_split(toy_f_stack_dense):
    null_stack = LevelStack(Schedule.toy([2]), engine="dense").build_to(3)
    assert null_stack.level(3).U.dim() == toy_f_stack_dense.level(3).U.dim()
    assert null_stack.level(3).U != toy_f_stack_dense.level(3).U


def test_monomial_engine_refuses_a_real_f_binding(toy_f_schedule):
    stack = LevelStack(toy_f_schedule, engine="monomial")
    with pytest.raises(ConfigError):
        stack.build_to(3)
    stack.build_to(2)  # below the case-3 step everything is fine


def test_case3_select_boundary():
    vv = frozenset(range(16))
    P = Subspace.span(4, [1 << c for c in range(14)])
    with pytest.raises(ValueError):
        case3_select(P, vv)


def test_foracle_lookup():
    null = FOracle.null()
    assert null.space_for(2, 8, 2) is None
    sched = Schedule.toy([2], F_bases={2: explicit_f_texts()})
    oracle_f = FOracle.from_schedule(sched)
    space = oracle_f.space_for(2, 8, 2)
    assert space is not None and space.dim() == 13
    assert oracle_f.space_for(3, 8, 2) is None


def test_check_ustack_small(real_stack):
    assert real_stack.check_ustack(0, 0, 0)
    assert real_stack.check_ustack(1, 3, 2)
    results = real_stack.check_ustack_all(4)
    assert len(results) == 57 and all(ok for *_, ok in results)


def test_conditions_real_vacuity(real_stack):
    reports = verify_conditions(real_stack, upto=5)
    by_number = {}
    for r in reports:
        by_number.setdefault(r.number, []).append(r)
    assert all(r.vacuous for r in by_number[2])
    assert all(r.vacuous for r in by_number[4])
    assert any(not r.vacuous for r in by_number[1])


def test_v_set_requires_a_monomial_basis():
    stack = LevelStack(Schedule.default_real(), engine="dense").build_to(2)
    # case-2 levels stay monomial even on the dense engine
    assert stack.v_set(2) == frozenset({0, 1})
