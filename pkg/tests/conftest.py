"""Shared fixtures. The deep stacks and the degree-4096 profile are expensive,
so they are built once per session and reused across files."""

import pytest

from nilgrowth import LevelStack, QuotientTable, Schedule, hilbert
from nilgrowth.linear import code_to_word


@pytest.fixture(scope="session")
def real_stack():
    """Default schedule built high enough for every degree-512 query."""
    return LevelStack(Schedule.default_real()).build_to(10)


@pytest.fixture(scope="session")
def real_table(real_stack):
    return QuotientTable(real_stack)


@pytest.fixture(scope="session")
def deep_stack():
    """Level 13 covers E(n) queries up to n = 4096."""
    return LevelStack(Schedule.default_real()).build_to(13)


@pytest.fixture(scope="session")
def profile_4096(deep_stack):
    return hilbert(4096, QuotientTable(deep_stack))


def explicit_f_texts():
    """A dimension-13 subspace of H(8): spans of e(3t) + e(3t+1), t = 0..12."""
    return [f"{code_to_word(3 * t, 8)} + {code_to_word(3 * t + 1, 8)}"
            for t in range(13)]


@pytest.fixture(scope="session")
def toy_f_schedule():
    return Schedule.toy([2], F_bases={2: explicit_f_texts()})


@pytest.fixture(scope="session")
def toy_f_stack_dense(toy_f_schedule):
    return LevelStack(toy_f_schedule, engine="dense").build_to(4)


@pytest.fixture(scope="session")
def toy_stack():
    """Null-oracle toy tower over Z = {2}, monomial-capable engine."""
    return LevelStack(Schedule.toy([2])).build_to(4)
