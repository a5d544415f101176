"""Acceptance suite: one test per criterion, in order.

Run with ``pytest -v tests/test_acceptance.py`` to get exactly one pass/fail
line per criterion. The headline asymptotics live at astronomically large
degrees, so everything here is property checks plus desk-scale numbers frozen
against the independent brute force in ``oracle.py``.
"""

import time

import pytest

import oracle
from nilgrowth import (
    LevelStack,
    QuotientTable,
    Schedule,
    Subspace,
    check_growth_bound,
    gk_slope,
    parse_poly,
    verify_conditions,
    verify_ideal,
    verify_main_estimate,
    verify_qadd,
    verify_totalsize,
    verify_tdim,
    verify_wqsmall,
)
from nilgrowth.construction import verify_F_covers
from nilgrowth.linear import word_to_code
from nilgrowth.schedule import validate_real


def _admissible_splits(total):
    """All (j, k) with j + k = total, disjoint binary digits, k's digits
    strictly below j's."""
    bits = [p for p in range(total.bit_length()) if total >> p & 1]
    for cut in range(1, len(bits)):
        k = sum(1 << p for p in bits[:cut])
        yield total - k, k


def test_criterion_01_construction_invariants(real_stack, toy_f_stack_dense):
    """All applicable tower conditions hold: 1,3,5,6,7,8 on the default
    schedule through level 10; all eight on the toy dense build with an
    explicit 13-dimensional F."""
    t0 = time.monotonic()
    real_reports = verify_conditions(real_stack)
    assert all(r.holds for r in real_reports), \
        [r.text() for r in real_reports if not r.holds]
    checked = {r.number for r in real_reports if not r.vacuous}
    assert {1, 3, 5, 6, 7, 8} <= checked
    # S-interval conditions never fire at reachable levels
    assert all(r.vacuous for r in real_reports if r.number in (2, 4))

    toy_reports = verify_conditions(toy_f_stack_dense)
    assert all(r.holds for r in toy_reports), \
        [r.text() for r in toy_reports if not r.holds]
    assert {r.number for r in toy_reports if not r.vacuous} == set(range(1, 9))
    assert time.monotonic() - t0 < 60


def test_criterion_02_engine_equivalence():
    """Dense and monomial engines agree on U, V and on all five window
    spaces through degree 4."""
    sched = Schedule.default_real()
    mono = LevelStack(sched, engine="monomial").build_to(4)
    dense = LevelStack(sched, engine="dense").build_to(4)
    for n in range(5):
        assert mono.level(n).V == dense.level(n).V, f"V at level {n}"
        assert mono.level(n).U == dense.level(n).U, f"U at level {n}"
    tm = QuotientTable(mono, engine="monomial")
    td = QuotientTable(dense, engine="dense")
    for n in range(5):
        for name in ("E", "R", "S", "Q", "W"):
            assert getattr(tm, name)(n) == getattr(td, name)(n), (name, n)


def test_criterion_03_desk_oracle_numbers(real_stack, real_table):
    """Frozen desk-scale values, each cross-checked against the string
    brute force."""
    # brute force first
    assert [w for w in oracle.all_words(1) if oracle.e_membership_brute(w)] == []
    assert [w for w in oracle.all_words(2) if oracle.e_membership_brute(w)] == ["yy"]
    e3 = [w for w in oracle.all_words(3) if oracle.e_membership_brute(w)]
    assert len(e3) == 4
    assert oracle.quotient_dims_brute(4) == [2, 3, 4, 5]

    # engine must match it
    assert real_table.E(1).is_zero()
    assert real_table.E(2) == Subspace.from_monomials(2, {word_to_code("yy")})
    assert real_table.E(3).dim() == 4
    assert real_table.E(3) == Subspace.from_monomials(
        3, {word_to_code(w) for w in e3})
    assert [real_table.quotient_dim(n) for n in range(1, 5)] == [2, 3, 4, 5]
    assert real_stack.level(2).U.dim() == 14
    assert real_table.Q(3) == Subspace.from_monomials(3, {word_to_code("xxx")})
    assert real_table.W(3) == Subspace.from_monomials(
        3, {word_to_code("xxx"), word_to_code("xxy")})


def test_criterion_04_ustack_exhaustive(real_stack):
    """Stacked product containment for every admissible (n, m, k): dense
    engine through m = 4, monomial certificates through m = 10."""
    dense = LevelStack(Schedule.default_real(), engine="dense").build_to(4)
    dense_results = dense.check_ustack_all(4)
    assert len(dense_results) == 57
    assert all(ok for *_, ok in dense_results), \
        [t for t in dense_results if not t[3]]
    mono_results = real_stack.check_ustack_all(10)
    assert all(ok for *_, ok in mono_results), \
        [t for t in mono_results if not t[3]]


def test_criterion_05_inequality_suites(real_table):
    """Window dimension inequalities, exact integers throughout: product
    additivity of Q and W, the between-powers bound, dim <= 2 in the sparse
    regime, and the main square-root estimate."""
    t0 = time.monotonic()
    for total in range(3, 513):
        for j, k in _admissible_splits(total):
            rep = verify_qadd(j, k, real_table)
            assert rep["status"] == "pass", rep
    for n in range(3, 513):
        if n & (n - 1):  # skip exact powers, nothing to compare there
            rep = verify_wqsmall(n, real_table)
            assert rep["status"] == "pass", rep
    for j in range(1, 513):
        rep = verify_tdim(j, real_table)
        assert rep["status"] == "pass", rep
    for n in range(2, 513):
        rep = verify_main_estimate(n, real_table)
        assert rep["status"] == "pass", rep
    assert time.monotonic() - t0 < 300


def test_criterion_06_totalsize(real_table):
    """The window intersection sits inside E(n) and its codimension bound
    holds, on words through n = 12 and on the dense engine through n = 4."""
    for n in range(1, 13):
        rep = verify_totalsize(n, real_table)
        assert rep["status"] == "pass", rep
    frozen = {1: (2, 4), 2: (3, 7), 3: (4, 9)}
    for n, (lhs, bound) in frozen.items():
        rep = verify_totalsize(n, real_table)
        assert rep["dim_quotient"] == lhs and rep["bound"] == bound, rep
    dense = LevelStack(Schedule.default_real(), engine="dense").build_to(3)
    dense_table = QuotientTable(dense, engine="dense")
    for n in range(1, 5):
        rep = verify_totalsize(n, dense_table)
        assert rep["status"] == "pass", rep
        assert rep["dim_quotient"] == real_table.quotient_dim(n)


def test_criterion_07_ideal(real_table):
    """H(1)E(n) + E(n)H(1) <= E(n+1) for all n <= 256."""
    rep = verify_ideal(256, real_table)
    assert rep["status"] == "pass", rep


def test_criterion_08_x_power_survives(profile_4096):
    """x^n stays out of E(n) through n = 4096, so the quotient never dies."""
    assert profile_4096.nmax == 4096
    assert all(profile_4096.x_survives)
    assert min(profile_4096.dims) >= 1


def test_criterion_09_growth_bounds(profile_4096):
    """Degreewise and cumulative growth bounds through 4096; the fitted
    log-log slope over [256, 4096] must come in at 3 or below."""
    t0 = time.monotonic()
    rep = check_growth_bound(profile_4096)
    assert rep["status"] == "pass", rep
    slope = gk_slope(profile_4096, (256, 4096))
    print(f"measured log-log slope over [256, 4096]: "
          f"{slope.numerator}/{slope.denominator} = {float(slope):.6f}")
    assert float(slope) <= 3.0
    assert time.monotonic() - t0 < 600


def test_criterion_10_schedule_validator():
    """Entry admissibility: the documented single-entry witness passes while
    each single-clause mutation is rejected with the right clause name."""
    x = parse_poly("x")
    witness = [(2 ** 46657, x)]
    assert validate_real(witness).ok

    too_small = validate_real([(4, x)])
    assert not too_small.ok and too_small.clause == "minimum-index"

    # degree 2 raises the threshold to 6^12, far above floor(log i) = 46657
    too_deep = validate_real([(2 ** 46657, parse_poly("xy"))])
    assert not too_deep.ok and too_deep.clause == "log-degree"

    cramped = validate_real([(2 ** 46657, x), (2 ** 46658, x)])
    assert not cramped.ok and cramped.clause == "gap"


def test_criterion_11_f_covers():
    """Power coverage: ideal(x^2) is covered by H-translates of span{x} up
    to degree 3, and span{y} fails at degree 2 with x^2 as the witness."""
    f = parse_poly("x")
    good = verify_F_covers(f, 1, 2, Subspace.span(1, [1]), 3)
    assert good is None
    bad = verify_F_covers(f, 1, 2, Subspace.span(1, [2]), 2)
    assert bad is not None
    degree, vector = bad
    assert degree == 2 and vector == 1  # the x^2 coordinate vector
