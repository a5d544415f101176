"""Word codes, homogeneous polynomials and the span products built on them."""

import pytest

import oracle
from nilgrowth.errors import BudgetExceededError
from nilgrowth.freealg import (GeneralPoly, HomPoly, concat, format_poly,
                               letter_count_y, monomial_times_space,
                               parse_poly, prefix, space_mul,
                               space_times_monomial, subword, suffix,
                               tensor_functionals, tensor_row, word_power)
from nilgrowth.linear import BUDGET, Subspace, code_to_word, word_to_code


def test_word_operations_match_string_arithmetic():
    for a_word in ("x", "xy", "yyx"):
        for b_word in ("y", "xx", "xyx"):
            a, b = word_to_code(a_word), word_to_code(b_word)
            cat = concat(a, len(a_word), b, len(b_word))
            assert code_to_word(cat, len(a_word) + len(b_word)) == a_word + b_word
    w = word_to_code("xyyxy")
    assert code_to_word(prefix(w, 5, 2), 2) == "xy"
    assert code_to_word(suffix(w, 3), 3) == "yxy"
    assert code_to_word(subword(w, 5, 1, 3), 3) == "yyx"
    assert code_to_word(word_power(word_to_code("xy"), 2, 3), 6) == "xyxyxy"
    assert letter_count_y(word_to_code("xyyxy")) == 3


def test_hom_poly_arithmetic_mod2():
    p = HomPoly.monomial(2, 0) + HomPoly.monomial(2, 3)
    q = HomPoly.monomial(2, 3)
    assert (p + q).coeffs == {0: 1}  # the yy terms cancel
    prod = p * q
    # (xx + yy) * yy = xxyy + yyyy
    assert prod.degree == 4
    assert set(prod.coeffs) == {word_to_code("xxyy"), word_to_code("yyyy")}


def test_hom_poly_arithmetic_mod3():
    p = HomPoly(1, field=3, coeffs={0: 2})
    q = HomPoly(1, field=3, coeffs={0: 2})
    assert (p + q).coeffs == {0: 1}  # 2 + 2 = 1 mod 3
    assert (p * q).coeffs == {0: 1}  # 2 * 2 = 1 mod 3
    assert p.scale(3).is_zero()


def test_to_vector_layout():
    p = HomPoly.monomial(3, 5)
    assert p.to_vector() == 1 << 5
    q = HomPoly(1, field=3, coeffs={1: 2})
    assert q.to_vector() == (0, 2)


def test_parse_and_format_roundtrip():
    for text in ("x", "xy + yx", "xx + xy + yy"):
        p = parse_poly(text)
        assert parse_poly(format_poly(p)) == p
    p = parse_poly("xy + xy")  # mod 2 cancellation
    assert p.is_zero()
    assert parse_poly("xyx").degrees() == [3]
    mixed = parse_poly("x + xy")
    assert mixed.degrees() == [1, 2]
    assert mixed.min_degree() == 1 and mixed.max_degree() == 2


def test_parse_rejects_bad_text():
    for bad in ("", "z", "2x", "x +"):
        with pytest.raises(ValueError):
            parse_poly(bad)


def test_general_poly_power():
    x = parse_poly("x")
    assert x.power(3) == parse_poly("xxx")
    s = parse_poly("x + y")
    sq = s.power(2)
    assert set(sq.parts[2].coeffs) == {0, 1, 2, 3}  # all four words
    assert s.power(1) == s
    assert s.term_count() == 2


def test_space_mul_matches_string_concatenation():
    a = Subspace.from_monomials(1, {word_to_code("x")})
    b = Subspace.from_monomials(2, {word_to_code("xy"), word_to_code("yy")})
    prod = space_mul(a, b)
    expected = {word_to_code("xxy"), word_to_code("xyy")}
    assert prod == Subspace.from_monomials(3, expected)
    # dense inputs give the same span
    da = Subspace.span(1, [1 << word_to_code("x")])
    db = Subspace.span(2, [1 << word_to_code("xy"), 1 << word_to_code("yy")])
    assert space_mul(da, db) == prod


def test_space_mul_with_degenerate_factors():
    z = Subspace.zero(2)
    f = Subspace.full(1)
    assert space_mul(z, f).is_zero()
    assert space_mul(f, Subspace.full(2)) == Subspace.full(3)
    unit = Subspace.full(0)
    s = Subspace.from_monomials(2, {1, 2})
    assert space_mul(unit, s) == s
    assert space_mul(s, unit) == s


def test_monomial_translates():
    s = Subspace.from_monomials(2, {word_to_code("yy")})
    left = monomial_times_space(word_to_code("x"), 1, s)
    right = space_times_monomial(s, word_to_code("x"), 1)
    assert left == Subspace.from_monomials(3, {word_to_code("xyy")})
    assert right == Subspace.from_monomials(3, {word_to_code("yyx")})


def test_tensor_rows_annihilate_products():
    # phi (x) psi applied to a.b equals phi(a) psi(b)
    deg_a = deg_b = 2
    u = Subspace.from_monomials(deg_a, {0, 1})
    ann = u.orthogonal().to_dense().rows
    funcs = tensor_functionals(ann, ann, deg_b)
    for a_code in (0, 1):
        for b_code in (0, 1):
            v = 1 << concat(a_code, deg_a, b_code, deg_b)
            assert all(bin(phi & v).count("1") % 2 == 0 for phi in funcs)
    single = tensor_row(1 << 2, 1 << 3, deg_b)
    assert single == 1 << concat(2, deg_a, 3, deg_b)


def test_space_mul_respects_term_budget():
    old = BUDGET.max_terms
    BUDGET.max_terms = 4
    try:
        big = Subspace.full(2)
        with pytest.raises(BudgetExceededError):
            p = parse_poly("xx + xy + yx + yy")
            q = parse_poly("xx + xy + yx + yy")
            _ = p * q
        # span products stay in the subspace lane and are not term-bounded
        assert space_mul(big, big) == Subspace.full(4)
    finally:
        BUDGET.max_terms = old


def test_quotient_dims_brute_agree_with_subword_counts():
    # spot-check the oracle itself: hand counts at tiny degrees
    assert oracle.quotient_dims_brute(4) == [2, 3, 4, 5]
    assert sorted(oracle.subwords(1)) == ["x", "y"]
    assert sorted(oracle.subwords(2)) == ["xx", "xy", "yx"]
