from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rwsdual.algebra import (
    BiLaurent,
    CyclotomicNumber,
    LaurentPoly,
    NonExactDivision,
    bi_transform,
    cyc_arith,
    cyclotomic_polynomial,
    divisors,
    euler_phi,
    exact_div,
    format_rational,
)


def test_cyclotomic_polynomial_examples():
    assert cyclotomic_polynomial(1) == LaurentPoly({0: -1, 1: 1})
    assert cyclotomic_polynomial(2) == LaurentPoly({0: 1, 1: 1})
    assert cyclotomic_polynomial(6) == LaurentPoly({0: 1, 1: -1, 2: 1})


def test_cyclotomic_product_identity():
    for n in range(1, 201):
        p = LaurentPoly({0: 1})
        for d in divisors(n):
            p = p * cyclotomic_polynomial(d)
        assert p == LaurentPoly({0: -1, n: 1})


def test_root_of_unity_examples():
    r = CyclotomicNumber.root_of_unity
    assert r(2, 4) == CyclotomicNumber.rational(4, -1)
    assert cyc_arith(r(1, 3), r(2, 3), "add") == CyclotomicNumber.rational(3, -1)
    assert cyc_arith(r(1, 5), None, "inv") == r(4, 5)


def test_inverse_of_zero_is_reported():
    with pytest.raises(ZeroDivisionError):
        CyclotomicNumber.zero(7).inverse()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.lists(st.integers(-5, 5), min_size=1, max_size=12))
def test_field_inverse(n, coeffs):
    a = CyclotomicNumber(n, coeffs)
    if a.is_zero():
        return
    assert a * a.inverse() == CyclotomicNumber.rational(n, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 24), st.lists(st.integers(-3, 3), max_size=8), st.lists(st.integers(-3, 3), max_size=8))
def test_cyclotomic_canonical_form(n, xs, ys):
    a, b = CyclotomicNumber(n, xs), CyclotomicNumber(n, ys)
    for c in (a + b, a * b, a - a):
        assert len(c.coeffs) <= euler_phi(n)
    assert (a - a).coeffs == CyclotomicNumber.zero(n).coeffs
    assert (a + b) - b == a


def test_exact_div_examples():
    one = LaurentPoly({0: 1})
    assert exact_div(LaurentPoly({0: 1, 6: -1}), LaurentPoly({0: 1, 2: -1})) == LaurentPoly({0: 1, 2: 1, 4: 1})
    num = LaurentPoly({0: 1, 5: -1}) * LaurentPoly({0: 1, 2: -1})
    den = LaurentPoly({0: 1, 1: -1}) * LaurentPoly({0: 1, 4: -1})
    with pytest.raises(NonExactDivision):
        exact_div(num, den)
    assert exact_div(LaurentPoly({0: 1, 1: -1}), LaurentPoly({0: 1, 1: -1})) == one


laurent = st.dictionaries(st.integers(-6, 10), st.integers(-4, 4), max_size=6).map(LaurentPoly)


@settings(max_examples=100, deadline=None)
@given(laurent, laurent)
def test_exact_div_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert exact_div(a * b, b) == a


@settings(max_examples=100, deadline=None)
@given(laurent, laurent)
def test_no_stored_zero_coefficients(a, b):
    for c in (a + b, a - b, a * b, a - a):
        assert all(v != 0 for _, v in c.items())


def test_bi_transform_examples():
    y_plus_yb = BiLaurent({(1, 0): 1, (0, 1): 1}, 2)
    assert bi_transform(y_plus_yb, "invert_ybar") == BiLaurent({(1, 0): 1, (0, -1): 1}, 2)
    assert bi_transform(BiLaurent({(0, 0): 1}, 2), "scale_by_monomial", 1) == BiLaurent({(0, 1): 1}, 2)
    assert bi_transform(bi_transform(y_plus_yb, "invert_ybar"), "invert_ybar") == y_plus_yb


exps = st.fractions(min_value=-3, max_value=3, max_denominator=6).map(lambda f: Fraction(round(f * 12), 12))
bilaurent = st.dictionaries(st.tuples(exps, exps), st.integers(-5, 5), max_size=6).map(lambda t: BiLaurent(t, 12))


@settings(max_examples=100, deadline=None)
@given(bilaurent, st.integers(-24, 24))
def test_bi_transform_properties(f, k):
    c = Fraction(k, 12)
    assert f.invert_ybar().invert_ybar() == f
    assert f.scale_by_monomial(c).scale_by_monomial(-c) == f
    assert all(v != 0 for _, _, v in (f - f + f).terms())


def test_bilaurent_rejects_exponent_outside_bound():
    with pytest.raises(ValueError):
        BiLaurent({(Fraction(1, 5), 0): 1}, 6)


def test_format_rational():
    assert format_rational(3) == "3/1"
    assert format_rational(Fraction(-2, 6)) == "-1/3"
