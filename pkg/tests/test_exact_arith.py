"""Tests for the exact arithmetic substrate."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mkzmoments import (
    PoleError,
    Polynomial,
    RationalFunction,
    binomial,
    factorial,
    rat_arith,
    ratfun_derivative,
    ratfun_eval,
    ratfun_normalize,
)
from mkzmoments.exact_arith import NEG_INFINITY


def poly(*coeffs):
    """Ascending-power convenience constructor."""
    return Polynomial(coeffs)


X = poly(0, 1)
ONE_MINUS_X = poly(1, -1)


class TestRationalScalars:
    def test_add(self):
        assert rat_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)

    def test_mul_annihilator(self):
        assert rat_arith(Fraction(3, 4), 0, "mul") == Fraction(0, 1)

    def test_div_by_zero_is_signalled(self):
        with pytest.raises(ZeroDivisionError):
            rat_arith(Fraction(1), 0, "div")

    def test_sub_and_div(self):
        assert rat_arith(Fraction(7, 6), Fraction(1, 6), "sub") == 1
        assert rat_arith(Fraction(3, 4), Fraction(3, 2), "div") == Fraction(1, 2)

    def test_canonical_form(self):
        v = rat_arith(Fraction(2, 4), Fraction(1, 4), "add")
        assert v.numerator == 3 and v.denominator == 4


class TestFactorialBinomial:
    def test_factorial_small(self):
        assert factorial(0) == 1
        assert factorial(5) == 120

    def test_factorial_big(self):
        assert factorial(20) == 2432902008176640000

    def test_factorial_repeated_addition_oracle(self):
        # n! checked against an independent multiply-by-repeated-addition path
        for n in range(8):
            acc = 1
            for k in range(2, n + 1):
                total = 0
                for _ in range(k):
                    total += acc
                acc = total
            assert factorial(n) == acc

    def test_binomial_values(self):
        assert binomial(4, 2) == 6
        for n in (0, 1, 7, 33):
            assert binomial(n, 0) == 1
        assert binomial(3, 5) == 0

    def test_binomial_pascal_oracle(self):
        # independent Pascal-triangle construction
        row = [Fraction(1)]
        for n in range(1, 41):
            row = [Fraction(1)] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [Fraction(1)]
            for k, expected in enumerate(row):
                assert binomial(n, k) == expected
        assert binomial(30, 15) == 155117520


class TestPolynomial:
    def test_zero_degree_marker(self):
        assert Polynomial.zero().degree == NEG_INFINITY
        assert Polynomial.zero().degree != -1

    def test_trailing_zeros_trimmed(self):
        assert poly(1, 2, 0, 0) == poly(1, 2)
        assert poly(0, 0).is_zero

    def test_mul_and_pow(self):
        assert ONE_MINUS_X**2 == poly(1, -2, 1)
        assert (X * ONE_MINUS_X) == poly(0, 1, -1)

    def test_divmod_exact(self):
        q, r = (poly(-1, 0, 1)).divmod(poly(-1, 1))
        assert q == poly(1, 1) and r.is_zero

    def test_derivative(self):
        assert poly(3, 2, 5).derivative() == poly(2, 10)
        assert poly(7).derivative().is_zero

    def test_eval_matches_exact(self):
        p = poly(Fraction(1, 3), -2, Fraction(5, 7), 1)
        x = Fraction(3, 8)
        assert abs(p.eval_float(float(x)) - float(p.eval_exact(x))) < 1e-15

    def test_render(self):
        assert poly(-1, 0, Fraction(3, 2)).render_plain() == "(3/2)*x^2 - 1"
        assert poly(0, 1).render_plain() == "x"
        assert Polynomial.zero().render_plain() == "0"
        assert poly(-2, 0, 3).render_latex() == "3x^{2} - 2"


class TestRationalFunction:
    def test_factor_cancellation(self):
        f = ratfun_normalize(poly(-1, 0, 1), poly(-1, 1))  # (x^2-1)/(x-1)
        assert f == RationalFunction(poly(1, 1))

    def test_content_and_sign(self):
        f = ratfun_normalize(poly(0, 2), poly(4))  # 2x / 4
        assert f.num == poly(0, 1)
        assert f.den == poly(2)
        assert f.den.leading_coefficient > 0

    def test_negative_leading_denominator_flipped(self):
        f = ratfun_normalize(poly(0, 1), poly(1, -1))  # x / (1-x)
        assert f.den.leading_coefficient > 0
        assert f.eval_exact(Fraction(1, 2)) == 1

    def test_zero_numerator(self):
        f = ratfun_normalize(Polynomial.zero(), poly(0, 0, 0, 1))
        assert f.num.is_zero and f.den == Polynomial.one()

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            ratfun_normalize(poly(1), Polynomial.zero())

    def test_derivative_geometric(self):
        # d/dx 1/(1-x) = 1/(1-x)^2
        f = RationalFunction(Polynomial.one(), ONE_MINUS_X)
        assert ratfun_derivative(f) == RationalFunction(Polynomial.one(), ONE_MINUS_X**2)

    def test_derivative_monomial(self):
        for n in (1, 2, 5, 9):
            f = RationalFunction(X**n)
            assert ratfun_derivative(f) == RationalFunction((X ** (n - 1)).scale(n))

    def test_derivative_quotient_rule_by_hand(self):
        # d/dx x/(1-x) = 1/(1-x)^2 (hand quotient rule)
        f = RationalFunction(X, ONE_MINUS_X)
        assert ratfun_derivative(f) == RationalFunction(Polynomial.one(), ONE_MINUS_X**2)

    def test_eval_examples(self):
        assert ratfun_eval(RationalFunction(poly(1, 1)), 0.5) == 1.5
        f = RationalFunction(X**2, ONE_MINUS_X)
        assert abs(ratfun_eval(f, 0.5) - 0.5) < 1e-15

    def test_eval_pole(self):
        f = RationalFunction(Polynomial.one(), ONE_MINUS_X)
        with pytest.raises(PoleError):
            ratfun_eval(f, 1.0)


small_fractions = st.fractions(
    min_value=-50, max_value=50, max_denominator=40
)


def poly_strategy(max_degree=30):
    return st.lists(small_fractions, min_size=0, max_size=max_degree + 1).map(Polynomial)


class TestProperties:
    @given(poly_strategy(), poly_strategy())
    @settings(max_examples=60, deadline=None)
    def test_normalization_idempotent(self, num, den):
        if den.is_zero:
            return
        f = ratfun_normalize(num, den)
        g = ratfun_normalize(f.num, f.den)
        assert f.num == g.num and f.den == g.den

    @given(poly_strategy(8), poly_strategy(8), small_fractions, small_fractions)
    @settings(max_examples=60, deadline=None)
    def test_derivative_linearity(self, p, q, a, b):
        f = RationalFunction(p, ONE_MINUS_X)
        g = RationalFunction(q, X**2 + Polynomial.one())
        combined = f.scale(a) + g.scale(b)
        lhs = ratfun_derivative(combined)
        rhs = ratfun_derivative(f).scale(a) + ratfun_derivative(g).scale(b)
        assert lhs == rhs

    @given(
        poly_strategy(12),
        poly_strategy(6),
        st.fractions(min_value=-Fraction(9, 10), max_value=Fraction(9, 10), max_denominator=64),
    )
    @settings(max_examples=80, deadline=None)
    def test_eval_consistency_with_exact(self, num, den, x):
        if den.is_zero:
            return
        f = ratfun_normalize(num, den)
        den_val = f.den.eval_exact(x)
        if den_val == 0 or abs(float(den_val)) < 1e-6:
            return
        exact = float(f.num.eval_exact(x)) / float(den_val)
        approx = ratfun_eval(f, float(x))
        scale = max(
            1.0,
            sum(abs(float(c)) for c in f.num.coeffs) / abs(float(den_val)),
            abs(exact),
        )
        assert abs(approx - exact) <= 1e-14 * scale

    @given(st.integers(min_value=1, max_value=40), st.integers(min_value=1, max_value=40))
    @settings(max_examples=100, deadline=None)
    def test_pascal_recurrence(self, n, k):
        assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)
