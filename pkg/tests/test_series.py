from fractions import Fraction

import pytest
import sympy
from hypothesis import given

import randgen
from tropdiff.errors import EmptyPrecision, NegativePowerOfT
from tropdiff.series import INF, TruncatedSeries, series_support, series_valuation

t = sympy.Symbol("t")


def to_sympy(s):
    return sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(s.coeffs))


def coeffs_upto(expr, n):
    p = sympy.Poly(sympy.expand(expr), t)
    return [Fraction(int(c.p), int(c.q)) for c in (p.coeff_monomial(t**i) for i in range(n))]


def test_valuations():
    assert TruncatedSeries.t_power(1).valuation() == 1
    assert TruncatedSeries.exact((1, 0, 1)).valuation() == 0
    assert TruncatedSeries.zero().valuation() == INF
    assert series_valuation(TruncatedSeries((0, 0), 2)) == (INF, True)
    assert series_valuation(TruncatedSeries((0, 3), 2)) == (1, False)


def test_supports():
    assert TruncatedSeries.exact((0, 1, 1)).support() == {1, 2}
    assert TruncatedSeries.t_power(3).support() == {3}
    supp, window = series_support(TruncatedSeries((1, 0, 2), 5))
    assert supp == {0, 2} and window == 5


def test_precision_rules():
    a = TruncatedSeries((1, 2, 3), 3)
    b = TruncatedSeries((1, 1, 1, 1, 1), 5)
    assert (a + b).trunc_order == 3
    assert (a * b).trunc_order == 3
    # an exact factor of valuation v buys v extra known coefficients
    assert (a * TruncatedSeries.t_power(2)).trunc_order == 5
    assert a.derive(1).trunc_order == 2
    assert a.derive(1).coeffs == (2, 6)
    with pytest.raises(EmptyPrecision):
        a.derive(3)


def test_t_shift():
    a = TruncatedSeries((0, 0, 5, 1), 4)
    assert a.t_shift(-2) == TruncatedSeries((5, 1), 2)
    assert a.t_shift(1).trunc_order == 5
    with pytest.raises(NegativePowerOfT):
        TruncatedSeries((1, 1), 2).t_shift(-1)


def test_derivative_of_constant_is_exactly_zero():
    assert TruncatedSeries.const(7).derive(1).is_zero()


def test_text():
    assert TruncatedSeries.exact((1, -2, Fraction(1, 2))).to_text() == "1 - 2*t + 1/2*t^2"
    assert TruncatedSeries((0, 1), 3).to_text() == "t + O(t^3)"


@given(randgen.seeds())
def test_mul_matches_sympy(rng):
    a, b = randgen.truncated_series(rng), randgen.truncated_series(rng)
    prod = a * b
    assert prod.trunc_order == min(a.trunc_order, b.trunc_order)
    assert list(prod.coeffs) == coeffs_upto(to_sympy(a) * to_sympy(b), prod.trunc_order)


@given(randgen.seeds())
def test_exact_ring_laws(rng):
    a, b, c = (randgen.exact_series(rng, nonzero=False) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == TruncatedSeries.zero()


@given(randgen.seeds())
def test_leibniz_series(rng):
    a, b = randgen.exact_series(rng), randgen.exact_series(rng)
    assert (a * b).derive(1) == a.derive(1) * b + a * b.derive(1)


@given(randgen.seeds())
def test_derive_matches_sympy(rng):
    a = randgen.exact_series(rng, max_deg=6)
    j = rng.randint(0, 3)
    d = a.derive(j)
    n = len(a.coeffs)
    assert list(d.coeffs) + [0] * (n - len(d.coeffs)) == coeffs_upto(sympy.diff(to_sympy(a), t, j), n)
