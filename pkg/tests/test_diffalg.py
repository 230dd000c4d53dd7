from fractions import Fraction

import pytest
import sympy
from hypothesis import given

import randgen
from test_series import coeffs_upto, to_sympy, t
from tropdiff.diffalg import DiffMonomial, DiffPolynomial, ResiduePolynomial
from tropdiff.errors import MissingWeight, VariableCountMismatch, VariableIndexError
from tropdiff.parse import parse_poly
from tropdiff.series import INF, TruncatedSeries


def sympy_evaluate(P, phi):
    """Substitute x_ij -> d^j phi_i with sympy, independently of DiffPolynomial.evaluate."""
    total = 0
    for m, c in P.terms.items():
        term = to_sympy(c)
        for (i, j), e in m.exps:
            term *= sympy.diff(to_sympy(phi[i - 1]), t, j) ** e
        total += term
    return sympy.expand(total)


def test_derivative_example():
    P = parse_poly("t*x(1,1) + t^2*x(1,3) + t^3")
    assert P.derive(1) == parse_poly("t*x(1,2) + x(1,1) + t^2*x(1,4) + 2*t*x(1,3) + 3*t^2")


def test_monomial_basics():
    m = DiffMonomial.var(1, 1, 2) * DiffMonomial.var(2, 0)
    assert m.to_text() == "x(1,1)^2*x(2,0)"
    assert m.degree == 3 and m.order == 1 and m.max_var == 2
    assert m.weight({(1, 1): 2, (2, 0): 1}) == 5
    with pytest.raises(MissingWeight):
        m.weight({(1, 1): 2})


def test_variable_checks():
    with pytest.raises(VariableIndexError):
        DiffPolynomial(1, {DiffMonomial.var(2, 0): TruncatedSeries.const(1)})
    with pytest.raises(VariableCountMismatch):
        DiffPolynomial.var(1, 1, 0) + DiffPolynomial.var(2, 1, 0)
    with pytest.raises(VariableCountMismatch):
        DiffPolynomial.var(2, 1, 0).evaluate((TruncatedSeries.const(1),))


def test_scale_vars_example():
    P = parse_poly("t*x(1,1) + t^2*x(1,3) + t^3")
    assert P.scale_vars({(1, 1): 1, (1, 3): 0}) == parse_poly("t^2*x(1,1) + t^2*x(1,3) + t^3")
    Q = parse_poly("t*x(1,4) + t^2*x(1,5)")
    assert Q.scale_vars({(1, 4): INF, (1, 5): INF}).is_zero()


def test_x21_vanishes_on_constant_second_component():
    phi = (TruncatedSeries.exact((1, 2, 3)), TruncatedSeries.const(Fraction(5, 2)))
    assert DiffPolynomial.var(2, 2, 1).evaluate(phi).is_zero()


def test_agreement_levels():
    P = parse_poly("x(1,0) + t")
    assert P.agrees_with(parse_poly("x(1,0) + t")) == "equal"
    assert P.agrees_with(parse_poly("x(1,0) + t + t^5", trunc=3)) == "equal-up-to-truncation"
    assert P.agrees_with(parse_poly("x(1,0) + 2*t")) == "different"


def test_residue_polynomial():
    G = ResiduePolynomial(1, {DiffMonomial.var(1, 1): Fraction(1), DiffMonomial.var(1, 3): Fraction(1)})
    assert not G.is_monomial()
    assert G.derive(1).to_text() == "x(1,2) + x(1,4)"
    assert (G - G).is_zero()


@given(randgen.seeds())
def test_leibniz(rng):
    P, Q = randgen.poly(rng), randgen.poly(rng)
    assert (P * Q).derive(1) == P.derive(1) * Q + P * Q.derive(1)


@given(randgen.seeds())
def test_evaluation_commutes_with_derivation(rng):
    P = randgen.poly(rng)
    phi = randgen.exact_tuple(rng, 2)
    assert P.derive(1).evaluate(phi) == P.evaluate(phi).derive(1)


@given(randgen.seeds())
def test_evaluate_matches_sympy(rng):
    P = randgen.poly(rng)
    phi = randgen.exact_tuple(rng, 2)
    v = P.evaluate(phi)
    n = len(v.coeffs) + 3
    assert list(v.coeffs) + [0] * 3 == coeffs_upto(sympy_evaluate(P, phi), n)


@given(randgen.seeds())
def test_truncated_evaluation_agrees_with_exact(rng):
    P = randgen.poly(rng)
    phi = randgen.exact_tuple(rng, 2, max_deg=8)
    exact = P.evaluate(phi)
    trunc = P.evaluate(tuple(s.truncate(12) for s in phi))
    n = trunc.trunc_order
    assert trunc.coeffs == exact.truncate(n).coeffs if n != INF else trunc == exact
