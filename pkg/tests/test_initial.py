from fractions import Fraction

import pytest
from hypothesis import given

import properties
import randgen
from tropdiff.diffalg import DiffMonomial
from tropdiff.errors import InfiniteTropValue, UncertifiedValuation
from tropdiff.initial import (initial_part, initial_part_hu_gao, lift_initial_combination, q_sub,
                              trop_value)
from tropdiff.parse import parse_natset, parse_poly
from tropdiff.series import INF

P_TEXT = "t*x(1,1) + t^2*x(1,3) + t^3"
S23 = (parse_natset("{2,3}"),)


def test_pinned_initial_parts():
    P = parse_poly(P_TEXT)
    assert trop_value(P, S23) == 2
    assert initial_part(P, S23).to_text() == "x(1,1) + x(1,3)"
    assert initial_part_hu_gao(P, S23) == parse_poly("t*x(1,1) + t^2*x(1,3)")
    Q = parse_poly("t*x(1,4) + t^2*x(1,5)")
    assert initial_part(Q, (parse_natset("{1,2,3}"),)).is_zero()
    assert q_sub(Q, (parse_natset("{1,2,3}"),)).is_zero()
    assert initial_part(parse_poly("x(1,0)"), (parse_natset("{0}"),)).to_text() == "x(1,0)"


def test_initial_of_derivative_differs_from_derivative_of_initial():
    P = parse_poly(P_TEXT)
    In_dP = initial_part(P.derive(1), S23)
    # t*x12 has weight 1 + Val_S(2) = 1 and ties the minimum
    assert In_dP.to_text() == "x(1,1) + x(1,2) + 2*x(1,3)"
    assert initial_part(P, S23).derive(1).to_text() == "x(1,2) + x(1,4)"


def test_q_sub_normalised():
    P = parse_poly(P_TEXT)
    assert q_sub(P, S23) == parse_poly("x(1,1) + x(1,3) + t")


def test_uncertified():
    with pytest.raises(UncertifiedValuation):
        initial_part(parse_poly("t^4*x(1,0)", trunc=2), S23)


def test_lift_small():
    G = parse_poly("x(1,0) + t*x(1,1)")
    S = (parse_natset("{0,1}"),)
    H = lift_initial_combination([(Fraction(2), DiffMonomial.var(1, 1), G)], S)
    # In(G) = x10 since t*x11 has weight 1
    assert initial_part(H, S).to_text() == "2*x(1,0)*x(1,1)"


def test_lift_infinite_multiplier():
    G = parse_poly("x(1,0)")
    with pytest.raises(InfiniteTropValue):
        lift_initial_combination([(Fraction(1), DiffMonomial.var(1, 5), G)], (parse_natset("{0}"),))


@given(randgen.seeds())
def test_initial_matches_sympy_oracle(rng):
    properties.check_initial_matches_oracle(rng)


@given(randgen.seeds())
def test_min_valuation_zero(rng):
    properties.check_min_valuation_zero(rng)


@given(randgen.seeds())
def test_multiplicative(rng):
    properties.check_multiplicative(rng)


@given(randgen.seeds())
def test_t_power_invariance(rng):
    properties.check_t_power_invariance(rng)


@given(randgen.seeds())
def test_lifting(rng):
    properties.check_lifting(rng)


@given(randgen.seeds())
def test_hu_gao_at_one(rng):
    P = randgen.poly(rng)
    S = randgen.natsets(rng, 2)
    hg = initial_part_hu_gao(P, S)
    ours = initial_part(P, S)
    assert {m: c.at_one() for m, c in hg.terms.items()} == dict(ours.terms)
    if trop_value(P, S) == INF:
        assert hg.is_zero()


def test_lift_cancelling_parts_give_zero():
    G = parse_poly("x(1,0) + t*x(1,1)")
    S = (parse_natset("{0,1}"),)
    one = DiffMonomial()
    assert lift_initial_combination([(Fraction(1), one, G), (Fraction(-1), one, G)], S).is_zero()
