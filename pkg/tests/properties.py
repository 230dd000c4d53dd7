"""Property checks shared by hypothesis tests and the acceptance loops.

Each takes a ``random.Random`` and raises AssertionError on a violation.
"""

from __future__ import annotations

import sympy

import randgen
from test_series import to_sympy, t
from tropdiff.errors import InfiniteTropValue
from tropdiff.initial import initial_part, lift_initial_combination, q_sub, trop_value
from tropdiff.series import INF, TruncatedSeries


def _y(i, j):
    return sympy.Symbol(f"y_{i}_{j}")


def residue_to_sympy(G):
    total = 0
    for m, c in G.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for (i, j), e in m.exps:
            term *= _y(i, j) ** e
        total += term
    return sympy.expand(total)


def oracle_initial(P, S):
    """Lowest t-degree part of P(x_ij -> t^Val_S(j) y_ij), computed with sympy."""
    total = 0
    for m, c in P.terms.items():
        term = to_sympy(c)
        for (i, j), e in m.exps:
            w = S[i - 1].val(j)
            if w == INF:
                term = 0
                break
            term *= (t ** w * _y(i, j)) ** e
        total += term
    total = sympy.expand(total)
    if total == 0:
        return 0
    low = min(sympy.Poly(total, t).monoms())[0]
    return sympy.expand(sympy.expand(total / t ** low).subs(t, 0))


def check_initial_matches_oracle(rng):
    P = randgen.poly(rng)
    S = randgen.natsets(rng, 2)
    assert residue_to_sympy(initial_part(P, S)) == oracle_initial(P, S)


def check_min_valuation_zero(rng):
    P = randgen.poly(rng)
    S = randgen.natsets(rng, 2)
    Q = q_sub(P, S)
    if trop_value(P, S) == INF:
        assert Q.is_zero()
    else:
        assert min(c.valuation() for c in Q.terms.values()) == 0


def check_multiplicative(rng):
    P, Q = randgen.poly(rng, max_terms=3), randgen.poly(rng, max_terms=3)
    S = randgen.natsets(rng, 2)
    assert initial_part(P * Q, S) == initial_part(P, S) * initial_part(Q, S)


def check_t_power_invariance(rng):
    P = randgen.poly(rng)
    S = randgen.natsets(rng, 2)
    a = rng.randint(0, 5)
    assert initial_part(P.map_coefficients(lambda c: c * TruncatedSeries.t_power(a)), S) == initial_part(P, S)


def check_lifting(rng):
    S = randgen.natsets(rng, 2)
    parts = []
    for _ in range(rng.randint(1, 3)):
        parts.append((randgen.rational(rng, nonzero=True), randgen.monomial(rng, max_deg=1),
                      randgen.poly(rng, max_terms=3)))
    finite = all(trop_value(G, S) != INF and all(S[i - 1].val(j) != INF for (i, j), _ in M.exps)
                 for _, M, G in parts)
    if not finite:
        try:
            lift_initial_combination(parts, S)
        except InfiniteTropValue:
            return
        raise AssertionError("expected InfiniteTropValue")
    H = lift_initial_combination(parts, S)
    target = 0
    for alpha, M, G in parts:
        mono = 1
        for (i, j), e in M.exps:
            mono *= _y(i, j) ** e
        target += sympy.Rational(alpha.numerator, alpha.denominator) * mono * oracle_initial(G, S)
    target = sympy.expand(target)
    assert residue_to_sympy(initial_part(H, S)) == target
    if target == 0:
        assert H.is_zero()


def check_leibniz(rng):
    P, Q = randgen.poly(rng, max_terms=3), randgen.poly(rng, max_terms=3)
    phi = randgen.exact_tuple(rng, 2)
    assert (P * Q).derive(1) == P.derive(1) * Q + P * Q.derive(1)
    assert P.derive(1).evaluate(phi) == P.evaluate(phi).derive(1)


