"""S-initial parts of differential polynomials and the lifting construction.

For a tuple of supports ``S`` every variable ``x_ij`` gets the weight
``Val_{S_i}(j)``.  The terms of ``P`` whose weighted valuation attains
``trop(P)(S)`` form the initial part; their normalised leading coefficients
give ``In_S(P)`` over Q.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .diffalg import DiffMonomial, DiffPolynomial, ResiduePolynomial
from .errors import (
    InfiniteTropValue,
    InternalInvariantViolation,
    NegativePowerOfT,
    PostconditionFailure,
    UncertifiedValuation,
    VariableCountMismatch,
)
from .series import INF, TruncatedSeries
from .tropical import NatSet


def variable_weights(P: DiffPolynomial, S: Sequence[NatSet]) -> dict:
    if len(S) != P.n_vars:
        raise VariableCountMismatch(f"expected {P.n_vars} sets, got {len(S)}")
    w = {}
    for m in P.terms:
        for (i, j) in m.variables():
            w.setdefault((i, j), S[i - 1].val(j))
    return w


def _certified(P: DiffPolynomial):
    for m, c in P.terms.items():
        if c.is_truncated_zero:
            raise UncertifiedValuation(
                f"coefficient of {m} vanishes mod t^{c.trunc_order}; valuation not certified"
            )


def _weighted(P: DiffPolynomial, S):
    """(trop(P)(S), {M: weighted valuation})."""
    _certified(P)
    w = variable_weights(P, S)
    vals = {m: c.valuation() + m.weight(w) for m, c in P.terms.items()}
    return min(vals.values(), default=INF), vals


def trop_value(P: DiffPolynomial, S: Sequence[NatSet]):
    return _weighted(P, S)[0]


def q_sub(Q: DiffPolynomial, S: Sequence[NatSet]) -> DiffPolynomial:
    """``t^(-trop(Q)(S)) * Q(t^Val x)``, the zero polynomial when trop(Q)(S) is infinite."""
    tau, _ = _weighted(Q, S)
    if tau == INF:
        return DiffPolynomial(Q.n_vars, {})
    scaled = Q.scale_vars(variable_weights(Q, S))
    try:
        out = scaled.map_coefficients(lambda c: c.t_shift(-int(tau)))
    except NegativePowerOfT as exc:
        raise InternalInvariantViolation(f"Q_S has a coefficient of negative valuation: {exc}")
    vals = [c.valuation() for c in out.terms.values()]
    if min(vals) != 0:
        raise InternalInvariantViolation(f"Q_S has minimal coefficient valuation {min(vals)}")
    return out


def initial_part(P: DiffPolynomial, S: Sequence[NatSet]) -> ResiduePolynomial:
    tau, vals = _weighted(P, S)
    if tau == INF:
        return ResiduePolynomial(P.n_vars, {})
    terms = {m: P.terms[m].leading_coefficient() for m, v in vals.items() if v == tau}
    out = ResiduePolynomial(P.n_vars, terms)
    if out.is_zero():
        raise InternalInvariantViolation("initial part vanished although trop(P)(S) is finite")
    return out


def initial_part_hu_gao(P: DiffPolynomial, S: Sequence[NatSet]) -> DiffPolynomial:
    """Keep ``t^v(phi_M)`` on each surviving term (the K[[t]]-valued variant)."""
    tau, vals = _weighted(P, S)
    if tau == INF:
        return DiffPolynomial(P.n_vars, {})
    terms = {}
    for m, v in vals.items():
        if v == tau:
            c = P.terms[m]
            terms[m] = TruncatedSeries.t_power(c.valuation(), c.leading_coefficient())
    out = DiffPolynomial(P.n_vars, terms)
    at_one = ResiduePolynomial(P.n_vars, {m: c.at_one() for m, c in out.terms.items()})
    if at_one != initial_part(P, S):
        raise InternalInvariantViolation("Hu-Gao initial part at t=1 differs from In_S")
    return out


def monomial_initial(mono: DiffMonomial, n_vars: int, S: Sequence[NatSet]) -> ResiduePolynomial:
    return initial_part(DiffPolynomial(n_vars, {mono: TruncatedSeries.const(1)}), S)


def lift_initial_combination(parts, S: Sequence[NatSet]) -> DiffPolynomial:
    """Given ``(alpha, M, G_M)`` triples, build H in the ideal of the G_M with
    ``In_S(H) = sum alpha * x^M * In_S(G_M)``.

    H is ``t^A * sum alpha * t^(-A_M) * x^M * G_M`` with
    ``A_M = trop(G_M)(S) + weight of x^M`` and ``A = max A_M``.  When the
    target sum cancels to zero, H = 0 is returned.
    """
    parts = list(parts)
    if not parts:
        raise ValueError("need at least one part")
    n = parts[0][2].n_vars
    target = ResiduePolynomial(n, {})
    chosen = []
    for alpha, mono, G in parts:
        alpha = Fraction(alpha)
        if alpha == 0:
            raise ValueError("alpha must be nonzero")
        if G.n_vars != n:
            raise VariableCountMismatch("parts live in different rings")
        tau = trop_value(G, S)
        if tau == INF:
            raise InfiniteTropValue(f"trop(G)(S) is infinite for G = {G}")
        mw = mono.weight({v: S[v[0] - 1].val(v[1]) for v in mono.variables()})
        if mw == INF:
            # x^M * In_S(G_M) cannot be an initial part when x^M has infinite weight
            raise InfiniteTropValue(f"multiplier {mono} has infinite weight at S")
        target = target + initial_part(G, S).mul_monomial(mono, alpha)
        chosen.append((alpha, mono, G, tau + mw))
    if target.is_zero():
        H = DiffPolynomial(n, {})
    else:
        A = max(a for *_, a in chosen)
        H = DiffPolynomial(n, {})
        for alpha, mono, G, a_m in chosen:
            H = H + G.mul_monomial(mono, TruncatedSeries.t_power(int(A - a_m), alpha))
    got = initial_part(H, S)
    if got != target:
        raise PostconditionFailure(f"In_S(H) = {got}, expected {target}")
    return H
