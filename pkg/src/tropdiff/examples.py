"""Pinned worked examples, run by ``tropdiff paper-examples``.

Each check returns ``(name, passed, detail)``; a check that raises counts
as a failure with the exception text as detail.
"""

from __future__ import annotations

from fractions import Fraction

from . import analysis, initial, solver, tropical
from .diffalg import DiffMonomial, DiffPolynomial
from .errors import NaturalPole
from .parse import parse_natset, parse_poly
from .series import INF, TruncatedSeries

CHECKS = []


def check(name):
    def deco(fn):
        CHECKS.append((name, fn))
        return fn
    return deco


def _S(*texts):
    return tuple(parse_natset(t) for t in texts)


P_INITIAL = "t*x(1,1) + t^2*x(1,3) + t^3"
F_TEXT = "x(1,0) + x(1,1) + x(1,2)"
G_TEXT = "x(1,0) - x(1,3)"


def five_sets():
    N = tropical.NatSet.naturals()
    return {
        (tropical.NatSet.empty(),),
        (N,),
        (tropical.NatSet.progression(3, {1, 2}),),
        (tropical.NatSet.progression(3, {0, 2}),),
        (tropical.NatSet.progression(3, {0, 1}),),
    }


def recurrence_solution(a0, a1, N):
    """Solution of x + x' + x'' = 0 from a_{j+2} = -(a_j + (j+1) a_{j+1}) / ((j+2)(j+1))."""
    a = [Fraction(a0), Fraction(a1)]
    while len(a) < N:
        j = len(a) - 2
        a.append(-(a[j] + (j + 1) * a[j + 1]) / ((j + 2) * (j + 1)))
    return TruncatedSeries(tuple(a[:N]), N)


@check("valuation of t is 1")
def _():
    return TruncatedSeries.t_power(1).valuation() == 1


@check("valuation of 1+t^2 is 0")
def _():
    return TruncatedSeries.exact((1, 0, 1)).valuation() == 0


@check("supports of (a+bt, t^3, t+t^2)")
def _():
    phi = (TruncatedSeries.exact((2, 5)), TruncatedSeries.t_power(3), TruncatedSeries.exact((0, 1, 1)))
    sets, _ = tropical.trop_supp(phi)
    return [s.transient for s in sets] == [{0, 1}, {3}, {1, 2}]


@check("Val_S(4) = 3 and Val_S(9) = inf for S = {0,1,2,3,7,8}")
def _():
    S = parse_natset("{0,1,2,3,7,8}")
    return S.val(4) == 3 and S.val(9) == INF


@check("solutions of x12 + 2x10 + 1 are exactly the S with 2 not in S, 3 in S")
def _():
    phi = tropical.tropicalize(parse_poly("x(1,2) + t^2*x(1,0) + t"))
    U = solver.CandidateUniverse(1, 4, 3)
    rep = solver.solve_system([phi], U)
    expected = [S for S in U if 2 not in S[0] and 3 in S[0]]
    ok3 = tropical.is_tropical_solution(phi, _S("{3}")).is_solution
    ok2 = tropical.is_tropical_solution(phi, _S("{2}")).is_solution
    return rep.solutions == expected and ok3 and not ok2


@check("trop(t x12^3 x23 + (1+t^2) x13^2) = min{1+3x12+x23, 2x13}")
def _():
    P = parse_poly("t*x(1,2)^3*x(2,3) + (1+t^2)*x(1,3)^2")
    return tropical.tropicalize(P).to_text() == "min{1+3x12+x23, 2x13}"


@check("trop(P)(S) = inf for P = t x14 + t^2 x15, S = {1,2,3}; In_S(P) = 0")
def _():
    P = parse_poly("t*x(1,4) + t^2*x(1,5)")
    S = _S("{1,2,3}")
    return (tropical.tropicalize(P)(S) == INF and initial.initial_part(P, S).is_zero()
            and initial.q_sub(P, S).is_zero()
            and P.scale_vars({(1, 4): INF, (1, 5): INF}).is_zero())


@check("trop(P)(S) = 2 and In_S(P) = x11 + x13 for P = t x11 + t^2 x13 + t^3, S = {2,3}")
def _():
    P = parse_poly(P_INITIAL)
    S = _S("{2,3}")
    In = initial.initial_part(P, S)
    return (tropical.tropicalize(P)(S) == 2 and In.to_text() == "x(1,1) + x(1,3)"
            and not In.is_monomial())


@check("Hu-Gao initial part is t x11 + t^2 x13")
def _():
    P = parse_poly(P_INITIAL)
    return initial.initial_part_hu_gao(P, _S("{2,3}")) == parse_poly("t*x(1,1) + t^2*x(1,3)")


@check("variable scaling by S = {2,3} gives t^2 x11 + t^2 x13 + t^3")
def _():
    P = parse_poly(P_INITIAL)
    S = parse_natset("{2,3}")
    w = {(1, 1): S.val(1), (1, 3): S.val(3)}
    return P.scale_vars(w) == parse_poly("t^2*x(1,1) + t^2*x(1,3) + t^3")


@check("d(P) = t x12 + x11 + t^2 x14 + 2t x13 + 3t^2")
def _():
    P = parse_poly(P_INITIAL)
    return P.derive(1) == parse_poly("t*x(1,2) + x(1,1) + t^2*x(1,4) + 2*t*x(1,3) + 3*t^2")


# t*x12 in d(P) has weight 1 + Val_S(2) = 1 and ties the minimum, so it stays.
@check("In_S(d P) = x11 + x12 + 2 x13 differs from d(In_S P) = x12 + x14")
def _():
    P = parse_poly(P_INITIAL)
    S = _S("{2,3}")
    a = initial.initial_part(P.derive(1), S)
    b = initial.initial_part(P, S).derive(1)
    return a.to_text() == "x(1,1) + x(1,2) + 2*x(1,3)" and b.to_text() == "x(1,2) + x(1,4)" and a != b


@check("x21 vanishes at (phi1, constant)")
def _():
    phi = (TruncatedSeries((1, 2, 3, 4), 4), TruncatedSeries.const(5))
    r = DiffPolynomial.var(2, 2, 1).evaluate(phi)
    return r.is_zero() or r.is_truncated_zero


@check("trop(Sol) for x10 + x11 + x12 is the five sets; {f, g} is a basis")
def _():
    U = solver.CandidateUniverse(1, 3, 3)
    f, g = parse_poly(F_TEXT), parse_poly(G_TEXT)
    known = [(recurrence_solution(a0, a1, 32),) for a0, a1 in [(1, 0), (0, 1), (1, -1), (1, 1), (0, 0)]]
    ref = solver.solutions_report(known, U)
    basis = solver.check_basis([f, g], ref, 9, U)
    return ref.solution_set() == five_sets() and basis.ok


@check("Val embedding of {0,1,2,3,7,8} up to 4 is (0,0,0,0,3)")
def _():
    return analysis.val_embed(_S("{0,1,2,3,7,8}"), 4) == (0, 0, 0, 0, 3)


@check("band matrices for r = 2, 3")
def _():
    s, one, zero = analysis.UniPoly.s(), analysis.UniPoly.const(1), analysis.UniPoly()
    return (analysis.band_matrix(2) == [[one], [s], [one]]
            and analysis.band_matrix(3) == [[one, zero], [s, one], [one, s], [zero, one]])


@check("q_ab truncations lie outside the Bergman fan of U(2, r+1)")
def _():
    return all(not analysis.bergman_membership_u2(analysis.qab_vector(a, b, r))
               for r in range(2, 9) for a in range(r + 1) for b in range(a + 2, r + 1))


@check("Denef-Lipshitz series: pole at phi2 = 2, fine at phi2 = 7")
def _():
    try:
        analysis.denef_series(2, 5)
        return False
    except NaturalPole:
        pass
    phi1 = analysis.denef_series(7, 5)
    return phi1.support() == frozenset(range(5))


@check("parsing the worked polynomials and sets")
def _():
    P = parse_poly(P_INITIAL)
    t = TruncatedSeries.t_power
    expected = DiffPolynomial(1, {DiffMonomial.var(1, 1): t(1), DiffMonomial.var(1, 3): t(2),
                                  DiffMonomial(): t(3)})
    f = parse_poly(F_TEXT)
    return (P == expected and len(f.terms) == 3
            and parse_natset("{2,3}") == tropical.NatSet.finite({2, 3})
            and parse_natset("{0,1,2,3,7,8}") == tropical.NatSet.finite({0, 1, 2, 3, 7, 8}))


@check("command line: trop and initial")
def _():
    from .cli import run_command

    r1, c1 = run_command(["trop", "t*x(1,2)^3*x(2,3) + (1+t^2)*x(1,3)^2"])
    r2, c2 = run_command(["initial", P_INITIAL, "--set", "{2,3}"])
    return (c1 == 0 and r1.lines[0] == "min{1+3x12+x23, 2x13}"
            and c2 == 0 and r2.lines[0] == "x(1,1) + x(1,3)")


def run_paper_examples():
    out = []
    for name, fn in CHECKS:
        try:
            ok = bool(fn())
            out.append((name, ok, "" if ok else "mismatch"))
        except Exception as exc:  # report, never crash the suite
            out.append((name, False, f"{type(exc).__name__}: {exc}"))
    return out
