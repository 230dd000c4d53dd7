import random

import pytest

import oracles
import randgen
from tropdiff.errors import NotASolution, UniverseMismatch, VariableCountMismatch
from tropdiff.examples import F_TEXT, G_TEXT, five_sets, recurrence_solution
from tropdiff.parse import parse_natset, parse_poly
from tropdiff.series import TruncatedSeries
from tropdiff.solver import (CandidateUniverse, check_basis, indicator_series, linear_ode_series,
                             solutions_report, solve_diff_ideal, solve_system, theorem_pp_compare)
from tropdiff.tropical import tropicalize


def known_f_solutions(N=32):
    return [(recurrence_solution(a0, a1, N),) for a0, a1 in [(1, 0), (0, 1), (1, -1), (1, 1), (0, 0)]]


def solver_windows(polys, U, length):
    rep = solve_system([tropicalize(p) for p in polys], U)
    return {tuple(s.window(length) for s in S) for S in rep.solutions}


def brute_vs_solver(rng):
    n = rng.randint(1, 2)
    T, p = rng.randint(0, 3), rng.randint(0, 3)
    polys = [randgen.poly(rng, n_vars=n, max_order=3, max_terms=3) for _ in range(rng.randint(1, 2))]
    expected, length = oracles.brute_solve(polys, n, T, p)
    return solver_windows(polys, CandidateUniverse(n, T, p), length) == expected


def test_universe_size_matches_brute_enumeration():
    for T in range(4):
        for p in range(4):
            assert len(CandidateUniverse(1, T, p)) == len(oracles.raw_windows(T, p, T + 2 * p + 1))


def test_universe_membership():
    U = CandidateUniverse(1, 3, 3)
    assert (parse_natset("{}+per(0;3;0,2)"),) in U
    assert (parse_natset("{}+per(0;4;0)"),) not in U


def test_solve_characterisation():
    phi = tropicalize(parse_poly("x(1,2) + t^2*x(1,0) + t"))
    U = CandidateUniverse(1, 4, 3)
    rep = solve_system([phi], U)
    assert rep.solutions == [S for S in U if 2 not in S[0] and 3 in S[0]]
    assert rep.solutions


def test_solver_against_brute_force_small():
    rng = random.Random(7)
    for _ in range(20):
        assert brute_vs_solver(rng)


def test_variable_count_mismatch():
    with pytest.raises(VariableCountMismatch):
        solve_system([tropicalize(parse_poly("x(2,0)"))], CandidateUniverse(1, 1, 1))


def test_linear_ode_series_matches_recurrence():
    f = parse_poly(F_TEXT)
    phi = linear_ode_series(f, [1, -1], 20)
    assert phi == recurrence_solution(1, -1, 20)
    assert f.evaluate((phi,)).is_truncated_zero


def test_recurrence_supports():
    N = 30
    supp = {ic: recurrence_solution(*ic, N).support() for ic in [(1, 0), (0, 1), (1, -1)]}
    assert supp[(1, 0)] == {k for k in range(N) if k % 3 != 1}
    assert supp[(0, 1)] == {k for k in range(N) if k % 3 != 0}
    assert supp[(1, -1)] == {k for k in range(N) if k % 3 != 2}


def test_five_sets_and_basis():
    U = CandidateUniverse(1, 3, 3)
    ref = solutions_report(known_f_solutions(), U)
    assert ref.solution_set() == five_sets()
    f, g = parse_poly(F_TEXT), parse_poly(G_TEXT)
    assert check_basis([f, g], ref, 9, U).ok
    only_f = check_basis([f], ref, 9, U)
    assert not only_f.ok
    assert all(d["kind"] == "extra" for d in only_f.discrepancies)
    assert (parse_natset("{}+per(1;1;0)"),) in [d["candidate"] for d in only_f.discrepancies]


def test_check_basis_universe_mismatch():
    ref = solutions_report(known_f_solutions(), CandidateUniverse(1, 2, 2))
    with pytest.raises(UniverseMismatch):
        check_basis([parse_poly(F_TEXT)], ref, 3, CandidateUniverse(1, 3, 3))


def test_solve_diff_ideal_claim():
    rep = solve_diff_ideal([parse_poly(F_TEXT)], 2, CandidateUniverse(1, 1, 1))
    assert rep.verified_depth == 2 and "over-approximation" in rep.claim


def test_theorem_comparator_f_g():
    U = CandidateUniverse(1, 3, 3)
    gens = [parse_poly(F_TEXT), parse_poly(G_TEXT)]
    rep = theorem_pp_compare(gens, known_f_solutions(), 9, U)
    assert rep.equal and not rep.violations
    assert set(rep.set1) == five_sets()


def test_theorem_rejects_non_solution():
    with pytest.raises(NotASolution):
        theorem_pp_compare([parse_poly(F_TEXT)], [(TruncatedSeries.const(1),)], 2,
                           CandidateUniverse(1, 1, 1))


def test_indicator_series():
    S = parse_natset("{1}+per(3;2;0)")
    assert indicator_series(S, 8).support() == {1, 4, 6}
