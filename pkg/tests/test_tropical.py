import pytest
from hypothesis import given

import randgen
from tropdiff.errors import UncertifiedValuation
from tropdiff.parse import parse_natset, parse_poly
from tropdiff.series import INF, TruncatedSeries
from tropdiff.tropical import (NatSet, is_tropical_solution, t_add, t_mul, trop_supp,
                               tropicalize)

HORIZON = 60


def members(S, n=HORIZON):
    return {k for k in range(n) if k in S}


def brute_val(S, j, n=HORIZON):
    later = [s for s in range(j, n) if s in S]
    return later[0] - j if later else INF


def test_semiring():
    assert t_add(3, INF) == 3 and t_mul(3, INF) == INF and t_mul(2, 3) == 5


def test_val_pinned():
    S = parse_natset("{0,1,2,3,7,8}")
    assert S.val(4) == 3 and S.val(9) == INF and S.val(0) == 0


def test_periodic_sets():
    S = parse_natset("{}+per(0;3;0,2)")
    assert members(S, 9) == {0, 2, 3, 5, 6, 8}
    assert S.describe() == "N \\ {3k+1}"
    assert NatSet.progression(1, {0}) == NatSet.naturals()
    assert parse_natset("{0,1,2}+per(3;1;0)") == NatSet.naturals()
    assert parse_natset("{}+per(0;6;0,3)") == parse_natset("{}+per(0;3;0)")


@given(randgen.seeds())
def test_canonical_form_is_unique(rng):
    A = randgen.natset(rng, 6, 6)
    # same set, written with a larger threshold and a doubled period
    p = 2 * A.period
    residues = frozenset(k for k in range(p) if 12 + (k - 12) % p in A) if p else frozenset()
    B = NatSet(frozenset(k for k in range(12) if k in A), 12, p, residues)
    assert members(A) == members(B)
    assert A == B


@given(randgen.seeds())
def test_val_matches_scan(rng):
    S = randgen.natset(rng, 6, 5)
    for j in range(20):
        assert S.val(j) == brute_val(S, j)


@given(randgen.seeds())
def test_complement(rng):
    S = randgen.natset(rng, 6, 5)
    assert members(S.complement()) == set(range(HORIZON)) - members(S)


def test_trop_text():
    P = parse_poly("t*x(1,2)^3*x(2,3) + (1+t^2)*x(1,3)^2")
    assert tropicalize(P).to_text() == "min{1+3x12+x23, 2x13}"


def test_trop_rejects_uncertified():
    P = parse_poly("t^5*x(1,0) + x(1,1)", trunc=3)
    with pytest.raises(UncertifiedValuation):
        tropicalize(P)


def test_solution_semantics():
    phi = tropicalize(parse_poly("x(1,2) + t^2*x(1,0) + t"))
    assert is_tropical_solution(phi, (parse_natset("{3}"),)).is_solution
    chk = is_tropical_solution(phi, (parse_natset("{2}"),))
    assert not chk.is_solution and chk.value == 0
    inf = tropicalize(parse_poly("t*x(1,4) + t^2*x(1,5)"))
    chk = is_tropical_solution(inf, (parse_natset("{1,2,3}"),))
    assert chk.is_solution and chk.value == INF and chk.witness == "infinite"


def test_trop_supp():
    phi = (TruncatedSeries.exact((1, 4)), TruncatedSeries.t_power(3), TruncatedSeries((0, 1, 1), 3))
    sets, windows = trop_supp(phi)
    assert [members(s) for s in sets] == [{0, 1}, {3}, {1, 2}]
    assert windows == (INF, INF, 3)
