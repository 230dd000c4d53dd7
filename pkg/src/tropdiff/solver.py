"""Tropical solutions over finite universes of supports.

Everything here is exact on the candidates it examines, but the examined
objects are finite: a :class:`CandidateUniverse` of eventually periodic sets,
derivatives ``d^k g`` up to a depth ``K``, and product witnesses ``x^M d^k g``
up to a degree.  Reports carry those limits with them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Sequence

from .diffalg import DiffMonomial, DiffPolynomial
from .errors import NotASolution, NotLinearForm, UniverseMismatch, VariableCountMismatch
from .initial import initial_part
from .series import INF, TruncatedSeries
from .tropical import NatSet, TropDiffPolynomial, is_tropical_solution, matches_window, tropicalize


@dataclass(frozen=True)
class CandidateUniverse:
    """All canonical NatSet tuples with threshold <= max_threshold and period <= max_period."""

    n_vars: int
    max_threshold: int
    max_period: int

    @cached_property
    def natsets(self) -> tuple:
        found = set()
        for p in range(self.max_period + 1):
            for t in range(self.max_threshold + 1):
                for tr in _subsets(range(t)):
                    res_choices = [()] if p == 0 else [r for r in _subsets(range(p)) if r]
                    for res in res_choices:
                        found.add(NatSet(frozenset(tr), t, p, frozenset(res)))
        return tuple(sorted(found, key=NatSet.sort_key))

    def __iter__(self):
        return itertools.product(self.natsets, repeat=self.n_vars)

    def __len__(self):
        return len(self.natsets) ** self.n_vars

    def __contains__(self, S) -> bool:
        return len(S) == self.n_vars and all(
            s.threshold <= self.max_threshold and s.period <= self.max_period for s in S
        )

    def describe(self) -> dict:
        return {"n_vars": self.n_vars, "max_threshold": self.max_threshold,
                "max_period": self.max_period, "size": len(self)}


def _subsets(items):
    items = list(items)
    return itertools.chain.from_iterable(itertools.combinations(items, k) for k in range(len(items) + 1))


@dataclass
class SolutionReport:
    universe: CandidateUniverse
    solutions: list
    verified_depth: object = None
    labels: list = field(default_factory=list)
    # candidate -> (label, value, unique minimising monomial) for rejected candidates
    rejections: dict = field(default_factory=dict)
    # candidate -> list of witnesses, one per checked polynomial
    witnesses: dict = field(default_factory=dict)
    claim: str = ""

    def solution_set(self) -> set:
        return set(self.solutions)


def _solve(polys, labels, U: CandidateUniverse) -> SolutionReport:
    for p in polys:
        if p.n_vars != U.n_vars:
            raise VariableCountMismatch(f"polynomial in {p.n_vars} variables, universe has {U.n_vars}")
    sols, rejections, witnesses = [], {}, {}
    for S in U:
        wits = []
        for p, label in zip(polys, labels):
            chk = is_tropical_solution(p, S)
            if not chk.is_solution:
                rejections[S] = (label, chk.value, chk.witness)
                break
            wits.append(chk.witness)
        else:
            sols.append(S)
            witnesses[S] = wits
    return SolutionReport(U, sols, None, list(labels), rejections, witnesses)


def solve_system(polys: Sequence[TropDiffPolynomial], U: CandidateUniverse) -> SolutionReport:
    polys = list(polys)
    rep = _solve(polys, list(range(len(polys))), U)
    rep.claim = "exact within the universe"
    return rep


def derivative_family(gens: Sequence[DiffPolynomial], K: int):
    """Yield ``((g_index, k), d^k g)`` for k = 0..K."""
    for gi, g in enumerate(gens):
        p = g
        for k in range(K + 1):
            yield (gi, k), p
            if k < K:
                p = p.derive(1)


def solve_diff_ideal(gens: Sequence[DiffPolynomial], K: int, U: CandidateUniverse) -> SolutionReport:
    labels, polys = [], []
    for label, p in derivative_family(gens, K):
        labels.append(label)
        polys.append(tropicalize(p))
    rep = _solve(polys, labels, U)
    rep.verified_depth = K
    rep.claim = (f"solutions of trop(d^k g) for k <= {K} only; "
                 "an over-approximation of Sol(trop(I))")
    return rep


def solutions_report(known_solutions, U: CandidateUniverse) -> SolutionReport:
    """Candidates of U that agree with the support of some known solution."""
    matched = set()
    for phi in known_solutions:
        if len(phi) != U.n_vars:
            raise VariableCountMismatch(f"solution has {len(phi)} components, universe {U.n_vars}")
        choices = []
        for s in phi:
            supp = s.support()
            choices.append([S for S in U.natsets if matches_window(S, supp, s.trunc_order)])
        matched.update(itertools.product(*choices))
    ordered = [S for S in U if S in matched]
    windows = sorted({s.trunc_order for phi in known_solutions for s in phi})
    return SolutionReport(U, ordered, None, [], {}, {},
                          f"supports of {len(known_solutions)} known solutions, observed through "
                          f"windows {windows}")


@dataclass
class BasisCheck:
    ok: bool
    discrepancies: list


def check_basis(gens_G, reference: SolutionReport, K: int, U: CandidateUniverse) -> BasisCheck:
    if reference.universe != U:
        raise UniverseMismatch("reference was computed over a different universe")
    rep = solve_diff_ideal(gens_G, K, U)
    ref = reference.solution_set()
    got = rep.solution_set()
    disc = []
    for S in U:
        if S in ref and S not in got:
            label, value, mono = rep.rejections[S]
            disc.append({"candidate": S, "kind": "missing", "first_failing": label,
                         "value": value, "unique_minimizer": mono})
        elif S in got and S not in ref:
            disc.append({"candidate": S, "kind": "extra", "first_failing": None})
    return BasisCheck(not disc, disc)


def _monomials_up_to(n_vars: int, max_order: int, degree: int):
    vars_ = [(i, j) for i in range(1, n_vars + 1) for j in range(max_order + 1)]
    out = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(vars_, d):
            out.append(DiffMonomial(tuple((v, 1) for v in combo)))
    return out


@dataclass
class TheoremReport:
    set1: list
    set2: list
    set3: list
    violations: list
    equal: bool
    depth: dict
    note: str


def theorem_pp_compare(gens, known_solutions, K: int, U: CandidateUniverse,
                       product_depth: int = 1) -> TheoremReport:
    """Compare supports of solutions, tropical solutions and monomial-free initial parts.

    Set (3) is searched over the finite family ``x^M d^k g`` with
    ``k <= K`` and ``deg M <= product_depth``.
    """
    for idx, phi in enumerate(known_solutions):
        for g in gens:
            r = g.evaluate(phi)
            if not (r.is_zero() or r.is_truncated_zero):
                raise NotASolution(f"known solution #{idx} gives {r} under {g}")
    rep1 = solutions_report(known_solutions, U)
    rep2 = solve_diff_ideal(gens, K, U)
    family = list(derivative_family(gens, K))
    max_order = max((p.order for _, p in family), default=0)
    monos = _monomials_up_to(U.n_vars, max_order, product_depth)
    set3 = []
    for S in U:
        if not any(initial_part(p.mul_monomial(m), S).is_monomial() for _, p in family for m in monos):
            set3.append(S)
    s1, s2, s3 = rep1.solution_set(), rep2.solution_set(), set(set3)
    violations = [("1 in 2", S) for S in rep1.solutions if S not in s2]
    violations += [("2 in 3", S) for S in rep2.solutions if S not in s3]
    return TheoremReport(
        rep1.solutions, rep2.solutions, set3, violations,
        s1 == s2 == s3,
        {"K": K, "product_depth": product_depth, "universe": U.describe()},
        f"equality verified at depth (K={K}, product_depth={product_depth}) only",
    )


def linear_ode_series(f: DiffPolynomial, initial, N: int) -> TruncatedSeries:
    """Power series solution of a linear ODE ``sum c_j(t) x_1j + c(t) = 0``.

    The coefficients must be exact and the leading one must not vanish at
    t = 0.  ``initial`` gives ``a_0 .. a_(r-1)``; the result is known mod t^N.
    """
    if f.n_vars != 1:
        raise NotLinearForm("expected a single unknown")
    coeff, const = {}, TruncatedSeries.zero()
    for m, c in f.terms.items():
        if not c.is_exact:
            raise NotLinearForm("coefficients must be exact polynomials in t")
        if m.is_one:
            const = c
        elif m.degree == 1:
            coeff[m.exps[0][0][1]] = c
        else:
            raise NotLinearForm(f"monomial {m} is not linear")
    r = max(coeff, default=0)
    lead = coeff.get(r, TruncatedSeries.zero())[0]
    if not coeff or lead == 0:
        raise NotLinearForm("leading coefficient vanishes at t = 0")
    if len(initial) != r:
        raise ValueError(f"need {r} initial values, got {len(initial)}")
    a = [Fraction(v) for v in initial] + [Fraction(0)] * max(0, N - r)
    for m in range(0, N - r):
        s = const[m]
        for j, c in coeff.items():
            for l, cl in enumerate(c.coeffs):
                if not cl or l > m or (j == r and l == 0):
                    continue
                i = m - l
                s += cl * (factorial(i + j) // factorial(i)) * a[i + j]
        a[m + r] = -s / (lead * (factorial(m + r) // factorial(m)))
    return TruncatedSeries(tuple(a[:N]), N)


def indicator_series(S: NatSet, N: int) -> TruncatedSeries:
    return TruncatedSeries(tuple(1 if n in S else 0 for n in range(N)), N)
