"""Supports, the Val map and tropical differential polynomials over (Z>=0 u {inf}, min, +)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

from .diffalg import DiffMonomial, DiffPolynomial, _sort_key
from .errors import UncertifiedValuation, VariableCountMismatch
from .series import INF, TropValue, TruncatedSeries


def t_add(a: TropValue, b: TropValue) -> TropValue:
    return min(a, b)


def t_mul(a: TropValue, b: TropValue) -> TropValue:
    return a + b


@dataclass(frozen=True)
class NatSet:
    """Eventually periodic subset of Z>=0.

    Represents ``transient | {n >= threshold : n % period in residues}``;
    ``period == 0`` encodes a finite set.  Instances are always canonical:
    minimal period first, then minimal threshold, so ``==`` is set equality.
    """

    transient: frozenset = frozenset()
    threshold: int = 0
    period: int = 0
    residues: frozenset = frozenset()

    def __post_init__(self):
        t, p, tr, res = _canonical(frozenset(self.transient), self.threshold, self.period,
                                   frozenset(self.residues))
        object.__setattr__(self, "transient", tr)
        object.__setattr__(self, "threshold", t)
        object.__setattr__(self, "period", p)
        object.__setattr__(self, "residues", res)

    @classmethod
    def finite(cls, elems) -> "NatSet":
        return cls(frozenset(elems))

    @classmethod
    def naturals(cls) -> "NatSet":
        return cls(frozenset(), 0, 1, frozenset({0}))

    @classmethod
    def empty(cls) -> "NatSet":
        return cls()

    @classmethod
    def progression(cls, period: int, residues, start: int = 0) -> "NatSet":
        return cls(frozenset(), start, period, frozenset(residues))

    def complement(self) -> "NatSet":
        t = self.threshold
        tr = frozenset(n for n in range(t) if n not in self.transient)
        if self.period == 0:
            return NatSet(tr, t, 1, frozenset({0}))
        res = frozenset(range(self.period)) - self.residues
        return NatSet(tr, t, self.period, res)

    @property
    def is_finite(self) -> bool:
        return self.period == 0

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n < self.threshold:
            return n in self.transient
        return self.period > 0 and n % self.period in self.residues

    def sort_key(self):
        return (self.period, self.threshold, tuple(sorted(self.transient)), tuple(sorted(self.residues)))

    def next_element(self, j: int):
        """Least element ``>= j``, or None."""
        j = max(j, 0)
        if j < self.threshold:
            for n in range(j, self.threshold):
                if n in self.transient:
                    return n
            j = self.threshold
        if self.period == 0:
            return None
        best = None
        for r in self.residues:
            n = j + (r - j) % self.period
            if best is None or n < best:
                best = n
        return best

    def val(self, j: int) -> TropValue:
        n = self.next_element(j)
        return INF if n is None else n - j

    def shift(self, j: int) -> "NatSet":
        """``{i - j : i in S, i >= j}``."""
        tr = frozenset(i - j for i in self.transient if i >= j)
        t = max(0, self.threshold - j)
        if self.period == 0:
            return NatSet(tr)
        res = frozenset((r - j) % self.period for r in self.residues)
        return NatSet(tr, t, self.period, res)

    def window(self, length: int) -> tuple:
        return tuple(n in self for n in range(length))

    def elements_below(self, n: int) -> frozenset:
        return frozenset(k for k in range(n) if k in self)

    def to_text(self) -> str:
        """Grammar form, e.g. ``{1,2}+per(3;3;0,2)``."""
        base = "{" + ",".join(str(n) for n in sorted(self.transient)) + "}"
        if self.period == 0:
            return base
        res = ",".join(str(r) for r in sorted(self.residues))
        return f"{base}+per({self.threshold};{self.period};{res})"

    def describe(self) -> str:
        """Friendly form: finite list, N, or N minus progressions."""
        if self.period == 0:
            return self.to_text()
        if self.threshold == 0:
            if self.residues == frozenset(range(self.period)):
                return "N"
            missing = sorted(set(range(self.period)) - self.residues)
            if len(missing) < len(self.residues):
                progs = ", ".join(_prog(self.period, r) for r in missing)
                return f"N \\ {{{progs}}}"
            return "{" + ", ".join(_prog(self.period, r) for r in sorted(self.residues)) + "}"
        return self.to_text()

    def __str__(self):
        return self.to_text()


def _prog(p, r):
    if p == 1:
        return "k"
    return f"{p}k" if r == 0 else f"{p}k+{r}"


def _divisors(p):
    return [q for q in range(1, p + 1) if p % q == 0]


def _canonical(transient, threshold, period, residues):
    if any(n < 0 for n in transient) or threshold < 0 or period < 0:
        raise ValueError("NatSet parameters must be non-negative")
    residues = frozenset(r % period for r in residues) if period else frozenset()
    if period == 0 or not residues:
        fin = frozenset(transient)
        t = max(fin) + 1 if fin else 0
        return t, 0, fin, frozenset()

    def member(n):
        if n in transient:
            return True
        return n >= threshold and n % period in residues

    start = max([threshold] + [n + 1 for n in transient])
    q = next(d for d in _divisors(period)
             if all(member(n) == member(n + d) for n in range(start, start + period)))
    t = start
    while t > 0 and member(t - 1) == member(t - 1 + q):
        t -= 1
    tr = frozenset(n for n in range(t) if member(n))
    res = frozenset(n % q for n in range(t, t + q) if member(n))
    return t, q, tr, res


def val_at(S: NatSet, j: int) -> TropValue:
    return S.val(j)


def supp_shift(S: NatSet, j: int) -> NatSet:
    return S.shift(j)


@dataclass(frozen=True)
class TropDiffPolynomial:
    """``min over M of a_M + sum M_ij * x_ij``; coefficients are finite naturals."""

    n_vars: int
    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {m: a for m, a in self.terms.items() if a != INF})

    def __hash__(self):
        return hash((self.n_vars, frozenset(self.terms.items())))

    @property
    def order(self) -> int:
        return max((m.order for m in self.terms), default=0)

    def weights(self, S: Sequence[NatSet]) -> dict:
        if len(S) != self.n_vars:
            raise VariableCountMismatch(f"expected {self.n_vars} sets, got {len(S)}")
        w = {}
        for m in self.terms:
            for (i, j) in m.variables():
                if (i, j) not in w:
                    w[(i, j)] = S[i - 1].val(j)
        return w

    def term_values(self, S: Sequence[NatSet]) -> dict:
        w = self.weights(S)
        return {m: a + m.weight(w) for m, a in self.terms.items()}

    def __call__(self, S: Sequence[NatSet]) -> TropValue:
        return min(self.term_values(S).values(), default=INF)

    def to_text(self) -> str:
        """Min-plus rendering, e.g. ``min{1+3x12+x23, 2x13}``."""
        if not self.terms:
            return "inf"
        parts = []
        for m, a in sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0])):
            pieces = []
            if a or m.is_one:
                pieces.append(str(a))
            for (i, j), e in m.exps:
                pieces.append(("" if e == 1 else str(e)) + f"x{i}{j}")
            parts.append("+".join(pieces))
        return "min{" + ", ".join(parts) + "}"

    def __str__(self):
        return self.to_text()


def trop_eval(phi: TropDiffPolynomial, S: Sequence[NatSet]) -> TropValue:
    return phi(S)


class SolutionCheck(NamedTuple):
    is_solution: bool
    value: TropValue
    # (M1, M2) when the minimum is attained twice, "infinite" when the value
    # is inf, otherwise the unique minimising monomial
    witness: object


def is_tropical_solution(phi: TropDiffPolynomial, S: Sequence[NatSet]) -> SolutionCheck:
    vals = phi.term_values(S)
    best = min(vals.values(), default=INF)
    if best == INF:
        return SolutionCheck(True, INF, "infinite")
    argmin = sorted((m for m, v in vals.items() if v == best), key=_sort_key)
    if len(argmin) >= 2:
        return SolutionCheck(True, best, (argmin[0], argmin[1]))
    return SolutionCheck(False, best, argmin[0])


def tropicalize(P: DiffPolynomial) -> TropDiffPolynomial:
    terms = {}
    for m, c in P.terms.items():
        if c.is_truncated_zero:
            raise UncertifiedValuation(
                f"coefficient of {m} vanishes mod t^{c.trunc_order}; valuation not certified"
            )
        terms[m] = c.valuation()
    return TropDiffPolynomial(P.n_vars, terms)


def trop_supp(phi: Sequence[TruncatedSeries]) -> tuple:
    """Supports of a tuple of series as finite NatSets, plus their windows."""
    sets = tuple(NatSet.finite(s.support()) for s in phi)
    windows = tuple(s.trunc_order for s in phi)
    return sets, windows


def val_vector(S: Sequence[NatSet], r: int) -> tuple:
    return tuple(s.val(j) for s in S for j in range(r + 1))


def matches_window(S: NatSet, support: frozenset, window: TropValue) -> bool:
    """Does S agree with an observed support inside the observation window?"""
    if window == INF:
        return S.is_finite and S.transient == support
    return S.elements_below(int(window)) == support
