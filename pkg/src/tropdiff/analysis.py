"""Finite-stage computations for linear differential ideals in one unknown.

Covers the Val embedding, the band matrix of ``x12 + s x11 + x10`` and its
maximal minors over Q[s], Bergman fan membership for U(2, r+1), minimal
supports of linear forms, the q_ab witness audit, and the Denef-Lipshitz
series.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .diffalg import DiffMonomial, DiffPolynomial
from .errors import BadDimension, BadPair, NaturalPole, NotLinearForm, PostconditionFailure, UncertifiedValuation
from .series import INF, TruncatedSeries
from .tropical import NatSet, val_vector


# -- polynomials in s ---------------------------------------------------------

@dataclass(frozen=True)
class UniPoly:
    """Polynomial in the indeterminate s with rational coefficients (low degree first)."""

    coeffs: tuple = ()

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def s(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        lead = other.coeffs[-1]
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            q[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] -= c * b
        return UniPoly(tuple(q)), UniPoly(tuple(rem))

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, s):
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * s + c
        return out

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            power = "" if i == 0 else ("s" if i == 1 else f"s^{i}")
            if not power:
                parts.append(str(c))
            elif c in (1, -1):
                parts.append(power if c == 1 else "-" + power)
            else:
                parts.append(f"{c}*{power}")
        return " + ".join(parts)


def bareiss_det(matrix) -> UniPoly:
    """Fraction-free determinant over Q[s] (Bareiss elimination with row swaps)."""
    m = [[x if isinstance(x, UniPoly) else UniPoly.const(x) for x in row] for row in matrix]
    n = len(m)
    if n == 0:
        return UniPoly.const(1)
    sign = 1
    prev = UniPoly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return UniPoly()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


# -- Val embedding and the band matrix ------------------------------------------

def val_embed(S: Sequence[NatSet], r: int) -> tuple:
    """``(Val_{S_i}(j))`` for i = 1..n, j = 0..r, flattened row by row."""
    return val_vector(S, r)


def band_matrix(r: int) -> list:
    """(r+1) x (r-1) matrix whose column c holds 1, s, 1 in rows c, c+1, c+2."""
    if r < 2:
        raise BadDimension(f"band matrix needs r >= 2, got {r}")
    zero, one, s = UniPoly(), UniPoly.const(1), UniPoly.s()
    A = [[zero] * (r - 1) for _ in range(r + 1)]
    for c in range(r - 1):
        A[c][c], A[c + 1][c], A[c + 2][c] = one, s, one
    return A


@dataclass
class MatroidCheck:
    uniform: bool
    minors: list  # (row subset, UniPoly)


def check_uniform_matroid(r: int) -> MatroidCheck:
    A = band_matrix(r)
    minors = []
    for rows in itertools.combinations(range(r + 1), r - 1):
        minors.append((rows, bareiss_det([A[i] for i in rows])))
    return MatroidCheck(all(not d.is_zero() for _, d in minors), minors)


def bergman_membership_u2(v: Sequence) -> bool:
    """All coordinates equal to some b except at most one, which is >= b."""
    v = list(v)
    if len(v) <= 2:
        return True
    b = min(v)
    off = [x for x in v if x != b]
    return len(off) <= 1


# -- minimal supports -----------------------------------------------------------

def linear_coefficients(f: DiffPolynomial) -> dict:
    """``{j: f_j}`` for a linear form ``sum f_j x_1j`` in a single unknown."""
    out = {}
    for m, c in f.terms.items():
        if m.degree != 1:
            raise NotLinearForm(f"monomial {m} is not a single variable")
        (i, j), _ = m.exps[0]
        if i != 1:
            raise NotLinearForm(f"linear forms must involve only x1, found x{i}")
        if c.is_truncated_zero:
            raise UncertifiedValuation(f"coefficient of x1{j} vanishes mod t^{c.trunc_order}")
        out[j] = c
    return out


def supp_min(f: DiffPolynomial) -> frozenset:
    coeffs = linear_coefficients(f)
    if not coeffs:
        return frozenset()
    vals = {j: c.valuation() for j, c in coeffs.items()}
    low = min(vals.values())
    return frozenset(j for j, v in vals.items() if v == low)


@dataclass
class Stabilization:
    stabilized: bool
    offsets: frozenset = frozenset()
    k_stable: object = None
    history: list = field(default_factory=list)


def suppmin_stabilization(g: DiffPolynomial, k_max: int) -> Stabilization:
    """Track ``supp_min(d^k g) - k`` for k = 0..k_max.

    Reports the first k after which the offset set stays constant through
    k_max; a constant tail shorter than half the window counts as not
    stabilized.
    """
    history = []
    p = g
    for k in range(k_max + 1):
        history.append(frozenset(j - k for j in supp_min(p)))
        if k < k_max:
            p = p.derive(1)
    k_s = k_max
    while k_s > 0 and history[k_s - 1] == history[k_max]:
        k_s -= 1
    tail = k_max - k_s + 1
    if tail * 2 < k_max + 1:
        return Stabilization(False, frozenset(), None, history)
    return Stabilization(True, history[k_max], k_s, history)


def generic_supp_min(v: Sequence[TruncatedSeries], r: int) -> frozenset:
    """supp_min of ``sum_i v_i d^i(x12 + s x11 + x10)`` with s an indeterminate.

    Coefficient j is ``v_j + s v_(j-1) + v_(j-2)``; its t-adic valuation is the
    first power of t whose Q[s] coefficient is a nonzero polynomial.
    """
    if len(v) != r - 1:
        raise BadDimension(f"need r-1 = {r - 1} multipliers, got {len(v)}")
    window = min((c.trunc_order for c in v), default=INF)
    length = int(window) if window != INF else max((len(c.coeffs) for c in v), default=0)
    vals = {}
    for j in range(r + 1):
        val = INF
        for m in range(length):
            poly = UniPoly()
            for i, scale in ((j, UniPoly.const(1)), (j - 1, UniPoly.s()), (j - 2, UniPoly.const(1))):
                if 0 <= i < len(v):
                    poly = poly + scale * v[i][m]
            if not poly.is_zero():
                val = m
                break
        vals[j] = val
    low = min(vals.values())
    if low == INF:
        return frozenset()
    return frozenset(j for j, x in vals.items() if x == low)


# -- q_ab witnesses ---------------------------------------------------------------

def qab_vector(a: int, b: int, horizon: int) -> tuple:
    return tuple(1 if j in (a, b) else 0 for j in range(horizon + 1))


@dataclass
class Witness:
    gen_index: int
    k: int
    poly: DiffPolynomial
    minimizer: int
    supp_min: frozenset


def _family(G, K):
    for gi, g in enumerate(G):
        p = g
        for k in range(K + 1):
            yield gi, k, p
            if k < K:
                p = p.derive(1)


def _linear_valuations(f: DiffPolynomial) -> dict:
    return {j: c.valuation() for j, c in linear_coefficients(f).items()}


def _unique_min_at_qab(vals: dict, a: int, b: int):
    best, where = INF, []
    for j, v in vals.items():
        x = v + (1 if j in (a, b) else 0)
        if x < best:
            best, where = x, [j]
        elif x == best:
            where.append(j)
    return where[0] if best != INF and len(where) == 1 else None


def qab_witness_search(G, a: int, b: int, K: int, horizon: int):
    """First ``d^k g`` whose tropicalisation has a unique minimum at q_ab, or None.

    q_ab is zero outside slots a and b (also beyond the horizon).
    """
    if b - a < 2:
        raise BadPair(f"need b - a >= 2, got a={a}, b={b}")
    if horizon < b:
        raise BadPair(f"horizon {horizon} does not reach slot {b}")
    return _search(list(_prepared(G, K)), a, b)


def _prepared(G, K):
    for gi, k, p in _family(G, K):
        vals = _linear_valuations(p)
        low = min(vals.values(), default=INF)
        sm = frozenset(j for j, v in vals.items() if v == low) if low != INF else frozenset()
        yield gi, k, p, vals, sm


def _search(prepared, a, b):
    for gi, k, p, vals, sm in prepared:
        j = _unique_min_at_qab(vals, a, b)
        if j is None:
            continue
        if len(sm) >= 3 and sm != frozenset({a, b, j}):
            raise PostconditionFailure(f"witness d^{k} g{gi} has supp_min {sorted(sm)}, not {{a, b, j}}")
        return Witness(gi, k, p, j, sm)
    return None


@dataclass
class CoverageReport:
    r: int
    K: int
    pairs: list
    covered: dict  # pair -> (gen_index, k, supp_min)
    uncovered: list
    triples: list  # distinct size-3 supp_min sets met in d^k g, k <= K
    g_r: int  # |G_r|: members with |supp_min| = 3 meeting {0..r}
    triples_in_g_r: int
    covered_by_triples: int
    inequality_holds: bool
    forced_failure: bool


def coverage_audit(G, r: int, K: int, prepared=None) -> CoverageReport:
    pairs = [(a, b) for a in range(r + 1) for b in range(a + 2, r + 1)]
    prepared = list(_prepared(G, K)) if prepared is None else prepared
    covered, uncovered = {}, []
    for a, b in pairs:
        w = _search(prepared, a, b)
        if w is None:
            uncovered.append((a, b))
        else:
            covered[(a, b)] = (w.gen_index, w.k, w.supp_min)
    triples = sorted({sm for *_, sm in prepared if len(sm) == 3}, key=sorted)
    g_r_members = [sm for *_, sm in prepared if len(sm) == 3 and min(sm) <= r]
    distinct = len(set(g_r_members))
    by_triples = sum(1 for (_, _, sm) in covered.values() if len(sm) == 3)
    needed = comb(r + 1, 2) - r
    report = CoverageReport(
        r, K, pairs, covered, uncovered, triples, len(g_r_members), distinct, by_triples,
        inequality_holds=3 * distinct >= by_triples,
        forced_failure=3 * distinct < needed,
    )
    if not report.inequality_holds:
        raise PostconditionFailure("counting inequality violated; witness bookkeeping is wrong")
    return report


# -- Denef-Lipshitz ---------------------------------------------------------------

def denef_system() -> list:
    """``t x11 - (x20 + t) x10 - 1`` and ``x21`` in two unknowns."""
    t = TruncatedSeries.t_power(1)
    x10, x11 = DiffMonomial.var(1, 0), DiffMonomial.var(1, 1)
    x20x10 = DiffMonomial((((1, 0), 1), ((2, 0), 1)))
    p1 = DiffPolynomial(2, {x11: t, x20x10: TruncatedSeries.const(-1), x10: -t,
                            DiffMonomial(): TruncatedSeries.const(-1)})
    p2 = DiffPolynomial.var(2, 2, 1)
    return [p1, p2]


def denef_series(phi2, N: int) -> TruncatedSeries:
    """``sum_j t^j / prod_{k<=j} (k - phi2)`` known mod t^N."""
    phi2 = Fraction(phi2)
    coeffs, denom = [], Fraction(1)
    for j in range(N):
        factor = j - phi2
        if factor == 0:
            raise NaturalPole(f"phi2 = {phi2} makes the factor (k - phi2) vanish at k = {j}")
        denom *= factor
        coeffs.append(1 / denom)
    phi1 = TruncatedSeries(tuple(coeffs), N)
    if N == 1:
        # no derivative coefficient is known; only the constant term can be checked
        if -phi2 * coeffs[0] - 1 != 0:
            raise PostconditionFailure(f"constant term {coeffs[0]} does not solve -phi2*a0 - 1 = 0")
        return phi1
    pair = (phi1, TruncatedSeries.const(phi2))
    for p in denef_system():
        res = p.evaluate(pair)
        if not (res.is_zero() or res.is_truncated_zero):
            raise PostconditionFailure(f"substitution into {p} leaves {res}")
    return phi1
