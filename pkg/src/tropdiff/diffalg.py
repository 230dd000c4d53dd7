"""Differential polynomial rings K[[t]]{x_1..x_n} and K{x_1..x_n}.

Variables are pairs ``(i, j)``: ``x_ij`` is the j-th derivative of the i-th
unknown, with ``1 <= i <= n``.  Monomials are stored sparsely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import MissingWeight, VariableCountMismatch, VariableIndexError
from .series import INF, TruncatedSeries, _join_signed, _rational_text


@dataclass(frozen=True, order=True)
class DiffMonomial:
    """Product of differential variables, e.g. ``x12^3 * x23``.

    ``exps`` is a sorted tuple of ``((i, j), e)`` with ``e > 0``; the empty
    tuple is the monomial 1.
    """

    exps: tuple = ()

    def __post_init__(self):
        cleaned = {}
        for (i, j), e in self.exps:
            if e:
                cleaned[(i, j)] = cleaned.get((i, j), 0) + e
        object.__setattr__(self, "exps", tuple(sorted(cleaned.items())))

    @classmethod
    def from_dict(cls, d: Mapping) -> "DiffMonomial":
        return cls(tuple(d.items()))

    @classmethod
    def var(cls, i: int, j: int, e: int = 1) -> "DiffMonomial":
        return cls((((i, j), e),))

    def as_dict(self) -> dict:
        return dict(self.exps)

    def __mul__(self, other: "DiffMonomial") -> "DiffMonomial":
        return DiffMonomial(self.exps + other.exps)

    def __bool__(self):
        return True

    @property
    def is_one(self) -> bool:
        return not self.exps

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    @property
    def order(self) -> int:
        return max((j for (_, j), _ in self.exps), default=0)

    @property
    def max_var(self) -> int:
        return max((i for (i, _), _ in self.exps), default=0)

    def variables(self):
        return [v for v, _ in self.exps]

    def weight(self, w: Mapping) -> float:
        """Sum of ``M_ij * w(i, j)``; absent variables contribute nothing."""
        total = 0
        for v, e in self.exps:
            if v not in w:
                raise MissingWeight(f"no weight for x{v}")
            total += e * w[v]
        return total

    def derive_terms(self):
        """Leibniz rule on variables: yields ``(multiplicity, monomial)`` pairs."""
        d = self.as_dict()
        for (i, j), e in self.exps:
            nd = dict(d)
            nd[(i, j)] -= 1
            nd[(i, j + 1)] = nd.get((i, j + 1), 0) + 1
            yield e, DiffMonomial.from_dict(nd)

    def to_text(self) -> str:
        if not self.exps:
            return "1"
        return "*".join(f"x({i},{j})" + (f"^{e}" if e > 1 else "") for (i, j), e in self.exps)

    def compact(self) -> str:
        """Compact rendering without parentheses, ``x12^3*x23``."""
        if not self.exps:
            return "1"
        return "*".join(f"x{i}{j}" + (f"^{e}" if e > 1 else "") for (i, j), e in self.exps)

    def __str__(self):
        return self.to_text()


ONE = DiffMonomial()


def _sort_key(m: DiffMonomial):
    return (m.is_one, m.exps)


def _check_vars(n_vars, terms):
    for m in terms:
        for (i, j), _ in m.exps:
            if i < 1 or i > n_vars or j < 0:
                raise VariableIndexError(f"variable x({i},{j}) outside 1..{n_vars}")


@dataclass(frozen=True)
class DiffPolynomial:
    """Differential polynomial with truncated-series coefficients.

    Exact zero coefficients are dropped.  A coefficient that is only zero
    modulo its truncation stays, so later valuation queries can refuse it.
    """

    n_vars: int
    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, c in self.terms.items():
            if not isinstance(c, TruncatedSeries):
                c = TruncatedSeries.const(c)
            if not c.is_zero():
                clean[m] = c
        _check_vars(self.n_vars, clean)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def constant(cls, n_vars: int, c) -> "DiffPolynomial":
        return cls(n_vars, {ONE: c})

    @classmethod
    def var(cls, n_vars: int, i: int, j: int) -> "DiffPolynomial":
        return cls(n_vars, {DiffMonomial.var(i, j): TruncatedSeries.const(1)})

    def __hash__(self):
        return hash((self.n_vars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def order(self) -> int:
        return max((m.order for m in self.terms), default=0)

    def has_flagged_coefficients(self) -> bool:
        return any(c.is_truncated_zero for c in self.terms.values())

    def _same_ring(self, other: "DiffPolynomial"):
        if self.n_vars != other.n_vars:
            raise VariableCountMismatch(f"{self.n_vars} vs {other.n_vars} variables")

    def _lift(self, other):
        if isinstance(other, DiffPolynomial):
            self._same_ring(other)
            return other
        if isinstance(other, (int, Fraction, TruncatedSeries)):
            return DiffPolynomial.constant(self.n_vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return DiffPolynomial(self.n_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffPolynomial(self.n_vars, {m: -c for m, c in self.terms.items()})

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
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return DiffPolynomial(self.n_vars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = DiffPolynomial.constant(self.n_vars, 1)
        for _ in range(e):
            out = out * self
        return out

    def mul_monomial(self, mono: DiffMonomial, c=1) -> "DiffPolynomial":
        c = c if isinstance(c, TruncatedSeries) else TruncatedSeries.const(c)
        return DiffPolynomial(self.n_vars, {mono * m: c * v for m, v in self.terms.items()})

    def map_coefficients(self, f) -> "DiffPolynomial":
        return DiffPolynomial(self.n_vars, {m: f(c) for m, c in self.terms.items()})

    def derive(self, k: int = 1) -> "DiffPolynomial":
        p = self
        for _ in range(k):
            p = p._derive_once()
        return p

    def _derive_once(self) -> "DiffPolynomial":
        out = {}

        def put(m, c):
            out[m] = out[m] + c if m in out else c

        for m, c in self.terms.items():
            dc = c.derive(1)
            if not dc.is_zero():
                put(m, dc)
            for mult, m2 in m.derive_terms():
                put(m2, c * mult)
        return DiffPolynomial(self.n_vars, out)

    def evaluate(self, phi) -> TruncatedSeries:
        """Substitute ``x_ij -> d^j phi_i``; truncation orders follow the series rules."""
        if len(phi) != self.n_vars:
            raise VariableCountMismatch(f"expected {self.n_vars} series, got {len(phi)}")
        cache = {}

        def value(i, j):
            if (i, j) not in cache:
                cache[(i, j)] = phi[i - 1].derive(j)
            return cache[(i, j)]

        total = TruncatedSeries.zero()
        for m, c in self.terms.items():
            term = c
            for (i, j), e in m.exps:
                term = term * value(i, j) ** e
            total = total + term
        return total

    def scale_vars(self, w: Mapping) -> "DiffPolynomial":
        """Replace each ``x_ij`` by ``t^w(i,j) x_ij``; infinite weights kill the monomial."""
        out = {}
        for m, c in self.terms.items():
            wt = m.weight(w)
            if wt == INF:
                continue
            out[m] = c.t_shift(int(wt))
        return DiffPolynomial(self.n_vars, out)

    def agrees_with(self, other: "DiffPolynomial") -> str:
        """Compare up to truncation.

        Returns ``"equal"``, ``"equal-up-to-truncation"`` or ``"different"``.
        """
        self._same_ring(other)
        diff = self - other
        if diff.is_zero():
            return "equal"
        if all(c.is_truncated_zero for c in diff.terms.values()):
            return "equal-up-to-truncation"
        return "different"

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            parts.append(_poly_term_text(c, m))
        return _join_signed(parts)

    def __str__(self):
        return self.to_text()


def _poly_term_text(c: TruncatedSeries, m: DiffMonomial) -> str:
    nonzero = [(i, a) for i, a in enumerate(c.coeffs) if a]
    if c.is_exact and len(nonzero) == 1:
        i, a = nonzero[0]
        ctext = TruncatedSeries.t_power(i, a).to_text()
        if m.is_one:
            return ctext
        if ctext == "1":
            return m.to_text()
        if ctext == "-1":
            return "-1*" + m.to_text()
        return ctext + "*" + m.to_text()
    ctext = "(" + c.to_text() + ")"
    return ctext if m.is_one else ctext + "*" + m.to_text()


@dataclass(frozen=True)
class ResiduePolynomial:
    """Differential polynomial over the residue field Q."""

    n_vars: int
    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {m: Fraction(c) for m, c in self.terms.items() if c}
        _check_vars(self.n_vars, clean)
        object.__setattr__(self, "terms", clean)

    def __hash__(self):
        return hash((self.n_vars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __add__(self, other: "ResiduePolynomial") -> "ResiduePolynomial":
        if self.n_vars != other.n_vars:
            raise VariableCountMismatch(f"{self.n_vars} vs {other.n_vars} variables")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ResiduePolynomial(self.n_vars, out)

    def __neg__(self):
        return ResiduePolynomial(self.n_vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ResiduePolynomial(self.n_vars, {m: c * other for m, c in self.terms.items()})
        if self.n_vars != other.n_vars:
            raise VariableCountMismatch(f"{self.n_vars} vs {other.n_vars} variables")
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return ResiduePolynomial(self.n_vars, out)

    __rmul__ = __mul__

    def mul_monomial(self, mono: DiffMonomial, c=1) -> "ResiduePolynomial":
        return ResiduePolynomial(self.n_vars, {mono * m: v * c for m, v in self.terms.items()})

    def derive(self, k: int = 1) -> "ResiduePolynomial":
        """Derivation with constant coefficients (only the variables move)."""
        p = self
        for _ in range(k):
            out = {}
            for m, c in p.terms.items():
                for mult, m2 in m.derive_terms():
                    out[m2] = out.get(m2, 0) + c * mult
            p = ResiduePolynomial(p.n_vars, out)
        return p

    def to_diff_polynomial(self) -> DiffPolynomial:
        return DiffPolynomial(self.n_vars, {m: TruncatedSeries.const(c) for m, c in self.terms.items()})

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0])):
            if m.is_one:
                parts.append(_rational_text(c))
            elif c == 1:
                parts.append(m.to_text())
            else:
                parts.append(f"{_rational_text(c)}*{m.to_text()}")
        return _join_signed(parts)

    def __str__(self):
        return self.to_text()


# Function-style aliases.

def dp_add(P: DiffPolynomial, Q: DiffPolynomial) -> DiffPolynomial:
    return P + Q


def dp_mul(P: DiffPolynomial, Q: DiffPolynomial) -> DiffPolynomial:
    return P * Q


def dp_derive(P: DiffPolynomial, k: int) -> DiffPolynomial:
    return P.derive(k)


def dp_evaluate(P: DiffPolynomial, phi) -> TruncatedSeries:
    return P.evaluate(phi)


def dp_scale_vars(P: DiffPolynomial, w: Mapping) -> DiffPolynomial:
    return P.scale_vars(w)


def rp_is_monomial(G: ResiduePolynomial) -> bool:
    return G.is_monomial()


def linear_combination(n_vars: int, items: Iterable) -> DiffPolynomial:
    """Build ``sum c * x_ij`` from ``((i, j), c)`` pairs."""
    return DiffPolynomial(n_vars, {DiffMonomial.var(i, j): c for (i, j), c in items})
