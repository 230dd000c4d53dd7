"""Truncated formal power series over the rationals.

A :class:`TruncatedSeries` stores the coefficients of ``t^0 .. t^(N-1)`` of an
element of Q[[t]] together with the truncation order ``N``: nothing is claimed
about coefficients at or beyond ``N``.  A series whose ``trunc_order`` is
``INF`` is *exact*: it is a polynomial in ``t`` and every coefficient past the
stored ones is known to be zero.  Exact series arise from polynomial input
(``t``, ``1 + t^2``, scalars) and keep derivatives of constants honestly equal
to zero.

Orders propagate as follows.

* ``a + b``: ``min(Na, Nb)``.
* ``a * b`` with both truncated: ``min(Na, Nb)``.
* ``a * b`` with ``a`` exact and ``b`` truncated: ``Nb + v(a)``, since a
  polynomial factor of valuation ``v(a)`` pushes the unknown tail up.
* ``d^j a``: ``N - j``; :class:`EmptyPrecision` when that drops below 1.
* ``t^k * a``: ``N + k`` (``k`` may be negative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import EmptyPrecision, NegativePowerOfT

INF = math.inf

TropValue = Union[int, float]
Scalar = Union[int, Fraction]


def _falling(i: int, j: int) -> int:
    # (i+j)! / i!
    out = 1
    for m in range(i + 1, i + j + 1):
        out *= m
    return out


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple
    trunc_order: TropValue = INF

    def __post_init__(self):
        cs = [c if type(c) is Fraction else Fraction(c) for c in self.coeffs]
        n = self.trunc_order
        if n == INF:
            while cs and cs[-1] == 0:
                cs.pop()
        else:
            if int(n) != n or n < 1:
                raise EmptyPrecision(f"truncation order must be a positive integer, got {n}")
            n = int(n)
            cs = (cs + [Fraction(0)] * n)[:n]
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "trunc_order", n)

    # -- constructors -------------------------------------------------------

    @classmethod
    def exact(cls, coeffs: Iterable[Scalar]) -> "TruncatedSeries":
        return cls(tuple(coeffs), INF)

    @classmethod
    def const(cls, c: Scalar) -> "TruncatedSeries":
        return cls((c,), INF)

    @classmethod
    def t_power(cls, k: int, c: Scalar = 1) -> "TruncatedSeries":
        return cls((0,) * k + (c,), INF)

    @classmethod
    def zero(cls) -> "TruncatedSeries":
        return cls((), INF)

    # -- basic queries ------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.trunc_order == INF

    def __getitem__(self, i: int) -> Fraction:
        if i < len(self.coeffs):
            return self.coeffs[i]
        if not self.is_exact:
            raise IndexError(f"coefficient t^{i} lies beyond truncation order {self.trunc_order}")
        return Fraction(0)

    @property
    def window(self) -> int:
        """Number of coefficients that are actually known (stored)."""
        return len(self.coeffs)

    def is_zero(self) -> bool:
        """True only for the exact zero series."""
        return self.is_exact and not self.coeffs

    @property
    def is_truncated_zero(self) -> bool:
        """All stored coefficients vanish but the tail is unknown."""
        return not self.is_exact and not any(self.coeffs)

    def valuation(self) -> TropValue:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INF

    def leading_coefficient(self) -> Fraction:
        v = self.valuation()
        return Fraction(0) if v == INF else self.coeffs[v]

    def support(self) -> frozenset:
        return frozenset(i for i, c in enumerate(self.coeffs) if c)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.trunc_order, other.trunc_order)
        length = max(len(self.coeffs), len(other.coeffs)) if n == INF else n
        a, b = self.coeffs, other.coeffs
        out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(length)]
        return TruncatedSeries(tuple(out), n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.trunc_order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return TruncatedSeries.zero()
            return TruncatedSeries(tuple(c * other for c in self.coeffs), self.trunc_order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        a, b = self, other
        if a.is_exact and b.is_exact:
            n = INF
        elif a.is_exact or b.is_exact:
            ex, tr = (a, b) if a.is_exact else (b, a)
            n = tr.trunc_order + ex.valuation()
        else:
            n = min(a.trunc_order, b.trunc_order)
        if n == INF:
            if a.is_zero() or b.is_zero():
                return TruncatedSeries.zero()
            length = len(a.coeffs) + len(b.coeffs) - 1
        else:
            length = n
        out = [Fraction(0)] * length
        for i, x in enumerate(a.coeffs[:length]):
            if not x:
                continue
            for j, y in enumerate(b.coeffs[: length - i]):
                if y:
                    out[i + j] += x * y
        return TruncatedSeries(tuple(out), n)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = TruncatedSeries.const(1)
        for _ in range(e):
            out = out * self
        return out

    def derive(self, j: int = 1) -> "TruncatedSeries":
        """j-fold formal derivative; coefficient i becomes (i+j)!/i! * a_(i+j)."""
        if j == 0:
            return self
        n = self.trunc_order
        if n != INF:
            n -= j
            if n < 1:
                raise EmptyPrecision(
                    f"d^{j} of a series known mod t^{self.trunc_order} has no known coefficient"
                )
        cs = self.coeffs
        out = tuple(_falling(i, j) * cs[i + j] for i in range(max(0, len(cs) - j)))
        return TruncatedSeries(out, n)

    def t_shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k.  Negative k requires the low coefficients to vanish."""
        if k >= 0:
            return TruncatedSeries((0,) * k + self.coeffs, self.trunc_order + k)
        m = -k
        if any(self.coeffs[:m]):
            raise NegativePowerOfT(f"t^{k} applied to a series of valuation {self.valuation()}")
        if not self.is_exact and self.trunc_order <= m:
            raise EmptyPrecision(f"t^{k} applied to a series known only mod t^{self.trunc_order}")
        return TruncatedSeries(self.coeffs[m:], self.trunc_order - m)

    def truncate(self, n: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[:n], min(n, self.trunc_order))

    def at_one(self) -> Fraction:
        """Value at t = 1 (exact series only)."""
        if not self.is_exact:
            raise EmptyPrecision("cannot evaluate a truncated series at t = 1")
        return sum(self.coeffs, Fraction(0))

    # -- printing -----------------------------------------------------------

    def to_text(self) -> str:
        """Render in the expression grammar (a truncated tail is noted as O(t^N))."""
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            parts.append(_term_text(c, i))
        body = _join_signed(parts) if parts else "0"
        if not self.is_exact:
            body += f" + O(t^{self.trunc_order})"
        return body

    def __str__(self):
        return self.to_text()


def _rational_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _term_text(c: Fraction, i: int) -> str:
    tpart = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
    if not tpart:
        return _rational_text(c)
    if c == 1:
        return tpart
    return f"{_rational_text(c)}*{tpart}"


def _join_signed(parts: list) -> str:
    # the grammar only allows a sign inside a rational literal, so "-1*t" stays as is up front
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            rest = p[1:]
            if rest.startswith("1*"):
                rest = rest[2:]
            out += " - " + rest
        else:
            out += " + " + p
    return out


# Function-style aliases mirroring the operation names used in the docs.

def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_derive(a: TruncatedSeries, j: int) -> TruncatedSeries:
    return a.derive(j)


def series_valuation(a: TruncatedSeries) -> tuple:
    """Return ``(valuation, zero_mod_truncation)``."""
    return a.valuation(), a.is_truncated_zero


def series_support(a: TruncatedSeries) -> tuple:
    """Return ``(support, window)``; window is INF for exact series."""
    return a.support(), a.trunc_order


def series_t_shift(a: TruncatedSeries, k: int) -> TruncatedSeries:
    return a.t_shift(k)
