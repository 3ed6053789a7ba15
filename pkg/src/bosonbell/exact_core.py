"""Exact arithmetic substrate.

Unbounded integers are plain Python ints.  Rationals are
:class:`fractions.Fraction`, which keeps the denominator positive and the
pair coprime by construction.  :class:`BigFloat` couples an mpmath binary
float with the precision it was computed at, so no value ever carries an
implicit precision.  :class:`PowerSeries` is a truncated formal power
series with exact rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Union

import mpmath
from mpmath import libmp

DEFAULT_PRECISION_BITS = 256

RationalLike = Union[int, Fraction]


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k); zero when k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def falling_factorial(x, s: int):
    """x (x-1) ... (x-s+1), with the empty product (s=0) equal to 1.

    Preserves the type of ``x``: ints stay ints, Fractions stay exact.
    """
    if s < 0:
        raise ValueError(f"falling_factorial requires s >= 0, got s={s}")
    result = 1
    for i in range(s):
        result *= x - i
    return result


def rising_factorial(x, s: int):
    """Pochhammer product x (x+1) ... (x+s-1), empty product equal to 1."""
    if s < 0:
        raise ValueError(f"rising_factorial requires s >= 0, got s={s}")
    result = 1
    for i in range(s):
        result *= x + i
    return result


def generalized_binomial(alpha: RationalLike, i: int) -> Fraction:
    """C(alpha, i) = alpha (alpha-1) ... (alpha-i+1) / i! for rational alpha."""
    if i < 0:
        return Fraction(0)
    return Fraction(falling_factorial(Fraction(alpha), i), factorial(i))


def mpf_to_fraction(x: mpmath.mpf) -> Fraction:
    """Exact rational value of a finite binary float."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if x == 0:
            return Fraction(0)
        raise ValueError(f"cannot convert non-finite value {x!r}")
    value = Fraction(int(man)) * Fraction(2) ** exp
    return -value if sign else value


@dataclass(frozen=True)
class BigFloat:
    """An arbitrary-precision binary float tagged with its precision."""

    value: mpmath.mpf
    precision_bits: int

    def __post_init__(self) -> None:
        if self.precision_bits < 2:
            raise ValueError("precision_bits must be at least 2")

    @classmethod
    def from_fraction(
        cls, q: RationalLike, precision_bits: int = DEFAULT_PRECISION_BITS,
        rounding: str = "n",
    ) -> "BigFloat":
        """Round an exact rational to ``precision_bits``.

        ``rounding`` is an mpmath mode: "n" nearest, "c" toward +inf,
        "f" toward -inf.  Directed modes give safe one-sided bounds.
        """
        q = Fraction(q)
        raw = libmp.from_rational(q.numerator, q.denominator, precision_bits, rounding)
        return cls(mpmath.mp.make_mpf(raw), precision_bits)

    def to_fraction(self) -> Fraction:
        return mpf_to_fraction(self.value)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return mpmath.nstr(self.value, int(self.precision_bits * 0.3010) + 2)


class TruncationOrderMismatch(ValueError):
    """Binary operation between series truncated at different orders."""


@dataclass(frozen=True)
class PowerSeries:
    """Sum_i c_i x^i + O(x^(K+1)) with exact rational coefficients.

    The truncation order K is part of the value; mixing two series with
    different K raises :class:`TruncationOrderMismatch` instead of silently
    re-truncating.
    """

    coeffs: tuple

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a PowerSeries needs at least the constant term")
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in self.coeffs)
        )

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalLike], order: int | None = None) -> "PowerSeries":
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            if len(cs) > order + 1:
                raise ValueError("more coefficients than the truncation order allows")
            cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        return cls(tuple(cs))

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls.from_coeffs([], order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls.from_coeffs([1], order)

    @classmethod
    def x(cls, order: int) -> "PowerSeries":
        if order < 1:
            raise ValueError("order must be >= 1 to represent x")
        return cls.from_coeffs([0, 1], order)

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> Fraction:
        if not 0 <= n <= self.truncation_order:
            raise IndexError(f"coefficient {n} outside truncation order {self.truncation_order}")
        return self.coeffs[n]

    def _check_order(self, other: "PowerSeries") -> None:
        if self.truncation_order != other.truncation_order:
            raise TruncationOrderMismatch(
                f"orders differ: {self.truncation_order} vs {other.truncation_order}"
            )

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        self._check_order(other)
        return PowerSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        self._check_order(other)
        return PowerSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            self._check_order(other)
            n = len(self.coeffs)
            out = [Fraction(0)] * n
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j in range(n - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
            return PowerSeries(tuple(out))
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c: RationalLike) -> "PowerSeries":
        c = Fraction(c)
        return PowerSeries(tuple(a * c for a in self.coeffs))

    def __pow__(self, k: int) -> "PowerSeries":
        if k < 0:
            raise ValueError("negative powers are not defined for truncated series")
        result = PowerSeries.one(self.truncation_order)
        for _ in range(k):
            result = result * self
        return result


def series_exp(f: PowerSeries) -> PowerSeries:
    """exp(f) truncated at the order of f; requires f(0) = 0.

    A nonzero constant term would make the coefficients transcendental,
    so it is rejected.  Uses g' = f' g, i.e.
    g_n = (1/n) sum_{i=1}^{n} i f_i g_{n-i}.
    """
    if f.coeffs[0] != 0:
        raise ValueError("series_exp requires a zero constant term")
    order = f.truncation_order
    g = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        acc = Fraction(0)
        for i in range(1, n + 1):
            fi = f.coeffs[i]
            if fi:
                acc += i * fi * g[n - i]
        g[n] = acc / n
    return PowerSeries(tuple(g))


def series_binomial_power(alpha: RationalLike, c: RationalLike, order: int) -> PowerSeries:
    """(1 - c x)^alpha = sum_i C(alpha, i) (-c)^i x^i, truncated at ``order``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    alpha = Fraction(alpha)
    c = Fraction(c)
    coeffs = []
    term = Fraction(1)
    for i in range(order + 1):
        coeffs.append(term)
        # C(alpha, i+1)(-c)^(i+1) = C(alpha, i)(-c)^i * (alpha - i)(-c)/(i + 1)
        term = term * (alpha - i) * (-c) / (i + 1)
    return PowerSeries(tuple(coeffs))


def series_exp_linear(c: RationalLike, order: int) -> PowerSeries:
    """exp(c x) truncated at ``order``; coefficients c^n / n!."""
    c = Fraction(c)
    coeffs = [Fraction(1)]
    for n in range(1, order + 1):
        coeffs.append(coeffs[-1] * c / n)
    return PowerSeries(tuple(coeffs))
