"""Arbitrary-precision evaluation of the infinite-series identities.

Every series here is summed in exact rational arithmetic and rounded
once at the end.  Truncation is certified: a term-ratio upper bound that
is valid for *all* later terms and non-increasing in the index turns the
remainder into a geometric series, giving an exact rational tail bound.
The only irrational constant, e, enters through an exact rational
enclosure of exp(t), so every :class:`SeriesValue` brackets the true sum
of the identity it evaluates.

Divisions by Gamma-function values never happen in floating point:
all Gamma ratios that appear are reduced to rational Pochhammer products
before evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, factorial
from typing import Callable, Tuple

from .exact_core import (
    DEFAULT_PRECISION_BITS,
    BigFloat,
    PowerSeries,
    RationalLike,
    binomial,
    falling_factorial,
    rising_factorial,
    series_binomial_power,
    series_exp,
    series_exp_linear,
)
from .stirling_bell import Params, bell_number, stirling

_ZERO = Fraction(0)
_ONE = Fraction(1)


class TermBudgetError(RuntimeError):
    """The requested precision was not reached within the term budget."""


class ConvergenceError(ValueError):
    """The series diverges (or cannot be certified) at the given argument."""


@dataclass(frozen=True)
class _Interval:
    """Closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: RationalLike) -> "_Interval":
        x = Fraction(x)
        return cls(x, x)

    def __add__(self, other):
        if isinstance(other, _Interval):
            return _Interval(self.lo + other.lo, self.hi + other.hi)
        other = Fraction(other)
        return _Interval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, _Interval):
            products = (
                self.lo * other.lo, self.lo * other.hi,
                self.hi * other.lo, self.hi * other.hi,
            )
            return _Interval(min(products), max(products))
        other = Fraction(other)
        if other >= 0:
            return _Interval(self.lo * other, self.hi * other)
        return _Interval(self.hi * other, self.lo * other)

    __rmul__ = __mul__

    def reciprocal(self) -> "_Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval straddles zero")
        return _Interval(1 / self.hi, 1 / self.lo)

    def contains(self, x: RationalLike) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


@dataclass(frozen=True)
class SeriesValue:
    """A rounded series value together with a certified absolute error.

    The true sum lies in [value - tail_bound, value + tail_bound]; the
    bound already includes the final rounding step.
    """

    value: BigFloat
    tail_bound: BigFloat
    terms_used: int
    precision_bits: int

    def brackets(self, target: RationalLike) -> bool:
        """Whether the exact target lies inside the certified interval."""
        v = self.value.to_fraction()
        return abs(v - Fraction(target)) <= self.tail_bound.to_fraction()

    def enclosure(self) -> _Interval:
        v = self.value.to_fraction()
        t = self.tail_bound.to_fraction()
        return _Interval(v - t, v + t)


def _series_value(iv: _Interval, terms_used: int, bits: int) -> SeriesValue:
    mid = iv.midpoint
    value = BigFloat.from_fraction(mid, bits, "n")
    rounding_error = abs(mid - value.to_fraction())
    tail = BigFloat.from_fraction(iv.width / 2 + rounding_error, bits, "c")
    return SeriesValue(value=value, tail_bound=tail, terms_used=terms_used,
                       precision_bits=bits)


@lru_cache(maxsize=None)
def _exp_bounds(t: Fraction, bits: int) -> _Interval:
    """Exact rational enclosure of exp(t) for rational t >= 0."""
    if t < 0:
        raise ValueError("negative arguments go through reciprocal()")
    target = Fraction(1, 2 ** (bits + 8))
    partial = _ONE
    term = _ONE
    m = 0
    while True:
        m += 1
        term *= Fraction(t, m)
        partial += term
        if 2 * t <= m + 1:
            # remaining terms fall at least geometrically with ratio <= 1/2
            tail = 2 * term * Fraction(t, m + 1)
            if tail <= target * partial:
                return _Interval(partial, partial + tail)
        if m > 64 * bits + 1024:
            raise TermBudgetError("exp series did not converge in budget")


def _inv_e_bounds(bits: int) -> _Interval:
    return _exp_bounds(_ONE, bits).reciprocal()


def _sum_positive_series(
    term: Callable[[int], Fraction],
    ratio_bound: Callable[[int], Fraction],
    first_index: int,
    rel_tol: Fraction,
    max_terms: int,
    min_terms: int = 0,
) -> Tuple[Fraction, Fraction, int]:
    """Certified truncation of sum_{k >= first_index} term(k).

    ``term(k)`` must be nonnegative and ``ratio_bound(k)`` must bound
    term(j+1)/term(j) for every j >= k while being non-increasing in k.
    Then sum_{j > k} term(j) <= term(k) * rho / (1 - rho) with
    rho = ratio_bound(k).  Returns (partial_sum, tail_bound, terms_used).
    """
    partial = _ZERO
    k = first_index
    used = 0
    while True:
        t = term(k)
        partial += t
        used += 1
        rho = ratio_bound(k)
        if rho < 1 and used >= min_terms:
            tail = t * rho / (1 - rho)
            if partial > 0 and tail <= rel_tol * partial:
                return partial, tail, used
        if used >= max_terms:
            raise TermBudgetError(
                f"series needed more than {max_terms} terms for the requested precision"
            )
        k += 1


def _rel_tol(bits: int) -> Fraction:
    return Fraction(1, 2 ** (bits + 8))


def _falling_product(r: int, s: int, n: int, k: int) -> int:
    """prod_{j=1}^{n} (k + (j-1)(r-s))^falling(s) as an exact integer."""
    d = r - s
    prod = 1
    for j in range(n):
        prod *= falling_factorial(k + j * d, s)
    return prod


def dobinski_bell(
    p: Params, n: int, precision: int = DEFAULT_PRECISION_BITS,
    max_terms: int = 200_000, min_terms: int = 0,
) -> SeriesValue:
    """B_{r,s}(n) as the infinite series

    (1/e) sum_{k=s}^{inf} (1/k!) prod_{j=1}^{n} (k + (j-1)(r-s))^falling(s),

    the generalization of Dobinski's B(n) = (1/e) sum k^n / k!.  Valid for
    r >= s; for r < s the parameters are swapped first (the Bell numbers
    are symmetric in r and s).  The returned interval brackets the exact
    integer B_{r,s}(n).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if p.r < p.s:
        p = p.swapped()
    r, s = p.r, p.s

    def term(k: int) -> Fraction:
        return Fraction(_falling_product(r, s, n, k), factorial(k))

    def ratio_bound(k: int) -> Fraction:
        return (1 + Fraction(s, k - s + 1)) ** n / (k + 1)

    partial, tail, used = _sum_positive_series(
        term, ratio_bound, s, _rel_tol(precision), max_terms, min_terms)
    iv = _Interval(partial, partial + tail) * _inv_e_bounds(precision)
    return _series_value(iv, used, precision)


def dobinski_gamma_form(
    p: Params, n: int, precision: int = DEFAULT_PRECISION_BITS,
    max_terms: int = 200_000, min_terms: int = 0,
) -> SeriesValue:
    """B_{r,s}(n) for r > s via the Gamma-ratio series

    ((r-s)^(s(n-1))/e) sum_{k=0}^{inf} (1/k!)
        prod_{j=1}^{s} Gamma(n + (k+j)/(r-s)) / Gamma(1 + (k+j)/(r-s)).

    Each Gamma ratio is reduced exactly to
    prod_{m=1}^{n-1} ((k+j)/(r-s) + m), so every term is rational.
    """
    if p.r <= p.s:
        raise ValueError("dobinski_gamma_form requires r > s")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    r, s = p.r, p.s
    d = r - s

    def term(k: int) -> Fraction:
        prod = Fraction(1, factorial(k))
        for j in range(1, s + 1):
            x = Fraction(k + j, d)
            for m in range(1, n):
                prod *= x + m
        return prod

    def ratio_bound(k: int) -> Fraction:
        return (1 + Fraction(1, k + 1 + d)) ** (s * (n - 1)) / (k + 1)

    partial, tail, used = _sum_positive_series(
        term, ratio_bound, 0, _rel_tol(precision), max_terms, min_terms)
    prefactor = Fraction(d) ** (s * (n - 1))
    iv = _Interval(partial, partial + tail) * prefactor * _inv_e_bounds(precision)
    return _series_value(iv, used, precision)


def dobinski_polynomial(
    p: Params, n: int, t: RationalLike, precision: int = DEFAULT_PRECISION_BITS,
    max_terms: int = 200_000, min_terms: int = 0,
) -> SeriesValue:
    """The polynomial B_{r,s}(n, t) as the weighted series

    e^(-t) sum_{k=s}^{inf} (t^k/k!) prod_{j=1}^{n} (k + (j-1)(r-s))^falling(s),

    which must bracket the exact rational bell_polynomial(p, n, t).
    Requires t > 0.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    t = Fraction(t)
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    if p.r < p.s:
        p = p.swapped()
    r, s = p.r, p.s

    def term(k: int) -> Fraction:
        return t**k * Fraction(_falling_product(r, s, n, k), factorial(k))

    def ratio_bound(k: int) -> Fraction:
        return t * (1 + Fraction(s, k - s + 1)) ** n / (k + 1)

    partial, tail, used = _sum_positive_series(
        term, ratio_bound, s, _rel_tol(precision), max_terms, min_terms)
    iv = _Interval(partial, partial + tail) * _exp_bounds(t, precision).reciprocal()
    return _series_value(iv, used, precision)


# ---------------------------------------------------------------------------
# Generic hypergeometric evaluation


@dataclass(frozen=True)
class HyperParams:
    """Parameters of pFq(upper; lower; argument) with rational data."""

    upper: tuple
    lower: tuple
    argument: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple(Fraction(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(Fraction(b) for b in self.lower))
        object.__setattr__(self, "argument", Fraction(self.argument))
        for b in self.lower:
            if b <= 0 and b.denominator == 1:
                raise ValueError(f"lower parameter {b} is a nonpositive integer")


def _is_terminating(uppers: tuple) -> bool:
    return any(a <= 0 and a.denominator == 1 for a in uppers)


def _hyp_ratio_bound(uppers, lowers_full, x_abs: Fraction, m: int) -> Fraction:
    """Upper bound for |t_{j+1}/t_j| valid for all j >= m, non-increasing in m.

    Valid once every a+m >= 0 and every b+m >= 1.  Upper and lower
    parameters are rank-paired; each pair contributes
    max(1, (a+m)/(b+m)), which dominates (a+j)/(b+j) for all j >= m,
    and unpaired lower parameters contribute 1/(b+m).
    """
    ups = sorted(uppers, reverse=True)
    downs = sorted(lowers_full, reverse=True)
    bound = x_abs
    for a, b in zip(ups, downs):
        ratio = Fraction(a + m) / (b + m)
        if ratio > 1:
            bound *= ratio
    for b in downs[len(ups):]:
        bound /= b + m
    return bound


def _hyp_enclosure(
    uppers: tuple, lowers: tuple, x: Fraction, bits: int, max_terms: int,
) -> Tuple[_Interval, int]:
    """Certified enclosure of pFq(uppers; lowers; x) with rational data."""
    uppers = tuple(Fraction(a) for a in uppers)
    lowers = tuple(Fraction(b) for b in lowers)
    x = Fraction(x)
    terminating = _is_terminating(uppers)
    if not terminating and x != 0:
        if len(uppers) == len(lowers) + 1:
            if abs(x) >= 1:
                raise ConvergenceError(f"pFq with p = q+1 needs |x| < 1, got {x}")
        elif len(uppers) > len(lowers) + 1:
            raise ConvergenceError("pFq with p > q+1 diverges for nonzero argument")
    lowers_full = lowers + (_ONE,)  # the m! denominator acts as an extra lower 1
    m_start = 0
    for a in uppers:
        m_start = max(m_start, ceil(-a))
    for b in lowers_full:
        m_start = max(m_start, ceil(1 - b))

    partial = _ZERO
    term = _ONE
    m = 0
    while True:
        partial += term
        if terminating or m >= m_start:
            rho = _hyp_ratio_bound(uppers, lowers_full, abs(x), m) if not terminating else _ZERO
            if terminating and term == 0:
                return _Interval.point(partial), m + 1
            if not terminating and rho < 1:
                tail = abs(term) * rho / (1 - rho)
                scale = max(abs(partial), _ONE)
                if tail <= _rel_tol(bits) * scale:
                    return _Interval(partial - tail, partial + tail), m + 1
        if m + 1 >= max_terms:
            raise TermBudgetError(f"pFq did not converge within {max_terms} terms")
        ratio = Fraction(x, m + 1)
        for a in uppers:
            ratio *= a + m
        for b in lowers:
            ratio /= b + m
        term *= ratio
        m += 1


def hypergeometric(
    h: HyperParams, precision: int = DEFAULT_PRECISION_BITS, max_terms: int = 100_000,
) -> SeriesValue:
    """Evaluate pFq at a rational argument with a certified tail bound."""
    iv, used = _hyp_enclosure(h.upper, h.lower, h.argument, precision, max_terms)
    return _series_value(iv, used, precision)


# ---------------------------------------------------------------------------
# Closed-form identities for the Bell sequences


def laguerre_value(degree: int, alpha: RationalLike, y: RationalLike) -> Fraction:
    """Associated Laguerre polynomial L^(alpha)_degree(y), exactly.

    Three-term recurrence:
    (m+1) L_{m+1} = (2m + 1 + alpha - y) L_m - (m + alpha) L_{m-1}.
    """
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    alpha = Fraction(alpha)
    y = Fraction(y)
    prev, cur = _ONE, 1 + alpha - y
    if degree == 0:
        return prev
    for m in range(1, degree):
        prev, cur = cur, ((2 * m + 1 + alpha - y) * cur - (m + alpha) * prev) / (m + 1)
    return cur


def laguerre_bell_check(n: int) -> bool:
    """B_{2,1}(n) = (n-1)! L^(1)_{n-1}(-1), checked in exact arithmetic."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    value = factorial(n - 1) * laguerre_value(n - 1, 1, -1)
    return value == bell_number(Params(2, 1), n)


def kummer_bell_value(r: int, n: int, precision: int = DEFAULT_PRECISION_BITS) -> SeriesValue:
    """Certified evaluation of (rn)!/(e r!) 1F1(rn+1; r+1; 1).

    This closed form equals B_{2r,r}(n); the returned interval must
    bracket that exact integer.
    """
    if r < 1 or n < 1:
        raise ValueError("r and n must be >= 1")
    iv, used = _hyp_enclosure((Fraction(r * n + 1),), (Fraction(r + 1),), _ONE,
                              precision, 100_000)
    iv = iv * Fraction(factorial(r * n), factorial(r)) * _inv_e_bounds(precision)
    return _series_value(iv, used, precision)


def kummer_bell_check(r: int, n: int, precision: int = DEFAULT_PRECISION_BITS) -> bool:
    """B_{2r,r}(n) = (rn)!/(e r!) 1F1(rn+1; r+1; 1), within the certified interval."""
    return kummer_bell_value(r, n, precision).brackets(bell_number(Params(2 * r, r), n))


def family_bell_check(p: int, r: int, n: int, precision: int = DEFAULT_PRECISION_BITS) -> bool:
    """The two-index family B_{p(r+1), pr}(n) as a prefactored rFr value:

    (1/e) [prod_{j=1}^{r} (p(n-1+j))! / (pj)!]
        * rFr(pn+1, pn+1+p, ..., pn+1+p(r-1); 1+p, 1+2p, ..., 1+rp; 1).

    The prefactor argument is p*(n-1+j); the variant p*(n-1)+j that is
    sometimes quoted coincides with it only for p = 1 and fails otherwise
    (already at B_{4,2}(1)).
    """
    if p < 1 or r < 1 or n < 1:
        raise ValueError("p, r and n must be >= 1")
    prefactor = _ONE
    for j in range(1, r + 1):
        prefactor *= Fraction(factorial(p * (n - 1 + j)), factorial(p * j))
    uppers = tuple(Fraction(p * n + 1 + p * i) for i in range(r))
    lowers = tuple(Fraction(1 + p * j) for j in range(1, r + 1))
    iv, _ = _hyp_enclosure(uppers, lowers, _ONE, precision, 100_000)
    iv = iv * prefactor * _inv_e_bounds(precision)
    return iv.contains(bell_number(Params(p * (r + 1), p * r), n))


def bell_r1_hypergeometric_check(r: int, n: int, precision: int = DEFAULT_PRECISION_BITS) -> bool:
    """B_{r,1}(n) as a combination of r-1 functions 1F_{r-1} at (r-1)^(1-r).

    Supported r: 2, 3, 4.  All Gamma prefactors are reduced to exact
    Pochhammer products: 2 Gamma(n+1/2)/sqrt(pi) = 2 (1/2)_n,
    3^(3/2) Gamma(2/3) Gamma(n+1/3)/pi = 6 (1/3)_n, and
    3 Gamma(n+2/3)/Gamma(2/3) = 3 (2/3)_n.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    bits = precision
    budget = 100_000
    if r == 2:
        iv, _ = _hyp_enclosure((Fraction(n + 1),), (Fraction(2),), _ONE, bits, budget)
        iv = iv * Fraction(factorial(n))
    elif r == 3:
        x = Fraction(1, 4)
        iv1, _ = _hyp_enclosure((Fraction(2 * n + 1, 2),),
                                (Fraction(1, 2), Fraction(3, 2)), x, bits, budget)
        iv2, _ = _hyp_enclosure((Fraction(n + 1),),
                                (Fraction(3, 2), Fraction(2)), x, bits, budget)
        combo = iv1 * (2 * rising_factorial(Fraction(1, 2), n)) \
            + iv2 * Fraction(factorial(n))
        iv = combo * Fraction(2) ** (n - 1)
    elif r == 4:
        x = Fraction(1, 27)
        iv1, _ = _hyp_enclosure((Fraction(3 * n + 1, 3),),
                                (Fraction(1, 3), Fraction(2, 3), Fraction(4, 3)), x, bits, budget)
        iv2, _ = _hyp_enclosure((Fraction(3 * n + 2, 3),),
                                (Fraction(2, 3), Fraction(4, 3), Fraction(5, 3)), x, bits, budget)
        iv3, _ = _hyp_enclosure((Fraction(n + 1),),
                                (Fraction(4, 3), Fraction(5, 3), Fraction(2)), x, bits, budget)
        combo = iv1 * (6 * rising_factorial(Fraction(1, 3), n)) \
            + iv2 * (3 * rising_factorial(Fraction(2, 3), n)) \
            + iv3 * Fraction(factorial(n))
        iv = combo * Fraction(3 ** (n - 1), 2)
    else:
        raise ValueError(f"combination formulas are implemented for r in 2..4, got {r}")
    iv = iv * _inv_e_bounds(bits)
    return iv.contains(bell_number(Params(r, 1), n))


# ---------------------------------------------------------------------------
# Exponential generating functions (exact, coefficient level)


def egf_bell_r1_check(r: int, order: int) -> bool:
    """Coefficients of the B_{r,1} exponential generating function.

    For r = 1 the egf is exp(e^x - 1); for r > 1 it is
    exp((1 - (r-1)x)^(-1/(r-1)) - 1).  True iff the coefficient of x^n
    equals B_{r,1}(n)/n! exactly for every n <= order.
    """
    if r < 1 or order < 1:
        raise ValueError("r and order must be >= 1")
    if r == 1:
        inner = series_exp_linear(1, order) - PowerSeries.one(order)
    else:
        inner = series_binomial_power(Fraction(-1, r - 1), Fraction(r - 1), order) \
            - PowerSeries.one(order)
    egf = series_exp(inner)
    p = Params(r, 1)
    return all(
        egf.coeff(n) * factorial(n) == bell_number(p, n)
        for n in range(order + 1)
    )


def egf_stirling_diag_check(r: int, k: int, order: int) -> bool:
    """Column egf of the diagonal triangle:

    sum_{n} S_{r,r}(n,k) x^n/n!
        = (-1)^k/k! sum_{q=r}^{k} (-1)^q C(k,q) (e^(x q^falling(r)) - 1).

    Coefficients below n = ceil(k/r) must vanish (the band is empty
    there); the rest must equal S_{r,r}(n,k)/n! exactly.
    """
    if r < 1 or k < r or order < 1:
        raise ValueError("need r >= 1, k >= r, order >= 1")
    acc = PowerSeries.zero(order)
    one = PowerSeries.one(order)
    for q in range(r, k + 1):
        growth = falling_factorial(q, r)
        acc += ((-1) ** q * binomial(k, q)) * (series_exp_linear(growth, order) - one)
    egf = acc * Fraction((-1) ** k, factorial(k))
    p = Params(r, r)
    return all(
        egf.coeff(n) * factorial(n) == stirling(p, n, k)
        for n in range(order + 1)
    )


def egf_stirling_r1_check(r: int, k: int, order: int) -> bool:
    """Column egf of the r >= 2, s = 1 triangle:

    sum_{n} S_{r,1}(n,k) x^n/n!
        = (1/k!) [ (1 - (r-1)x)^(-1/(r-1)) - 1 ]^k.

    The k-th power on the bracket is required for consistency with the
    exponential form of the full generating function (expanding
    exp(f(x) a+ a) columnwise produces f(x)^k / k!); without it only the
    k = 1 column reproduces the triangle.
    """
    if r < 2 or k < 1 or order < 1:
        raise ValueError("need r >= 2, k >= 1, order >= 1")
    base = series_binomial_power(Fraction(-1, r - 1), Fraction(r - 1), order) \
        - PowerSeries.one(order)
    egf = (base ** k) * Fraction(1, factorial(k))
    p = Params(r, 1)
    return all(
        egf.coeff(n) * factorial(n) == stirling(p, n, k)
        for n in range(order + 1)
    )


def bell_diag_egf_coefficient_check(r: int, n: int) -> bool:
    """Termwise coefficient identity behind the diagonal-word generating
    function: extracting the lambda^n coefficient of

        1 + sum_{k=r}^inf (-1)^k/k! sum_{q=r}^k (-1)^q C(k,q) (e^(lambda q^falling(r)) - 1)

    terminates at k = n r (the band is empty beyond) and must give
    B_{r,r}(n)/n!.  This is checked exactly; the identity is only used at
    the coefficient level because for r >= 2 the coefficients grow too
    fast for the sum to define a function of real lambda > 0, so no
    numeric evaluation of it is offered.
    """
    if r < 1 or n < 1:
        raise ValueError("r and n must be >= 1")
    coeff = _ZERO
    for k in range(r, n * r + 1):
        inner = sum(
            (-1) ** q * binomial(k, q) * falling_factorial(q, r) ** n
            for q in range(r, k + 1)
        )
        coeff += Fraction((-1) ** k * inner, factorial(k))
    return coeff == bell_number(Params(r, r), n)


# ---------------------------------------------------------------------------
# Hypergeometric generating functions (hgf)


@dataclass(frozen=True)
class HgfCheckResult:
    """Outcome of comparing the two routes to the degree-N hgf truncation."""

    ok: bool
    lhs: SeriesValue
    rhs_exact: Fraction
    difference: BigFloat
    t_power: int

    def __bool__(self) -> bool:
        return self.ok


def _hgf_family(r: int, s: int, lam: Fraction):
    """Dispatch table for the supported hgf families.

    Returns (t_power, radius, pref_shift, inner_term_ratio, tail_bound)
    where the generating function is evaluated as
    (1/e) sum_k 1/(k+pref_shift)! * sum_{m>=1} u_m(k) plus the constant 1.
    """
    if (r, s) == (3, 2):
        t_power = 1
        radius = _ONE
        pref_shift = 2

        def term_ratio(k: int, m: int) -> Fraction:
            # u_m / u_{m-1} for 2F1(k+2, k+1; 1; lam)
            return Fraction((k + m + 1) * (k + m), m * m) * lam

        def tail_bound(u: int, K: int) -> Fraction:
            # sum_{k>K} 2F1(k+2,k+1;1;lam)/(k+2)! via
            # C(k+m+1,m) C(k+m,m) <= (1+u)^(2k+1) (1+1/u)^(2m)
            q = (1 + Fraction(1, u)) ** 2 * lam
            v = (1 + u) ** 2
            if q >= 1 or Fraction(v, K + 4) > Fraction(1, 2):
                return None
            return Fraction(2 * (1 + u) * v ** (K + 1), factorial(K + 3)) / (1 - q)

        return t_power, radius, pref_shift, term_ratio, tail_bound

    if s >= 1 and r == 2 * s:
        rr = s
        t_power = rr - 1
        radius = Fraction(1, rr**rr)
        pref_shift = rr
        arg = Fraction(rr**rr) * lam

        def term_ratio(k: int, m: int) -> Fraction:
            # u_m / u_{m-1} for rFr-1((k+1)/rr, ..., (k+rr)/rr; 1, ..., 1; rr^rr lam)
            ratio = Fraction(arg, m**rr)
            for i in range(1, rr + 1):
                ratio *= Fraction(k + i, rr) + (m - 1)
            return ratio

        def tail_bound(u: int, K: int) -> Fraction:
            # (k+1)_{rr m}/(m!)^rr <= (1+u)^k (1+1/u)^(rr m) rr^(rr m)
            q = (1 + Fraction(1, u)) ** rr * Fraction(rr**rr) * lam
            if q >= 1 or Fraction(1 + u, K + 2 + rr) > Fraction(1, 2):
                return None
            return Fraction(2 * (1 + u) ** (K + 1), factorial(K + 1 + rr)) / (1 - q)

        return t_power, radius, pref_shift, term_ratio, tail_bound

    raise ValueError(f"no hypergeometric generating function family for (r, s) = ({r}, {s})")


def hgf_check(
    r: int, s: int, lam: RationalLike, order: int,
    precision: int = DEFAULT_PRECISION_BITS, max_outer: int = 10_000,
) -> HgfCheckResult:
    """Compare the two routes to the hypergeometric generating function

        G_{r,s}(lambda) = sum_n [B_{r,s}(n)/(n!)^t] lambda^n / n!

    truncated at degree ``order``: once through the k-indexed sum of
    hypergeometric functions (inner series truncated at m = order, outer
    k-sum carried to a certified tail below the target), and once from
    the exact Bell numbers.  Supported families: (3, 2) with t = 1 using
    2F1(k+2, k+1; 1; lambda)/(k+2)!, and (2r', r') with t = r'-1 using
    rF(r'-1)((k+1)/r', ..., (k+r')/r'; 1, ..., 1; r'^r' lambda)/(k+r')!.

    The k-sums reproduce the coefficients for n >= 1 only; the constant
    term is the convention B(0) = 1 and is added exactly on both sides.
    True iff the exact polynomial value lies inside the certified
    enclosure of the k-summed route.
    """
    lam = Fraction(lam)
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    t_power, radius, pref_shift, term_ratio, tail_bound = _hgf_family(r, s, lam)
    if lam >= radius:
        raise ConvergenceError(f"lambda={lam} is outside the convergence disk |lambda| < {radius}")

    # smallest power-of-two u whose geometric m-bound q = (1+1/u)^s lam/radius
    # contracts; q decreases to lam/radius < 1 as u grows, so this terminates
    goal = (1 + lam / radius) / 2
    u = 1
    while (1 + Fraction(1, u)) ** s * lam / radius > goal:
        u *= 2
        if u > 2**24:
            raise ConvergenceError("cannot certify tails this close to the radius")

    target = Fraction(1, 2 ** (precision - 16))
    acc = _ZERO
    k = 0
    tail = None
    while True:
        inner = _ZERO
        u_m = _ONE
        for m in range(1, order + 1):
            u_m *= term_ratio(k, m)
            inner += u_m
        acc += Fraction(1, factorial(k + pref_shift)) * inner
        tail = tail_bound(u, k)
        if tail is not None and tail <= target:
            break
        k += 1
        if k >= max_outer:
            raise TermBudgetError(f"outer sum needed more than {max_outer} terms")

    iv = _Interval(acc, acc + tail) * _inv_e_bounds(precision) + 1
    rhs = _ONE + sum(
        (Fraction(bell_number(Params(r, s), n), factorial(n) ** (t_power + 1)) * lam**n
         for n in range(1, order + 1)),
        _ZERO,
    )
    lhs = _series_value(iv, k + 1, precision)
    diff = abs(iv.midpoint - rhs)
    return HgfCheckResult(
        ok=iv.contains(rhs),
        lhs=lhs,
        rhs_exact=rhs,
        difference=BigFloat.from_fraction(diff, precision, "c"),
        t_power=t_power,
    )
