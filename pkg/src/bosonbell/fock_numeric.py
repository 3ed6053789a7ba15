"""Truncated Fock-space verification of coherent-state expectations.

The annihilation and creation operators act on the number basis
|0>, ..., |D-1> as dense matrices with arbitrary-precision entries
(a[n-1, n] = sqrt(n), creator = transpose).  Expectation values
<z| [(a+)^r a^s]^n |z> are formed by repeated matrix-vector products on
a truncated coherent vector and compared against the exact values
z^(n|r-s|) B_{r,s}(n, z^2) from the triangle.

Only real z >= 0 is supported.  For r = s the expectation depends on z
only through z^2 (the phases cancel pairwise), so unit-modulus statements
are exercised at z = 1; for r != s a complex phase would contribute a
factor conj(z)^(n(r-s)) that this module does not model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import mpmath
from mpmath import mp

from .exact_core import DEFAULT_PRECISION_BITS, BigFloat, RationalLike
from .stirling_bell import Params, bell_number

_GUARD_BITS = 64


class FockTruncationError(RuntimeError):
    """Truncation dimension too small for the requested accuracy."""

    def __init__(self, message: str, suggested_dim: int):
        super().__init__(message)
        self.suggested_dim = suggested_dim


@dataclass(frozen=True)
class FockOperator:
    dim: int
    precision_bits: int
    rows: tuple  # tuple of row tuples of mpf entries

    def entry(self, i: int, j: int):
        return self.rows[i][j]


@dataclass(frozen=True)
class CoherentVector:
    z: mpmath.mpf
    dim: int
    precision_bits: int
    amps: tuple
    tail_mass: mpmath.mpf


def _to_mpf(x) -> mpmath.mpf:
    if isinstance(x, BigFloat):
        return x.value
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def build_ops(dim: int, precision: int = DEFAULT_PRECISION_BITS) -> Tuple[FockOperator, FockOperator]:
    """Dense truncated (annihilator, creator) pair on dimension ``dim``.

    On the truncated space [a, a+] equals the identity except for the
    corner entry (D-1, D-1), which is 1 - D.
    """
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    with mp.workprec(precision):
        zero = mp.mpf(0)
        a_rows = [[zero] * dim for _ in range(dim)]
        for n in range(1, dim):
            a_rows[n - 1][n] = mp.sqrt(n)
        adag_rows = [[a_rows[j][i] for j in range(dim)] for i in range(dim)]
    return (
        FockOperator(dim=dim, precision_bits=precision,
                     rows=tuple(tuple(r) for r in a_rows)),
        FockOperator(dim=dim, precision_bits=precision,
                     rows=tuple(tuple(r) for r in adag_rows)),
    )


def apply_operator(op: FockOperator, vec: List[mpmath.mpf]) -> List[mpmath.mpf]:
    """Dense matrix-vector product; zero entries are skipped."""
    if len(vec) != op.dim:
        raise ValueError(f"vector length {len(vec)} does not match dim {op.dim}")
    out = []
    for row in op.rows:
        acc = mp.mpf(0)
        for entry, x in zip(row, vec):
            if entry:
                acc += entry * x
        out.append(acc)
    return out


def coherent_state(
    z: RationalLike, dim: int, precision: int = DEFAULT_PRECISION_BITS,
    tail_threshold=None,
) -> CoherentVector:
    """Truncated coherent vector with amplitudes e^(-z^2/2) z^n / sqrt(n!).

    ``tail_mass`` is the probability weight lost to truncation,
    1 - sum_n amps[n]^2; if it exceeds ``tail_threshold`` (default
    2^(-precision/2)) the dimension is rejected as too small.
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    with mp.workprec(precision + _GUARD_BITS):
        zf = _to_mpf(z)
        if zf < 0:
            raise ValueError("only real z >= 0 is supported")
        amps = [mp.exp(-(zf**2) / 2)]
        for n in range(1, dim):
            amps.append(amps[-1] * zf / mp.sqrt(n))
        norm2 = mp.fsum(a * a for a in amps)
        tail = max(mp.mpf(0), 1 - norm2)
        if tail_threshold is None:
            tail_threshold = mp.mpf(2) ** (-(precision // 2))
        if tail > tail_threshold:
            raise FockTruncationError(
                f"coherent tail mass {mp.nstr(tail, 8)} above threshold at dim={dim}",
                suggested_dim=2 * dim,
            )
    return CoherentVector(z=zf, dim=dim, precision_bits=precision,
                          amps=tuple(amps), tail_mass=tail)


def _expectation_once(p: Params, n: int, z, dim: int, precision: int) -> mpmath.mpf:
    with mp.workprec(precision + _GUARD_BITS):
        a_op, adag_op = build_ops(dim, precision + _GUARD_BITS)
        ket = coherent_state(z, dim, precision)
        vec = list(ket.amps)
        for _ in range(n):
            for _ in range(p.s):
                vec = apply_operator(a_op, vec)
            for _ in range(p.r):
                vec = apply_operator(adag_op, vec)
        return mp.fsum(b * x for b, x in zip(ket.amps, vec))


def expectation_power(
    p: Params, n: int, z: RationalLike, dim: int,
    precision: int = DEFAULT_PRECISION_BITS,
    check_stability: bool = True, stability_step: int = 16,
    stability_rtol=None,
) -> BigFloat:
    """<z| [(a+)^r a^s]^n |z> on the truncated space.

    The word is applied factor by factor as matrix-vector products, never
    as an n-th power matrix.  With ``check_stability`` the value is
    recomputed at dim + stability_step and the two must agree to
    ``stability_rtol`` (default 2^(-precision/2)), otherwise the
    truncation is reported as too small.  The exact target is
    z^(n|r-s|) B_{r,s}(n, z^2).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if dim < n * max(p.r, p.s) + 2:
        raise FockTruncationError(
            f"dim={dim} cannot hold {n} applications of a word of height {max(p.r, p.s)}",
            suggested_dim=n * max(p.r, p.s) + 18,
        )
    value = _expectation_once(p, n, z, dim, precision)
    if check_stability:
        wider = _expectation_once(p, n, z, dim + stability_step, precision)
        with mp.workprec(precision + _GUARD_BITS):
            if stability_rtol is None:
                stability_rtol = mp.mpf(2) ** (-(precision // 2))
            scale = max(abs(value), abs(wider), mp.mpf(1))
            if abs(value - wider) > stability_rtol * scale:
                raise FockTruncationError(
                    f"value moved by {mp.nstr(abs(value - wider), 8)} when widening "
                    f"dim {dim} -> {dim + stability_step}",
                    suggested_dim=dim + 4 * stability_step,
                )
        value = wider
    with mp.workprec(precision):
        return BigFloat(value=+value, precision_bits=precision)


def katriel_check(
    n: int, dim: int = 128, precision: int = DEFAULT_PRECISION_BITS,
    rel_tol: float = 1e-30,
) -> bool:
    """<z|(a+ a)^n|z> at z = 1 against the exact Bell number B_{1,1}(n)."""
    value = expectation_power(Params(1, 1), n, 1, dim, precision)
    exact = bell_number(Params(1, 1), n)
    with mp.workprec(precision + _GUARD_BITS):
        return abs(value.value - exact) <= mp.mpf(rel_tol) * exact
