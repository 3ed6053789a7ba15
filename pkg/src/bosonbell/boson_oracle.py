"""Ground-truth normal ordering by literal rewriting of boson words.

A word is a string over the alphabet {"a", "A"}, where "a" is the
annihilation operator and "A" the creation operator, with [a, A] = 1.
Normal ordering rewrites every adjacent pair "aA" into "Aa" plus the word
with the pair deleted, until every word has all creators on the left.
The engine keeps a multiset of weighted words and merges equal words
eagerly, processing them in order of decreasing inversion count, which
both guarantees termination and keeps the live set small.

This module is deliberately independent of the closed-form routes in
:mod:`bosonbell.stirling_bell`; agreement between the two is the core
correctness argument of the package.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .exact_core import RationalLike
from .stirling_bell import Params

ANNIHILATE = "a"
CREATE = "A"

DEFAULT_WORD_CAP = 64


class WordLengthError(ValueError):
    """Input word longer than the configured rewriting cap."""


class OracleStructureError(RuntimeError):
    """A normal form violated the structure the expansion guarantees."""


@dataclass(frozen=True)
class NormalForm:
    """sum_{(i,j)} c_{ij} (a+)^i a^j with integer coefficients, no zeros stored."""

    terms: Dict[Tuple[int, int], int]

    def sorted_terms(self):
        return sorted(self.terms.items())

    def excess(self) -> int:
        """The common value of i - j across terms (creator surplus)."""
        offsets = {i - j for (i, j) in self.terms}
        if len(offsets) != 1:
            raise OracleStructureError(f"mixed creator surplus {sorted(offsets)}")
        return offsets.pop()


@dataclass(frozen=True)
class AntiNormalForm:
    """sum_{(j,i)} c (a)^j (a+)^i with all annihilators on the left."""

    terms: Dict[Tuple[int, int], int]

    def sorted_terms(self):
        return sorted(self.terms.items())


def _validate_word(word: str, max_len: int) -> str:
    if not isinstance(word, str):
        word = "".join(word)
    bad = set(word) - {ANNIHILATE, CREATE}
    if bad:
        raise ValueError(f"word may only contain 'a' and 'A', found {sorted(bad)}")
    if len(word) > max_len:
        raise WordLengthError(f"word of length {len(word)} exceeds cap {max_len}")
    return word


def _inversions(word: str) -> int:
    """Number of (annihilator, creator) pairs in the wrong order."""
    inv = 0
    seen_a = 0
    for ch in word:
        if ch == ANNIHILATE:
            seen_a += 1
        else:
            inv += seen_a
    return inv


def _reducible_positions(word: str):
    return [i for i in range(len(word) - 1) if word[i] == ANNIHILATE and word[i + 1] == CREATE]


def normalize(
    word: str,
    strategy: str = "leftmost",
    rng: random.Random | None = None,
    max_len: int = DEFAULT_WORD_CAP,
) -> NormalForm:
    """Normal-order a boson word by exhaustive rewriting of aA pairs.

    Each rewrite replaces one adjacent "aA" with "Aa" (same weight) plus
    the word with the pair removed (same weight).  Every rewrite strictly
    lowers the inversion count, so processing words from the highest
    count downward visits each distinct word once.

    ``strategy`` picks which reducible pair is rewritten: "leftmost",
    "rightmost", or "random" (requires ``rng``).  The result is the same
    for every strategy; the choice exists so tests can confirm that.
    """
    word = _validate_word(word, max_len)
    if strategy == "random" and rng is None:
        raise ValueError("strategy='random' needs an rng")
    if strategy not in ("leftmost", "rightmost", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")

    buckets: Dict[int, Dict[str, int]] = {}

    def push(w: str, c: int) -> None:
        level = buckets.setdefault(_inversions(w), {})
        level[w] = level.get(w, 0) + c

    push(word, 1)
    terms: Dict[Tuple[int, int], int] = {}
    while buckets:
        inv = max(buckets)
        for w, c in buckets.pop(inv).items():
            if c == 0:
                continue
            if inv == 0:
                key = (w.count(CREATE), w.count(ANNIHILATE))
                total = terms.get(key, 0) + c
                if total:
                    terms[key] = total
                else:
                    terms.pop(key, None)
                continue
            positions = _reducible_positions(w)
            if strategy == "leftmost":
                i = positions[0]
            elif strategy == "rightmost":
                i = positions[-1]
            else:
                i = rng.choice(positions)
            push(w[:i] + CREATE + ANNIHILATE + w[i + 2 :], c)
            push(w[:i] + w[i + 2 :], c)
    return NormalForm(terms=terms)


def antinormalize(word: str, max_len: int = DEFAULT_WORD_CAP) -> AntiNormalForm:
    """Anti-normal order: all annihilators to the left.

    Mirror rewriting: "Aa" becomes "aA" minus the word with the pair
    removed (from Aa = aA - 1), so coefficients may be negative.
    """
    word = _validate_word(word, max_len)

    def anti_inversions(w: str) -> int:
        inv = 0
        seen_creators = 0
        for ch in w:
            if ch == CREATE:
                seen_creators += 1
            else:
                inv += seen_creators
        return inv

    buckets: Dict[int, Dict[str, int]] = {}

    def push(w: str, c: int) -> None:
        level = buckets.setdefault(anti_inversions(w), {})
        level[w] = level.get(w, 0) + c

    push(word, 1)
    terms: Dict[Tuple[int, int], int] = {}
    while buckets:
        inv = max(buckets)
        for w, c in buckets.pop(inv).items():
            if c == 0:
                continue
            if inv == 0:
                key = (w.count(ANNIHILATE), w.count(CREATE))
                total = terms.get(key, 0) + c
                if total:
                    terms[key] = total
                else:
                    terms.pop(key, None)
                continue
            i = next(
                i for i in range(len(w) - 1)
                if w[i] == CREATE and w[i + 1] == ANNIHILATE
            )
            push(w[:i] + ANNIHILATE + CREATE + w[i + 2 :], c)
            push(w[:i] + w[i + 2 :], -c)
    return AntiNormalForm(terms=terms)


def power_word(p: Params, n: int, max_len: int = DEFAULT_WORD_CAP) -> NormalForm:
    """Normal form of [(a+)^r a^s]^n, by rewriting the concatenated word."""
    if n < 1:
        raise ValueError(f"power_word requires n >= 1, got n={n}")
    return normalize((CREATE * p.r + ANNIHILATE * p.s) * n, max_len=max_len)


def extract_stirling_row(p: Params, n: int, max_len: int = DEFAULT_WORD_CAP) -> Dict[int, int]:
    """Read row n of S_{r,s} off the normal form of [(a+)^r a^s]^n.

    For r >= s every term must look like (a+)^(k + n(r-s)) a^k with
    s <= k <= n s; for r <= s like (a+)^k a^(k + n(s-r)) with
    r <= k <= n r.  Any other shape means the oracle itself is broken
    and raises :class:`OracleStructureError`.
    """
    nf = power_word(p, n, max_len=max_len)
    d = p.r - p.s
    row: Dict[int, int] = {}
    for (i, j), c in nf.sorted_terms():
        if d >= 0:
            k, expected = j, j + n * d
            if i != expected:
                raise OracleStructureError(f"term (a+)^{i} a^{j} breaks the offset n(r-s)={n*d}")
        else:
            k, expected = i, i - n * d
            if j != expected:
                raise OracleStructureError(f"term (a+)^{i} a^{j} breaks the offset n(s-r)={-n*d}")
        lo = min(p.r, p.s)
        if not lo <= k <= n * lo:
            raise OracleStructureError(f"index k={k} outside band [{lo}, {n*lo}]")
        row[k] = c
    return row


def extract_anti_stirling_row(p: Params, n: int, max_len: int = DEFAULT_WORD_CAP) -> Dict[int, int]:
    """Row n of the anti-Stirling numbers, from the word [a^s (a+)^r]^n.

    Requires r >= s.  The normal form must factor as
    (a+)^(n(r-s)) sum_{k=0}^{ns} tilde S(n,k) (a+)^k a^k; the returned map
    is k -> tilde S(n,k).
    """
    if p.r < p.s:
        raise ValueError("extract_anti_stirling_row requires r >= s")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    nf = normalize((ANNIHILATE * p.s + CREATE * p.r) * n, max_len=max_len)
    d = p.r - p.s
    row: Dict[int, int] = {}
    for (i, j), c in nf.sorted_terms():
        if i != j + n * d:
            raise OracleStructureError(f"term (a+)^{i} a^{j} breaks the offset n(r-s)={n*d}")
        if not 0 <= j <= n * p.s:
            raise OracleStructureError(f"index k={j} outside band [0, {n*p.s}]")
        row[j] = c
    return row


def coherent_expectation_exact(nf: NormalForm, z: RationalLike) -> Fraction:
    """<z| nf |z> for real rational z, using <z|(a+)^i a^j|z> = z^(i+j)."""
    z = Fraction(z)
    return sum((c * z ** (i + j) for (i, j), c in nf.terms.items()), Fraction(0))
