"""Independent brute-force oracles used to freeze expected test values.

Nothing in here may import the computation routes it is used to check:
set partitions are enumerated literally, binomials come from a Pascal
triangle, and operator words act on polynomials through the exact
representation a = d/dx, a+ = x (which satisfies [a, a+] = 1 on integer
polynomials, no floating point involved).
"""

from __future__ import annotations

from math import comb, factorial


def set_partitions(items):
    """Yield every partition of ``items`` as a list of blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]
        yield [[first]] + partition


def stirling_brute(n: int, k: int) -> int:
    """Number of partitions of an n-set into exactly k blocks."""
    return sum(1 for p in set_partitions(range(n)) if len(p) == k)


def bell_brute(n: int) -> int:
    return sum(1 for _ in set_partitions(range(n)))


def pascal_binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[k]


def lah_brute(n: int, k: int) -> int:
    return factorial(n) // factorial(k) * pascal_binomial(n - 1, k - 1)


# --- exact polynomial representation of the boson algebra -----------------
# A polynomial is a dict degree -> integer coefficient.  The annihilator
# acts as d/dx and the creator as multiplication by x; their commutator is
# the identity, so applying a word to x^m reproduces the operator exactly.


def poly_apply_word(word: str, start_degree: int) -> dict:
    poly = {start_degree: 1}
    for letter in reversed(word):
        if letter == "A":
            poly = {d + 1: c for d, c in poly.items()}
        elif letter == "a":
            poly = {d - 1: c * d for d, c in poly.items() if d > 0}
        else:
            raise ValueError(f"bad letter {letter!r}")
    return {d: c for d, c in poly.items() if c}


def poly_apply_normal_form(terms: dict, start_degree: int) -> dict:
    """Apply sum c_{ij} x^i (d/dx)^j to x^m, exactly."""
    out: dict = {}
    for (i, j), c in terms.items():
        m = start_degree
        if j > m:
            continue
        coeff = c
        for t in range(j):
            coeff *= m - t
        d = m - j + i
        out[d] = out.get(d, 0) + coeff
    return {d: c for d, c in out.items() if c}


def normal_form_product(t1: dict, t2: dict) -> dict:
    """Multiply two normal forms through the reordering identity

    a^j (a+)^k = sum_m C(j,m) C(k,m) m! (a+)^(k-m) a^(j-m),

    an independent closed-form route that never rewrites words.
    """
    out: dict = {}
    for (i1, j1), c1 in t1.items():
        for (i2, j2), c2 in t2.items():
            for m in range(min(j1, i2) + 1):
                coeff = c1 * c2 * comb(j1, m) * comb(i2, m) * factorial(m)
                key = (i1 + i2 - m, j1 - m + j2)
                out[key] = out.get(key, 0) + coeff
    return {k: v for k, v in out.items() if v}
