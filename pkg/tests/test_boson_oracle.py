import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bosonbell.boson_oracle import (
    OracleStructureError,
    WordLengthError,
    antinormalize,
    coherent_expectation_exact,
    extract_anti_stirling_row,
    extract_stirling_row,
    normalize,
    power_word,
)
from bosonbell.stirling_bell import Params, bell_polynomial, stirling

from _oracles import (
    lah_brute,
    normal_form_product,
    poly_apply_normal_form,
    poly_apply_word,
    stirling_brute,
)

words = st.text(alphabet="aA", min_size=0, max_size=10)


class TestNormalize:
    def test_commutation_rule_itself(self):
        assert normalize("aA").terms == {(1, 1): 1, (0, 0): 1}

    def test_number_operator_squared(self):
        assert normalize("AaAa").terms == {(1, 1): 1, (2, 2): 1}

    def test_already_normal(self):
        assert normalize("AAaa").terms == {(2, 2): 1}

    def test_two_rewrites(self):
        # a A A = 2 A + A A a
        assert normalize("aAA").terms == {(1, 0): 2, (2, 1): 1}

    def test_empty_word(self):
        assert normalize("").terms == {(0, 0): 1}

    def test_alphabet_validation(self):
        with pytest.raises(ValueError):
            normalize("abA")

    def test_word_cap(self):
        with pytest.raises(WordLengthError):
            normalize("aA" * 40)
        assert normalize("aA" * 40, max_len=128).terms[(40, 40)] == 1

    @given(words)
    def test_offset_law(self, word):
        nf = normalize(word)
        surplus = word.count("A") - word.count("a")
        assert all(i - j == surplus for (i, j) in nf.terms)

    @settings(max_examples=60)
    @given(words, st.integers(min_value=0, max_value=2**30))
    def test_confluence_under_rewrite_strategies(self, word, seed):
        left = normalize(word, strategy="leftmost")
        right = normalize(word, strategy="rightmost")
        rand = normalize(word, strategy="random", rng=random.Random(seed))
        assert left == right == rand

    @settings(max_examples=60)
    @given(words, st.integers(min_value=0, max_value=8))
    def test_faithful_on_polynomials(self, word, degree):
        """The normal form acts on x^m exactly like the original word
        under a = d/dx, a+ = x."""
        nf = normalize(word)
        assert poly_apply_word(word, degree) == poly_apply_normal_form(nf.terms, degree)


class TestAntinormalize:
    def test_single_pair(self):
        # A a = a A - 1
        assert antinormalize("Aa").terms == {(1, 1): 1, (0, 0): -1}

    def test_already_antinormal(self):
        assert antinormalize("aaA").terms == {(2, 1): 1}

    @settings(max_examples=40)
    @given(words, st.integers(min_value=0, max_value=6))
    def test_consistent_with_normal_form(self, word, degree):
        """Re-expanding the anti-normal form through the polynomial
        representation reproduces the original word's action."""
        anf = antinormalize(word)
        out: dict = {}
        for (j, i), c in anf.terms.items():
            # x^i after differentiating: apply (a+)^i a^j is NOT this term's
            # meaning; here terms mean a^j (a+)^i, i.e. differentiate last.
            part = poly_apply_word("a" * j + "A" * i, degree)
            for d, v in part.items():
                out[d] = out.get(d, 0) + c * v
        out = {d: v for d, v in out.items() if v}
        assert out == poly_apply_word(word, degree)


class TestPowerWord:
    def test_classical_row(self):
        assert power_word(Params(1, 1), 3).terms == {(1, 1): 1, (2, 2): 3, (3, 3): 1}

    def test_diagonal_row(self):
        assert power_word(Params(2, 2), 2).terms == {(2, 2): 2, (3, 3): 4, (4, 4): 1}

    def test_single_copy_already_normal(self):
        assert power_word(Params(2, 1), 1).terms == {(2, 1): 1}


class TestExtractRows:
    def test_lah_row(self):
        assert extract_stirling_row(Params(2, 1), 2) == {1: 2, 2: 1}

    def test_symmetric_orders_agree(self):
        assert extract_stirling_row(Params(1, 2), 2) == {1: 2, 2: 1}

    def test_trivial_row(self):
        assert extract_stirling_row(Params(1, 1), 1) == {1: 1}

    def test_rows_match_closed_forms(self):
        for r in range(1, 4):
            for s in range(1, 4):
                p = Params(r, s)
                for n in range(1, 5):
                    row = extract_stirling_row(p, n)
                    assert row == {k: stirling(p, n, k) for k in p.band(n)}

    @pytest.mark.parametrize("r,s,n", [(4, 2, 3), (4, 1, 4), (2, 4, 3), (4, 4, 2)])
    def test_rows_beyond_the_small_grid(self, r, s, n):
        p = Params(r, s)
        assert extract_stirling_row(p, n) == {k: stirling(p, n, k) for k in p.band(n)}

    def test_conjugation_duality(self):
        for r in range(1, 4):
            for s in range(1, 4):
                for n in range(1, 4):
                    assert (extract_stirling_row(Params(r, s), n)
                            == extract_stirling_row(Params(s, r), n))

    def test_classical_rows_count_partitions(self):
        for n in range(1, 6):
            row = extract_stirling_row(Params(1, 1), n)
            assert row == {k: stirling_brute(n, k) for k in range(1, n + 1)}


class TestAntiRows:
    def test_frozen_examples(self):
        assert extract_anti_stirling_row(Params(1, 1), 1) == {0: 1, 1: 1}
        assert extract_anti_stirling_row(Params(1, 1), 2) == {0: 1, 1: 3, 2: 1}
        assert extract_anti_stirling_row(Params(2, 1), 1) == {0: 2, 1: 1}

    def test_shift_identity_against_closed_form(self):
        for r in range(1, 4):
            for s in range(1, r + 1):
                p = Params(r, s)
                for n in range(1, 4):
                    row = extract_anti_stirling_row(p, n)
                    assert row == {k: stirling(p, n + 1, k + s)
                                   for k in range(0, n * s + 1)}

    def test_requires_r_at_least_s(self):
        with pytest.raises(ValueError):
            extract_anti_stirling_row(Params(1, 2), 1)


class TestCoherentExpectation:
    def test_number_operator(self):
        assert coherent_expectation_exact(power_word(Params(1, 1), 1), 1) == 1

    def test_diagonal_bell_value(self):
        assert coherent_expectation_exact(power_word(Params(2, 2), 2), 1) == 7

    def test_polynomial_value_at_half(self):
        nf = power_word(Params(1, 1), 2)
        assert coherent_expectation_exact(nf, Fraction(1, 2)) == Fraction(5, 16)

    def test_matches_bell_polynomial_for_diagonal(self):
        for r in (1, 2):
            p = Params(r, r)
            for n in (1, 2, 3):
                nf = power_word(p, n)
                for z in (Fraction(1, 2), Fraction(2), Fraction(1)):
                    assert (coherent_expectation_exact(nf, z)
                            == bell_polynomial(p, n, z * z))


class TestAgainstProductFormula:
    """Third route: the closed-form reordering identity, no rewriting."""

    @settings(max_examples=50)
    @given(st.text(alphabet="aA", min_size=0, max_size=6),
           st.text(alphabet="aA", min_size=0, max_size=6))
    def test_rewriting_respects_the_product(self, w1, w2):
        joined = normalize(w1 + w2).terms
        assembled = normal_form_product(normalize(w1).terms, normalize(w2).terms)
        assert joined == assembled

    def test_power_words_from_repeated_products(self):
        for r in range(1, 4):
            for s in range(1, 4):
                factor = {(r, s): 1}
                acc = dict(factor)
                for n in range(2, 5):
                    acc = normal_form_product(acc, factor)
                    assert acc == power_word(Params(r, s), n).terms, (r, s, n)

    def test_longer_words_beyond_the_hypothesis_cap(self):
        rng = random.Random(7)
        for _ in range(10):
            word = "".join(rng.choice("aA") for _ in range(rng.randint(12, 16)))
            cut = rng.randint(0, len(word))
            joined = normalize(word).terms
            assembled = normal_form_product(
                normalize(word[:cut]).terms, normalize(word[cut:]).terms)
            assert joined == assembled


def test_structure_error_type_exists():
    assert issubclass(OracleStructureError, RuntimeError)
