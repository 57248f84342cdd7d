from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from oracles import apery_direct, bernoulli, frac_mod, harmonic, primes_upto, vp
from wolstenholme.catalog.checks_harmonic import epsilon
from wolstenholme.combinatorics import (HarmonicSpec, alkan_sum_mod, apery_number, binomial_exact,
                                        binomial_mod, binomial_mod_composite, binomial_sum_u,
                                        central_shifted_binomial_mod, harmonic_exact, harmonic_sum_mod,
                                        kummer_valuation, lucas_binomial_mod_p, modified_binomial,
                                        modified_binomial_exact, multiple_harmonic_exact,
                                        multiple_harmonic_mod, power_binomial_sum,
                                        reciprocal_binomial_sum, putnam_sum)
from wolstenholme.errors import BadFactorization, NonInvertibleDenominator

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


# exact and modular binomials

def test_binomial_exact_examples():
    assert binomial_exact(17, 0) == 1
    assert binomial_exact(9, 4) == 9 * 8 * 7 * 6 // 24 == 126
    assert binomial_exact(5, 7) == 0
    assert binomial_exact(5, -1) == 0


@pytest.mark.parametrize("n, m, mod, expected", [(9, 4, 125, 1), (5, 2, 9, 1), (13, 6, 343, 1)])
def test_binomial_mod_examples(n, m, mod, expected):
    assert math.comb(n, m) % mod == expected
    assert binomial_mod(n, m, mod).value == expected


@given(st.integers(0, 2000), st.integers(-3, 2003), st.integers(2, 10 ** 12))
def test_binomial_mod_matches_exact(n, m, mod):
    expected = math.comb(n, m) % mod if 0 <= m <= n else 0
    assert binomial_exact(n, m) == (math.comb(n, m) if 0 <= m <= n else 0)
    assert binomial_mod(n, m, mod).value == expected


# Lucas and Kummer

def test_lucas_examples():
    assert lucas_binomial_mod_p(10, 5, 3).value == 0 == 252 % 3
    assert lucas_binomial_mod_p(123, 0, 7).value == 1
    assert lucas_binomial_mod_p(10, 5, 5).value == 2 == 252 % 5


def test_lucas_matches_binomial_exhaustive():
    for p in SMALL_PRIMES:
        for n in range(0, 501):
            for m in range(0, n + 1, max(1, n // 40)):
                assert lucas_binomial_mod_p(n, m, p) == binomial_mod(n, m, p), (n, m, p)


def test_kummer_examples():
    assert kummer_valuation(10, 5, 3) == 2
    assert kummer_valuation(40, 0, 7) == 0
    assert kummer_valuation(9, 4, 5) == 0


def test_kummer_matches_repeated_division():
    for p in SMALL_PRIMES:
        for n in range(0, 501):
            for m in range(0, n + 1, max(1, n // 40)):
                assert kummer_valuation(n, m, p) == vp(math.comb(n, m), p), (n, m, p)


def test_lucas_classical_pattern():
    for p in [2, 3, 5, 7, 11, 13]:
        for n in range(0, 13):
            for m in range(0, n + 1):
                assert math.comb(n * p, m * p) % p == math.comb(n, m) % p
                assert lucas_binomial_mod_p(n * p, m * p, p).value == math.comb(n, m) % p


# composite moduli

def test_composite_examples():
    n = 27173
    assert 29 * 937 == n
    got = binomial_mod_composite(2 * n - 1, n - 1, n, {29: 1, 937: 1})
    assert got.value == 1
    assert binomial_mod_composite(17, 8, 9, {3: 2}).value == 24310 % 9 == 1
    assert binomial_mod_composite(50, 0, 77, {7: 1, 11: 1}).value == 1


def test_composite_large_path_matches_exact():
    cases = [(2 * 5001 - 1, 5000, 5001), (9000, 4321, 3 ** 5 * 5 ** 2 * 7), (12345, 6789, 2 ** 10 * 11 ** 3)]
    for n, m, mod in cases:
        fac = sympy.factorint(mod)
        assert binomial_mod_composite(n, m, mod, fac).value == math.comb(n, m) % mod


def test_composite_rejects_bad_factorization():
    with pytest.raises(BadFactorization):
        binomial_mod_composite(10, 3, 12, {2: 1, 3: 1})
    with pytest.raises(BadFactorization):
        binomial_mod_composite(10, 3, 12, {4: 1, 3: 1})


# central and modified binomials

def test_central_examples():
    assert central_shifted_binomial_mod(5, 3).value == 1
    c = central_shifted_binomial_mod(7, 4)
    assert c.value == math.comb(13, 6) % 7 ** 4 == 1716
    assert c.value != 1


def test_central_known_wolstenholme_prime():
    assert central_shifted_binomial_mod(16843, 4).value == 1


def test_central_consistent_across_precision():
    for p in primes_upto(499):
        if p < 5:
            continue
        c9 = central_shifted_binomial_mod(p, 9)
        assert c9.reduce(p ** 3).value == 1
        assert c9.reduce(p ** 4) == central_shifted_binomial_mod(p, 4)
    for p in primes_upto(60)[1:]:
        assert central_shifted_binomial_mod(p, 6).value == math.comb(2 * p - 1, p - 1) % p ** 6


def test_modified_binomial_at_prime_is_central():
    for p in [3, 5, 7, 11, 13]:
        for e in (1, 2, 3):
            assert modified_binomial(p, e) == central_shifted_binomial_mod(p, e)


def test_modified_binomial_power_of_two():
    assert modified_binomial(8, 3).value == 1 + 8 ** 2 * 4 == 257
    assert frac_mod(modified_binomial_exact(8), 512) == 257


def test_modified_binomial_nine():
    assert epsilon(9) == 3
    direct = frac_mod(modified_binomial_exact(9), 729)
    assert direct == modified_binomial(9, 3).value == (1 + 81 * 3) % 729


def test_modified_binomial_matches_direct_product():
    for n in range(3, 121):
        assert modified_binomial(n, 3).value == frac_mod(modified_binomial_exact(n), n ** 3)


# harmonic sums

def test_harmonic_examples():
    assert harmonic_sum_mod(HarmonicSpec(1, 5, 25)).value == 0
    assert harmonic(4, 2) == Fraction(205, 144)
    assert harmonic_sum_mod(HarmonicSpec(2, 5, 5)).value == 0
    assert frac_mod(harmonic(24, 1, coprime_to=25), 625) == 0
    assert harmonic_sum_mod(HarmonicSpec(1, 25, 625, coprime_to=25)).value == 0


def test_harmonic_rejects_noninvertible():
    with pytest.raises(NonInvertibleDenominator):
        HarmonicSpec(1, 10, 25)


@given(st.integers(1, 5), st.integers(1, 200), st.integers(2, 10 ** 9), st.integers(0, 4000),
       st.one_of(st.none(), st.integers(1, 60)))
def test_harmonic_matches_exact(power, length, mod, offset, coprime):
    try:
        spec = HarmonicSpec(power, length, mod, offset=offset, coprime_to=coprime)
    except NonInvertibleDenominator:
        return
    expected = harmonic(length - 1, power, offset, coprime)
    assert harmonic_exact(spec) == expected
    assert harmonic_sum_mod(spec).value == frac_mod(expected, mod)


@pytest.mark.parametrize("p", [5, 7, 13, 31, 97])
def test_alkan(p):
    exact = sum(Fraction(1, k * (p - k)) for k in range(1, (p - 1) // 2 + 1))
    if p == 5:
        assert exact == Fraction(5, 12)
    assert frac_mod(exact, p) == 0
    assert alkan_sum_mod(p).value == 0


def test_multiple_harmonic_examples():
    assert multiple_harmonic_exact(4) == Fraction(35, 24)
    assert multiple_harmonic_mod(5, 1).value == 0
    assert multiple_harmonic_mod(3, 1).value == 2


def test_shuffle_identity_exact():
    for n in range(1, 51):
        assert 2 * multiple_harmonic_exact(n) == harmonic(n) ** 2 - harmonic(n, 2)


def test_multiple_harmonic_methods_agree():
    for p in primes_upto(100)[1:]:
        for e in (1, 4, 7):
            shuffle = multiple_harmonic_mod(p, e)
            assert shuffle == multiple_harmonic_mod(p, e, "direct") == multiple_harmonic_mod(p, e, "prefix")
        assert shuffle.value == frac_mod(multiple_harmonic_exact(p - 1), p ** 7)


# Apery and binomial sums

def test_apery_examples():
    assert [apery_number(n) for n in (0, 1, 2)] == [1, 5, 73]
    assert apery_number(5) - apery_number(1) == 819000
    assert 819000 % 125 == 0


def test_apery_matches_direct():
    for n in range(0, 61):
        assert apery_number(n) == apery_direct(n)


def test_binomial_sum_u_examples():
    assert binomial_sum_u(1, 1, 1, 1, 10 ** 6).value == (1 - 2) % 10 ** 6
    assert binomial_sum_u(1, 1, 1, 5, 125).value == (1 - 2) % 125


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 1), st.integers(0, 60), st.integers(2, 10 ** 9))
def test_binomial_sum_u_matches_direct(a, b, eps, n, mod):
    direct = sum((-1) ** (eps * k) * math.comb(n, k) ** a * math.comb(2 * n, k) ** b for k in range(n + 1))
    assert binomial_sum_u(a, b, eps, n, mod).value == direct % mod


def test_power_binomial_sum_examples():
    for p in [3, 5, 7, 11]:
        assert power_binomial_sum(1, True, p, 3).value == 0
    assert sum((-1) ** k * math.comb(4, k) ** 2 for k in range(5)) == 6
    assert power_binomial_sum(2, True, 5, 3).value == 6 == 2 ** 8 % 125
    assert power_binomial_sum(1, False, 5, 3).value == 16


@given(st.integers(1, 6), st.booleans(), st.sampled_from(primes_upto(80)), st.integers(1, 5))
def test_power_binomial_sum_matches_direct(n, signed, p, e):
    direct = sum((-1 if signed and k % 2 else 1) * math.comb(p - 1, k) ** n for k in range(p))
    assert power_binomial_sum(n, signed, p, e).value == direct % p ** e


def test_reciprocal_binomial_examples():
    assert reciprocal_binomial_sum(3, 4).value == frac_mod(Fraction(5, 2), 81) == 43
    rhs = Fraction(1, 4) - Fraction(7, 24) * 27 * bernoulli(0)
    assert frac_mod(rhs, 81) == 43
    assert reciprocal_binomial_sum(5, 3).value == frac_mod(Fraction(1, 2 ** 4), 125)
    p = 7
    rhs7 = Fraction(2) ** (1 - p) - Fraction(7, 24) * p ** 3 * bernoulli(p - 3)
    assert reciprocal_binomial_sum(7, 4).value == frac_mod(rhs7, 7 ** 4)


@pytest.mark.parametrize("p, total", [(5, 25), (7, 98), (11, None)])
def test_putnam(p, total):
    s = sum(math.comb(p, j) for j in range(1, 2 * p // 3 + 1))
    if total is not None:
        assert s == total
    assert s % (p * p) == 0
    assert putnam_sum(p).value == 0
