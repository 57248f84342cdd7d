from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from oracles import bernoulli, frac_mod, primes_upto, vp, wolstenholme_quotient as wq_oracle
from wolstenholme.bernoulli import (BernoulliCache, b_pminus3_fast, b_pminus3_fast_native,
                                    bernoulli_exact, bernoulli_fraction, bernoulli_mod,
                                    stafford_vandiver_report, wolstenholme_quotient)
from wolstenholme.errors import CapExceeded, NotPrime, OddIndex
from wolstenholme.residues import padic_normalize

PRIMES = [5, 7, 11, 13, 17, 19]


# exact values

def test_exact_small_values():
    assert bernoulli_exact(0) == 1
    assert bernoulli_exact(1) == Fraction(-1, 2)
    assert bernoulli_exact(2) == Fraction(1, 6)
    assert bernoulli_exact(4) == Fraction(-1, 30)
    assert bernoulli_exact(7) == 0


def test_exact_matches_sympy():
    for n in range(0, 401):
        assert bernoulli_exact(n) == bernoulli(n), n


def test_exact_signs_and_denominators():
    for n in range(2, 401, 2):
        b = bernoulli_exact(n)
        assert (b > 0) == (n % 4 == 2)
        den = 1
        for q in primes_upto(n + 1):
            if n % (q - 1) == 0:
                den *= q
        assert b.denominator == den


def test_cache_cap():
    cache = BernoulliCache(cap=10)
    assert bernoulli_exact(10, cache) == Fraction(5, 66)
    with pytest.raises(CapExceeded):
        bernoulli_exact(12, cache)


# power-sum residues

def test_mod_examples():
    # B_8 = -1/30, so B_8 = -1 * 8^-1 = -7 = 4 mod 11.
    assert bernoulli(8) == Fraction(-1, 30)
    assert frac_mod(bernoulli(8), 11) == 4
    assert bernoulli_mod(8, 11, 1).residue(1).value == 4
    assert bernoulli(10) == Fraction(5, 66)
    assert bernoulli_mod(10, 13, 1).residue(1).value == 5


def test_mod_large_index_matches_exact():
    exact = bernoulli(292)
    got = bernoulli_mod(292, 7, 5)
    assert got == padic_normalize(exact, 7, 5)
    assert got.residue(5).value == frac_mod(exact, 7 ** 5)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_mod_huge_index_matches_exact(p):
    for n in (p ** 4 - p ** 3 - 2, p ** 4 - p ** 3 - 4, p ** 3 - p ** 2 - 2):
        num, den = mpmath.bernfrac(n)
        exact = Fraction(int(num), int(den))
        assert bernoulli_mod(n, p, 6) == padic_normalize(exact, p, 6), n


def test_mod_matches_exact_full_grid():
    for p in PRIMES:
        for n in range(2, 401, 2):
            exact = padic_normalize(bernoulli(n), p, 9)
            for e in range(1, 10):
                assert bernoulli_mod(n, p, e) == exact.reduce(e), (n, p, e)


def test_mod_pole_has_valuation_minus_one():
    for p in PRIMES:
        for n in range(p - 1, 401, p - 1):
            if n % 2 == 0:
                assert bernoulli_mod(n, p, 3).valuation == -1


def test_mod_errors():
    with pytest.raises(OddIndex):
        bernoulli_mod(7, 5, 2)
    with pytest.raises(NotPrime):
        bernoulli_mod(4, 9, 2)


def test_kummer_congruence():
    for p in PRIMES:
        for n in range(2, 401, 2):
            if n % (p - 1) == 0:
                continue
            m = n % (p - 1)
            while m < 2 or m % 2:
                m += p - 1
            lhs = bernoulli_mod(n, p, 1).to_fraction() / n
            rhs = bernoulli_mod(m, p, 1).to_fraction() / m
            if vp(n, p) or vp(m, p):
                continue
            assert frac_mod(lhs, p) == frac_mod(rhs, p), (n, m, p)


@given(st.integers(1, 2000), st.sampled_from([5, 7, 11, 13]), st.integers(1, 6))
def test_huge_index_kummer_link(k, p, e):
    n = 2 * k
    if n % (p - 1) == 0 or n % p == 0:
        return
    m = n % (p - 1)
    while m < 2 or m % 2:
        m += p - 1
    lhs = bernoulli_mod(n, p, e).to_fraction() / n
    rhs = bernoulli_mod(m, p, 1).to_fraction() / m
    assert frac_mod(lhs, p) == frac_mod(rhs, p)


def test_fraction_absolute_precision():
    for p in (5, 7, 11):
        for n in (2, 4, 10, 20, 60):
            b = bernoulli_fraction(n, p, 4)
            diff = b - bernoulli(n)
            assert diff == 0 or vp(diff, p) >= 4


# fast B_{p-3} formula

def test_fast_examples():
    assert b_pminus3_fast(13).value == 5 == frac_mod(bernoulli(10), 13)
    assert b_pminus3_fast(17).value == 4 == frac_mod(bernoulli(14), 17)
    assert b_pminus3_fast(11).value == 4 == frac_mod(bernoulli(8), 11)


def test_fast_native_matches_python():
    for p in primes_upto(3000):
        if p >= 11:
            assert b_pminus3_fast_native(p) == b_pminus3_fast(p).value


def test_fast_report_shape():
    rows = stafford_vandiver_report(11, 60)
    assert [r.p for r in rows] == [p for p in primes_upto(60) if p >= 11]
    for r in rows:
        assert r.oracle == frac_mod(bernoulli(r.p - 3), r.p)
        assert r.agree == (r.formula == r.oracle)


# Wolstenholme quotient

def test_quotient_examples():
    assert wolstenholme_quotient(5)[0] == (126 - 1) // 125 == 1
    assert wolstenholme_quotient(5)[1].value == 1 == frac_mod(Fraction(-2, 3) * bernoulli(2), 5)
    assert wolstenholme_quotient(7)[0] == 5
    assert frac_mod(Fraction(-2, 3) * bernoulli(4), 7) == 5


def test_quotient_known_prime():
    assert wolstenholme_quotient(16843)[1].value == 0


def test_quotient_rejects_composite():
    with pytest.raises(NotPrime):
        wolstenholme_quotient(9)
    with pytest.raises(NotPrime):
        wolstenholme_quotient(3)


def test_quotient_matches_bernoulli_link():
    for p in primes_upto(2000):
        if p < 7:
            continue
        exact, r = wolstenholme_quotient(p)
        if p < 400:
            assert exact == wq_oracle(p)
        b = bernoulli_mod(p - 3, p, 1).to_fraction()
        assert r.value == frac_mod(Fraction(-2, 3) * b, p), p
