"""Slow, independent reference computations used only by the tests.

Nothing here imports the package: each helper is a direct transcription of a
definition (exhaustive search, math.comb, Fraction sums, sympy Bernoulli).
"""

from __future__ import annotations

import math
from fractions import Fraction

import sympy


def inverse_by_search(a: int, m: int) -> int | None:
    for y in range(m):
        if a * y % m == 1 % m:
            return y
    return None


def frac_mod(x: Fraction | int, m: int) -> int:
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, m) % m


def vp(x: int | Fraction, p: int) -> int | None:
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def harmonic(n: int, power: int = 1, offset: int = 0, coprime_to: int | None = None) -> Fraction:
    s = Fraction(0)
    for k in range(1, n + 1):
        if coprime_to is not None and math.gcd(k, coprime_to) != 1:
            continue
        s += Fraction(1, (offset + k) ** power)
    return s


def bernoulli(n: int) -> Fraction:
    """B_n with the B_1 = -1/2 convention."""
    if n == 1:
        return Fraction(-1, 2)
    b = sympy.bernoulli(n)
    return Fraction(int(b.p), int(b.q))


def wolstenholme_quotient(p: int) -> int:
    c = math.comb(2 * p - 1, p - 1) - 1
    assert c % p ** 3 == 0
    return c // p ** 3


def apery_direct(n: int) -> int:
    return sum(math.comb(n, k) ** 2 * math.comb(n + k, k) ** 2 for k in range(n + 1))


def primes_upto(n: int) -> list[int]:
    return list(sympy.primerange(2, n + 1))
