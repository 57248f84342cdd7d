"""Binomial coefficients, harmonic-type sums and related binomial sums.

Every fast path here has an exact counterpart (binomial_exact, harmonic_exact,
direct sums over Fractions) used as its oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import _native
from .errors import BadFactorization, NonInvertibleDenominator
from .primes import factorint, isprime
from .residues import (
    NATIVE_BATCH_MIN, ResidueClass, batch_inverse_values, crt_combine, make_residue,
)

# Below this top index binomial_mod reduces the exact value.
EXACT_LIMIT = 4000


def binomial_exact(n: int, m: int) -> int:
    if m < 0 or m > n or n < 0:
        return 0
    return math.comb(n, m)


def binomial_mod(n: int, m: int, modulus: int) -> ResidueClass:
    if m < 0 or m > n or n < 0:
        return ResidueClass(0, modulus)
    if n <= EXACT_LIMIT:
        return ResidueClass(math.comb(n, m) % modulus, modulus)
    return binomial_mod_composite(n, m, modulus, factorint(modulus))


def kummer_valuation(n: int, m: int, p: int) -> int:
    """Number of carries when adding m and n - m in base p."""
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    a, b = m, n - m
    carry = 0
    count = 0
    while a or b or carry:
        s = a % p + b % p + carry
        carry = 1 if s >= p else 0
        count += carry
        a //= p
        b //= p
    return count


def _small_binomial_mod_p(n: int, m: int, p: int) -> int:
    if m < 0 or m > n:
        return 0
    m = min(m, n - m)
    num = den = 1
    for i in range(m):
        num = num * (n - i) % p
        den = den * (i + 1) % p
    return num * pow(den, -1, p) % p


def lucas_binomial_mod_p(n: int, m: int, p: int) -> ResidueClass:
    if m < 0 or m > n:
        return ResidueClass(0, p)
    out = 1
    while m and out:
        out = out * _small_binomial_mod_p(n % p, m % p, p) % p
        n //= p
        m //= p
    return ResidueClass(out % p, p)


def _unit_factorials(points: list[int], q: int, modulus: int) -> dict[int, int]:
    """For each x in points, the product of 1 <= i <= x with q not dividing i, mod modulus."""
    # Product over one full period [1, modulus] of units is -1 except for 2^a, a >= 3.
    if q == 2 and modulus >= 8:
        period = 1
    else:
        period = modulus - 1
    reduced = sorted({x % modulus for x in points})
    table: dict[int, int] = {}
    acc = 1
    i = 1
    for r in reduced:
        while i <= r:
            if i % q:
                acc = acc * i % modulus
            i += 1
        table[r] = acc
    return {x: pow(period, x // modulus, modulus) * table[x % modulus] % modulus for x in points}


def _binomial_prime_power(n: int, m: int, q: int, a: int) -> int:
    modulus = q ** a
    v = kummer_valuation(n, m, q)
    if v >= a:
        return 0
    # n! = q^(v_q(n!)) * prod_j F(n // q^j), F(x) = product of units up to x.
    chains = []
    for top in (n, m, n - m):
        chain = []
        while top:
            chain.append(top)
            top //= q
        chains.append(chain)
    table = _unit_factorials([x for c in chains for x in c], q, modulus)
    parts = []
    for chain in chains:
        acc = 1
        for x in chain:
            acc = acc * table[x] % modulus
        parts.append(acc)
    unit = parts[0] * pow(parts[1] * parts[2] % modulus, -1, modulus) % modulus
    return unit * q ** v % modulus


def binomial_mod_composite(n: int, m: int, modulus: int, factorization: dict[int, int]) -> ResidueClass:
    """C(n, m) mod modulus via prime-power components and CRT."""
    prod = 1
    for q, a in factorization.items():
        if a < 1 or not isprime(q):
            raise BadFactorization(f"{q}^{a} is not a prime power")
        prod *= q ** a
    if prod != modulus:
        raise BadFactorization(f"factorization multiplies to {prod}, not {modulus}")
    if m < 0 or m > n:
        return ResidueClass(0, modulus)
    if n <= EXACT_LIMIT:
        return ResidueClass(math.comb(n, m) % modulus, modulus)
    parts = [ResidueClass(_binomial_prime_power(n, m, q, a), q ** a) for q, a in sorted(factorization.items())]
    return crt_combine(parts)


def _inverses(vals: list[int], modulus: int) -> list[int]:
    if modulus < _native.MAX_NATIVE_MODULUS and len(vals) >= NATIVE_BATCH_MIN:
        out, bad = _native.batch_inverse(np.asarray(vals, dtype=np.int64), modulus)
        if bad >= 0:
            v = vals[bad]
            raise NonInvertibleDenominator(v, modulus, math.gcd(v, modulus))
        return out.tolist()
    return batch_inverse_values(vals, modulus)


def central_shifted_binomial_mod(p: int, e: int) -> ResidueClass:
    """C(2p-1, p-1) mod p^e as the product of (p+k)/k for 1 <= k < p."""
    modulus = p ** e
    invs = _inverses(list(range(1, p)), modulus)
    acc = 1
    for k, inv in enumerate(invs, start=1):
        acc = acc * (p + k) % modulus * inv % modulus
    return ResidueClass(acc, modulus)


def modified_binomial(n: int, e: int) -> ResidueClass:
    """Product of (2n-k)/k over 1 <= k <= n with gcd(k, n) = 1, mod n^e."""
    if n < 3:
        raise ValueError("n must be >= 3")
    modulus = n ** e
    ks = [k for k in range(1, n + 1) if math.gcd(k, n) == 1]
    invs = _inverses(ks, modulus)
    acc = 1
    for k, inv in zip(ks, invs):
        acc = acc * (2 * n - k) % modulus * inv % modulus
    return ResidueClass(acc, modulus)


def modified_binomial_exact(n: int) -> Fraction:
    """The same product as an exact rational (oracle)."""
    out = Fraction(1)
    for k in range(1, n + 1):
        if math.gcd(k, n) == 1:
            out *= Fraction(2 * n - k, k)
    return out


@dataclass(frozen=True)
class HarmonicSpec:
    """Sum of 1/(offset + k)^power over 1 <= k < length, optionally gcd(k, coprime_to) = 1."""

    power: int
    length: int
    modulus: int
    offset: int = 0
    coprime_to: int | None = None

    def __post_init__(self) -> None:
        if self.power < 1:
            raise ValueError("power must be >= 1")
        for d in self.denominators():
            g = math.gcd(d, self.modulus)
            if g != 1:
                raise NonInvertibleDenominator(d, self.modulus, g)

    def indices(self) -> Iterator[int]:
        c = self.coprime_to
        for k in range(1, self.length):
            if c is None or math.gcd(k, c) == 1:
                yield k

    def denominators(self) -> list[int]:
        return [self.offset + k for k in self.indices()]


def harmonic_sum_mod(spec: HarmonicSpec) -> ResidueClass:
    modulus = spec.modulus
    invs = _inverses([d % modulus for d in spec.denominators()], modulus)
    m = spec.power
    total = 0
    for inv in invs:
        total += pow(inv, m, modulus)
    return ResidueClass(total % modulus, modulus)


def harmonic_exact(spec: HarmonicSpec) -> Fraction:
    total = Fraction(0)
    for d in spec.denominators():
        total += Fraction(1, d ** spec.power)
    return total


def alkan_sum_mod(p: int) -> ResidueClass:
    """Sum of 1/(k(p-k)) for 1 <= k <= (p-1)/2, mod p."""
    ks = [k * (p - k) % p for k in range(1, (p - 1) // 2 + 1)]
    return ResidueClass(sum(batch_inverse_values(ks, p)) % p, p)


def multiple_harmonic_mod(p: int, e: int, method: str = "shuffle") -> ResidueClass:
    """Sum of 1/(ij) over 1 <= i < j <= p-1, mod p^e.

    "shuffle" uses 2*sum = H^2 - H^(2); "prefix" accumulates partial sums in one
    pass; "direct" enumerates pairs (quadratic, oracle use only).
    """
    modulus = p ** e
    invs = _inverses(list(range(1, p)), modulus)
    if method == "shuffle":
        h1 = sum(invs) % modulus
        h2 = sum(x * x for x in invs) % modulus
        return make_residue(h1 * h1 - h2, 2, modulus)
    if method == "prefix":
        total = 0
        run = 0
        for x in invs:
            total += x * run
            run += x
        return ResidueClass(total % modulus, modulus)
    if method == "direct":
        total = 0
        for j in range(len(invs)):
            for i in range(j):
                total += invs[i] * invs[j] % modulus
        return ResidueClass(total % modulus, modulus)
    raise ValueError(f"unknown method {method!r}")


def multiple_harmonic_exact(n: int) -> Fraction:
    """Sum of 1/(ij) over 1 <= i < j <= n as an exact rational, by pair enumeration."""
    total = Fraction(0)
    for j in range(2, n + 1):
        for i in range(1, j):
            total += Fraction(1, i * j)
    return total


@lru_cache(maxsize=None)
def apery_number(n: int) -> int:
    first = sum(math.comb(n, k) ** 2 * math.comb(n + k, k) ** 2 for k in range(n + 1))
    second = sum(math.comb(n + k, 2 * k) ** 2 * math.comb(2 * k, k) ** 2 for k in range(n + 1))
    if first != second:
        raise AssertionError(f"Apery sum forms disagree at n={n}")
    return first


def binomial_sum_u(a: int, b: int, eps: int, n: int, modulus: int) -> ResidueClass:
    """Sum over 0 <= k <= n of (-1)^(eps k) C(n,k)^a C(2n,k)^b."""
    total = 0
    c1 = c2 = 1
    for k in range(n + 1):
        term = pow(c1 % modulus, a, modulus) * pow(c2 % modulus, b, modulus)
        total += -term if eps and k % 2 else term
        c1 = c1 * (n - k) // (k + 1)
        c2 = c2 * (2 * n - k) // (k + 1)
    return ResidueClass(total % modulus, modulus)


def power_binomial_sum(n: int, signed: bool, p: int, e: int) -> ResidueClass:
    """Sum over 0 <= k < p of (+-1)^k C(p-1, k)^n mod p^e."""
    modulus = p ** e
    total = 0
    c = 1
    for k in range(p):
        term = pow(c % modulus, n, modulus)
        total += -term if signed and k % 2 else term
        c = c * (p - 1 - k) // (k + 1)
    return ResidueClass(total % modulus, modulus)


def reciprocal_binomial_exact(p: int) -> Fraction:
    return sum((Fraction(1, math.comb(p - 1, k)) for k in range(p)), Fraction(0))


def reciprocal_binomial_sum(p: int, e: int) -> ResidueClass:
    x = reciprocal_binomial_exact(p)
    return make_residue(x.numerator, x.denominator, p ** e)


def putnam_sum(p: int) -> ResidueClass:
    """Sum of C(p, j) for 1 <= j <= floor(2p/3), mod p^2."""
    modulus = p * p
    return ResidueClass(sum(math.comb(p, j) for j in range(1, 2 * p // 3 + 1)) % modulus, modulus)
