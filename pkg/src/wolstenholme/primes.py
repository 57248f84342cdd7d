"""Prime enumeration helpers: a segmented sieve and small factor tables."""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np
from sympy import factorint, isprime

DEFAULT_SEGMENT = 1 << 16


def small_primes(n: int) -> np.ndarray:
    """All primes <= n by a plain sieve of Eratosthenes."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for i in range(3, math.isqrt(n) + 1, 2):
        if sieve[i]:
            sieve[i * i::2 * i] = False
    return np.flatnonzero(sieve).astype(np.int64)


def primes_in_segment(lo: int, hi: int, base: np.ndarray | None = None) -> np.ndarray:
    """Primes p with lo <= p < hi; base must hold all primes <= sqrt(hi)."""
    lo = max(lo, 2)
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    if base is None:
        base = small_primes(math.isqrt(hi) + 1)
    mark = np.ones(hi - lo, dtype=bool)
    for q in base:
        q = int(q)
        if q * q >= hi:
            break
        start = max(q * q, (lo + q - 1) // q * q)
        mark[start - lo::q] = False
    return (np.flatnonzero(mark) + lo).astype(np.int64)


def segments(lo: int, hi: int, size: int = DEFAULT_SEGMENT) -> Iterator[tuple[int, int]]:
    """Half-open windows [a, b) covering [lo, hi]."""
    a = lo
    while a <= hi:
        b = min(a + size, hi + 1)
        yield a, b
        a = b


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes in the closed interval [lo, hi]."""
    if hi < lo:
        return []
    base = small_primes(math.isqrt(hi) + 1)
    out: list[int] = []
    for a, b in segments(lo, hi):
        out.extend(primes_in_segment(a, b, base).tolist())
    return out


def smallest_prime_factors(n: int) -> np.ndarray:
    """spf[k] = least prime factor of k for 2 <= k <= n."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for q in small_primes(n):
        q = int(q)
        block = spf[q::q]
        block[block == 0] = q
    return spf


def factor_with_table(n: int, spf: np.ndarray) -> dict[int, int]:
    out: dict[int, int] = {}
    while n > 1:
        q = int(spf[n])
        out[q] = out.get(q, 0) + 1
        n //= q
    return out


__all__ = [
    "DEFAULT_SEGMENT", "factor_with_table", "factorint", "isprime", "primes_between",
    "primes_in_segment", "segments", "small_primes", "smallest_prime_factors",
]
