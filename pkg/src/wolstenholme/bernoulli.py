"""Bernoulli numbers: exact rationals, residues modulo p^e, and quotients.

Residues of B_n for huge n come from truncated power sums.  With N = p^w,

    S_n(N)/N = sum_{i>=0} C(n,i) B_{n-i} N^i / (i+1),    S_n(N) = sum_{x<N} x^n,

so B_n = S_n(N)/N up to terms of p-adic valuation >= i*w - 1 - v_p(i+1) (the
-1 allows a Bernoulli pole); only the i = 1 term survives at low valuation,
and it is nonzero only for n = 2.  S_n(p^w) itself is evaluated modulo
p^(w+A) with the base-p digit recursion

    S_n(p^m) = sum_j C(n,j) p^j (sum_{a<p} a^(n-j)) S_j(p^(m-1)),

truncated at j = w + A where p^j vanishes.  The work is O(p * (w + A))
modular products regardless of the size of n.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _native
from .combinatorics import binomial_exact, central_shifted_binomial_mod
from .errors import CapExceeded, NotPrime, OddIndex, PrecisionCheckFailed, PrecisionUnreachable
from .primes import isprime, small_primes
from .residues import PadicValue, ResidueClass, batch_inverse_values, make_residue

DEFAULT_CAP = 400
# Largest working precision (in base-p digits) bernoulli_mod will attempt.
MAX_WORKING_DIGITS = 400


class BernoulliCache:
    """Append-only table of exact Bernoulli numbers B_0..B_N.

    Readers take a snapshot of the list (appends never mutate existing
    entries); writers serialize on a lock.
    """

    def __init__(self, cap: int = DEFAULT_CAP):
        self.cap = cap
        self._values: list[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._values)

    def get(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("index must be nonnegative")
        if n > self.cap:
            raise CapExceeded(f"B_{n} is beyond the cache cap {self.cap}")
        values = self._values
        if n < len(values):
            return values[n]
        with self._lock:
            self._extend(n)
            return self._values[n]

    def _extend(self, n: int) -> None:
        values = self._values
        while len(values) <= n:
            k = len(values)
            if k == 1:
                b = Fraction(-1, 2)
            elif k % 2:
                b = Fraction(0)
            else:
                # sum_{j<=k} C(k+1, j) B_j = 0, skipping the zero odd terms.
                s = Fraction(1) + (k + 1) * values[1]
                for j in range(2, k, 2):
                    s += math.comb(k + 1, j) * values[j]
                b = -s / (k + 1)
                _check_staudt_clausen(k, b)
            values.append(b)


def _check_staudt_clausen(n: int, b: Fraction) -> None:
    expected = 1
    for q in small_primes(n + 1):
        q = int(q)
        if n % (q - 1) == 0:
            expected *= q
    if b.denominator != expected:
        raise AssertionError(f"denominator of B_{n} is {b.denominator}, expected {expected}")


_CACHE = BernoulliCache()


def bernoulli_exact(n: int, cache: BernoulliCache | None = None) -> Fraction:
    return (cache or _CACHE).get(n)


def set_cache_cap(cap: int) -> None:
    """Raise the cap of the shared exact cache."""
    _CACHE.cap = max(_CACHE.cap, cap)


def _vp(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _truncation_w(p: int, a: int) -> int:
    """Smallest w with i*w - 1 - v_p(i+1) >= a for every i >= 2."""
    w = 1
    while True:
        # i - 1 - log_p(i+1) grows, so i up to 2a + 4 decides.
        if all(i * w - 1 - _vp(i + 1, p) >= a for i in range(2, 2 * a + 5)):
            return w
        w += 1


@lru_cache(maxsize=256)
def _low_power_sums(p: int, levels: int, top: int, modulus: int) -> tuple[int, ...]:
    """S_j(p^levels) mod modulus for 0 <= j <= top, with 0^0 = 1."""
    pw = [pow(p, j, modulus) for j in range(top + 1)]
    rows = [[pow(a, k, modulus) for a in range(p)] for k in range(top + 1)]
    asum = [sum(row) % modulus for row in rows]  # pow(0, 0) = 1 gives 0^0 = 1
    s = [1] + [0] * top
    for _ in range(levels):
        s = [sum(math.comb(n, j) * pw[j] * asum[n - j] * s[j] for j in range(n + 1)) % modulus
             for n in range(top + 1)]
    return tuple(s)


def _power_sum(n: int, p: int, w: int, digits: int) -> int:
    """S_n(p^w) mod p^digits."""
    modulus = p ** digits
    top = digits - 1  # p^j vanishes for j >= digits
    low = _low_power_sums(p, w - 1, top, modulus)
    phi = modulus // p * (p - 1)
    jmax = min(n, top)
    # a^(n - j) for j = jmax down to 0, starting from the smallest exponent.
    k0 = n - jmax
    if k0 >= digits:
        k0r = (k0 - digits) % phi + digits
    else:
        k0r = k0
    cur = [pow(a, k0r, modulus) for a in range(p)]
    if k0 > 0:
        cur[0] = 0
    total = 0
    for j in range(jmax, -1, -1):
        if j < jmax:
            cur = [c * a % modulus for a, c in enumerate(cur)]
        asum = sum(cur) % modulus
        total += binomial_exact(n, j) * pow(p, j, modulus) * asum * low[j]
    return total % modulus


def _approximate(n: int, p: int, a: int, extra: int = 0) -> tuple[int, int, int]:
    """(numerator, exponent, a) with B_n = numerator / p^exponent mod p^a (absolute)."""
    w = _truncation_w(p, a) + extra
    digits = w + a
    if digits > MAX_WORKING_DIGITS:
        raise PrecisionUnreachable(f"B_{n} mod {p}^{a} needs {digits} working digits")
    tot = _power_sum(n, p, w, digits)
    if n == 2:
        # Remove the C(2,1) B_1 N / 2 = -N/2 term.
        half = pow(2, -1, p ** digits)
        tot = (tot + p ** (2 * w) * half) % p ** digits
    return tot, w, a


@lru_cache(maxsize=4096)
def bernoulli_mod(n: int, p: int, e: int, verify: bool = True) -> PadicValue:
    """B_n as a p-adic value with relative precision e."""
    if n % 2 and n != 1:
        raise OddIndex(f"odd index {n}: B_n is zero")
    if n == 1:
        raise OddIndex("B_1 is not handled by the power-sum method")
    if p < 3 or not isprime(p):
        raise NotPrime(f"{p} is not an odd prime")
    if e < 1:
        raise ValueError("precision must be >= 1")
    if n == 0:
        return PadicValue(p, 0, ResidueClass(1, p ** e), e)
    a = e + 2
    while True:
        tot, w, a = _approximate(n, p, a)
        if tot == 0:
            # B_n (n >= 2 even) is never zero; the valuation is at least a - w.
            a += e + 2
            continue
        v = _vp(tot, p) - w
        if v + e <= a:
            break
        a = v + e
    result = _to_padic(tot, w, v, p, e)
    if verify:
        tot2, w2, _ = _approximate(n, p, a, extra=1)
        if _to_padic(tot2, w2, _vp(tot2, p) - w2 if tot2 else None, p, e) != result:
            raise PrecisionCheckFailed(f"B_{n} mod {p}^{e} changed with one more guard digit")
    return result


def _to_padic(tot: int, w: int, v: int | None, p: int, e: int) -> PadicValue:
    if v is None:
        return PadicValue.zero(p, e)
    unit = tot // p ** (v + w)
    return PadicValue(p, v, ResidueClass(unit % p ** e, p ** e), e)


def bernoulli_fraction(n: int, p: int, absolute: int) -> Fraction:
    """A rational equal to B_n modulo p^absolute (absolute precision, absolute >= 0)."""
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    return bernoulli_mod(n, p, max(1, absolute + 1)).to_fraction()


def b_pminus3_fast(p: int) -> ResidueClass:
    """(1/21) * sum_{floor(p/6) < k <= floor(p/4)} 1/k^3 mod p."""
    if p < 11:
        raise ValueError("needs p >= 11")
    ks = [k ** 3 % p for k in range(p // 6 + 1, p // 4 + 1)]
    total = sum(batch_inverse_values(ks, p)) % p
    return make_residue(total, 21, p)


def b_pminus3_fast_native(p: int) -> int:
    return int(_native.stafford_vandiver_residue(p))


@dataclass(frozen=True)
class FastComparison:
    p: int
    formula: int
    oracle: int
    agree: bool


def stafford_vandiver_report(lo: int, hi: int) -> list[FastComparison]:
    """Compare the fast B_{p-3} formula with the power-sum oracle for lo <= p <= hi."""
    from .primes import primes_between
    out = []
    for p in primes_between(max(lo, 11), hi):
        f = b_pminus3_fast(p).value
        o = bernoulli_mod(p - 3, p, 1).residue(1).value
        out.append(FastComparison(p, f, o, f == o))
    return out


EXACT_QUOTIENT_LIMIT = 10 ** 5


def wolstenholme_quotient(p: int) -> tuple[int | None, ResidueClass]:
    """(W_p, W_p mod p) with W_p = (C(2p-1, p-1) - 1) / p^3.

    The exact integer is only produced for p <= 10^5; above that the first
    slot is None and the residue comes from C(2p-1, p-1) mod p^4.
    """
    if p < 5 or not isprime(p):
        raise NotPrime(f"{p} is not a prime >= 5")
    if p <= EXACT_QUOTIENT_LIMIT:
        c = math.comb(2 * p - 1, p - 1)
        w, r = divmod(c - 1, p ** 3)
        if r:
            raise AssertionError(f"C(2p-1, p-1) is not 1 mod p^3 at p={p}")
        return w, ResidueClass(w % p, p)
    c = central_shifted_binomial_mod(p, 4).value
    if (c - 1) % p ** 3:
        raise AssertionError(f"C(2p-1, p-1) is not 1 mod p^3 at p={p}")
    return None, ResidueClass((c - 1) // p ** 3 % p, p)


def irregular_index_zero(p: int) -> bool:
    """True when p divides the numerator of B_{p-3}."""
    return bernoulli_mod(p - 3, p, 1).valuation != 0
