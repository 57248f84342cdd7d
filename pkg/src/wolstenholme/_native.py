"""Fixed-width kernels compiled with numba.

Every kernel here has a pure-Python counterpart elsewhere in the package that
serves as its oracle; the tests pin the two together.
"""

from __future__ import annotations

import numpy as np
from numba import int64, njit, uint64

# Largest modulus for which the float-assisted product below stays exact.
MAX_NATIVE_MODULUS = 1 << 50
# Largest prime the digit-vector kernels accept (digit products must fit in int64).
MAX_DIGIT_PRIME = 1 << 28


@njit(cache=True)
def mulmod(a, b, m, inv_m):
    # a*b mod m for 0 <= a, b < m < 2^50: estimate the quotient in floating
    # point, then fix the remainder with wrapping 64-bit arithmetic.
    q = int64(float(a) * float(b) * inv_m)
    r = int64(uint64(a) * uint64(b) - uint64(q) * uint64(m))
    while r < 0:
        r += m
    while r >= m:
        r -= m
    return r


@njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def inv_mod(a, m):
    """Inverse of a modulo m, or -1 when gcd(a, m) > 1."""
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        return -1
    if s0 < 0:
        s0 += m
    return s0


@njit(cache=True)
def batch_inverse(xs, m):
    """Inverses of xs modulo m with one extended-Euclid call.

    Returns (out, bad) where bad is the first non-invertible index or -1.
    """
    n = xs.shape[0]
    out = np.empty(n, np.int64)
    if n == 0:
        return out, -1
    inv_m = 1.0 / m
    acc = 1 % m
    for i in range(n):
        out[i] = acc
        acc = mulmod(acc, xs[i] % m, m, inv_m)
    t = inv_mod(acc, m)
    if t < 0:
        for i in range(n):
            if _gcd(xs[i] % m, m) != 1:
                return out, i
        return out, 0
    for i in range(n - 1, -1, -1):
        out[i] = mulmod(out[i], t, m, inv_m)
        t = mulmod(t, xs[i] % m, m, inv_m)
    return out, -1


@njit(cache=True)
def half_harmonic_fraction(p):
    """Sum of 1/(k(p-k)) for k <= (p-1)/2 as a fraction (num, den) mod p^2."""
    m = p * p
    inv_m = 1.0 / m
    num = 0
    den = 1
    for k in range(1, (p - 1) // 2 + 1):
        t = k * (p - k)
        num = mulmod(num, t, m, inv_m) + den
        if num >= m:
            num -= m
        den = mulmod(den, t, m, inv_m)
    return num, den


@njit(cache=True)
def harmonic_hits(primes):
    """Flags primes p with H_{p-1} = 0 mod p^3.

    Uses H_{p-1} = p * sum_{k <= (p-1)/2} 1/(k(p-k)), so the test is a
    vanishing numerator mod p^2.
    """
    n = primes.shape[0]
    out = np.zeros(n, np.bool_)
    for i in range(n):
        num, den = half_harmonic_fraction(primes[i])
        out[i] = num == 0
    return out


@njit(cache=True)
def central_binomial_is_one(p, e):
    """True iff C(2p-1, p-1) = 1 mod p^e, via base-p digit vectors.

    C(2p-1, p-1) = prod (p+k)/k over 1 <= k < p; the numerator and denominator
    products are accumulated separately as e-digit base-p integers.
    """
    num = np.zeros(e, np.int64)
    den = np.zeros(e, np.int64)
    num[0] = 1
    den[0] = 1
    for k in range(1, p):
        # num *= (p + k): digits of p + k are (k, 1).
        c = 0
        prev = 0
        for i in range(e):
            cur = num[i]
            v = cur * k + prev + c
            num[i] = v % p
            c = v // p
            prev = cur
        c = 0
        for i in range(e):
            v = den[i] * k + c
            den[i] = v % p
            c = v // p
    for i in range(e):
        if num[i] != den[i]:
            return False
    return True


@njit(cache=True)
def direct_hits(primes, e):
    n = primes.shape[0]
    out = np.zeros(n, np.bool_)
    for i in range(n):
        out[i] = central_binomial_is_one(primes[i], e)
    return out


@njit(cache=True)
def stafford_vandiver_residue(p):
    """(1/21) * sum_{p/6 < k <= p/4} 1/k^3 mod p, for p < 2^31."""
    num = 0
    den = 1
    for k in range(p // 6 + 1, p // 4 + 1):
        c = (k * k) % p * k % p
        num = (num * c + den) % p
        den = den * c % p
    return num * inv_mod(den * 21 % p, p) % p


@njit(cache=True)
def stafford_vandiver_zero(primes):
    n = primes.shape[0]
    out = np.zeros(n, np.bool_)
    for i in range(n):
        out[i] = stafford_vandiver_residue(primes[i]) == 0
    return out
