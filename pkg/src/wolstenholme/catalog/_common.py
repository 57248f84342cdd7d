"""Cached ingredients shared by the check definitions."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..bernoulli import bernoulli_fraction
from ..combinatorics import HarmonicSpec, binomial_mod, central_shifted_binomial_mod, harmonic_sum_mod
from ..residues import ResidueClass, valuation

# Extra p-adic digits requested for Bernoulli factors beyond the target modulus.
GUARD = 2


@lru_cache(maxsize=8192)
def harm(p: int, power: int, e: int) -> int:
    """sum_{k<p} 1/k^power mod p^e, as an integer residue."""
    return harmonic_sum_mod(HarmonicSpec(power, p, p ** e)).value


@lru_cache(maxsize=4096)
def central(p: int, e: int) -> ResidueClass:
    return central_shifted_binomial_mod(p, e)


@lru_cache(maxsize=16384)
def bern(n: int, p: int, e: int) -> Fraction:
    """A rational congruent to B_n modulo p^(e + GUARD) (absolute)."""
    return bernoulli_fraction(n, p, e + GUARD)


def ratio_mod(a_top: int, a_bottom: int, b: int, p: int, e: int) -> ResidueClass:
    """C(a_top, a_bottom) / b modulo p^e, where both have the same p-adic valuation."""
    from ..combinatorics import kummer_valuation
    v = valuation(b, p)
    if kummer_valuation(a_top, a_bottom, p) != v:
        raise ArithmeticError("numerator and denominator valuations differ")
    num = binomial_mod(a_top, a_bottom, p ** (e + v)).value // p ** v
    den = b // p ** v
    return ResidueClass(num * pow(den, -1, p ** e) % p ** e, p ** e)
