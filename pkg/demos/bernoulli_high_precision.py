"""
Bernoulli numbers at huge indices, modulo prime powers
======================================================

Congruences for C(2p-1, p-1) modulo p^7 involve B_n with n = p^4 - p^3 - 2,
which is 13308 already for p = 11.  The power-sum method gives such values
mod p^e directly; here it is compared with an exact rational from mpmath and
then used to test one published seventh-power formula.
"""

import math
from fractions import Fraction

import mpmath

from wolstenholme.bernoulli import bernoulli_mod

p = 11
n = p ** 4 - p ** 3 - 2

# Power-sum residue, and the exact rational reduced by hand.
ours = bernoulli_mod(n, p, 6)
num, den = mpmath.bernfrac(n)
exact = int(num) * pow(int(den), -1, p ** 6) % p ** 6
print(f"B_{n} mod {p}^6: power sum {ours.residue(6).value}, exact {exact}")


def rhs(p, coeff):
    """The Bernoulli-number form of C(2p-1, p-1) mod p^7, with a chosen
    coefficient for the single B_{p-3} term at p^6."""
    def b(k):
        return bernoulli_mod(k, p, 7).to_fraction()
    x = (1 - p ** 3 * b(p ** 4 - p ** 3 - 2)
         + p ** 5 * (Fraction(1, 2) * b(p * p - p - 4) - 2 * b(p ** 4 - p ** 3 - 4))
         + p ** 6 * (Fraction(2, 9) * b(p - 3) ** 2 + coeff * b(p - 3) - Fraction(1, 10) * b(p - 5)))
    m = p ** 7
    return x.numerator * pow(x.denominator, -1, m) % m


# The printed coefficient is -1/3.  It matches mod p^6 but not mod p^7;
# the opposite sign matches at every prime tried.
for p in (11, 13, 17, 19):
    lhs = math.comb(2 * p - 1, p - 1) % p ** 7
    print(f"p = {p}: -1/3 gives {lhs == rhs(p, Fraction(-1, 3))}, +1/3 gives {lhs == rhs(p, Fraction(1, 3))}")
