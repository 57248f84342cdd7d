"""
Finding Wolstenholme primes
===========================

A prime p >= 5 always has C(2p-1, p-1) = 1 mod p^3.  The rare primes where
this also holds mod p^4 are found three independent ways below.
"""

from wolstenholme.bernoulli import bernoulli_mod, wolstenholme_quotient
from wolstenholme.hunter import irregular_pair_check, witness, wolstenholme_scan

# The harmonic criterion: H_{p-1} = 0 mod p^3.
scan = wolstenholme_scan(5, 100_000)
print("harmonic test hits:", scan.hits, "over", scan.primes_tested, "primes")

# The direct criterion computes the binomial itself, mod p^4.
print("direct test hits:  ", wolstenholme_scan(5, 20_000, "direct").hits)

# Both residues certify the hit.
w = witness(16843)
print(f"p = {w.p}: H_(p-1) mod p^3 = {w.harmonic}, C(2p-1,p-1) mod p^4 = {w.binomial}")

# The third way: p divides the numerator of B_{p-3}, an irregular pair.
print("(16843, 16840) irregular:", irregular_pair_check(16843))
print("B_16840 mod 16843 =", bernoulli_mod(16840, 16843, 1).residue(1).value)

# The Wolstenholme quotient W_p = (C(2p-1,p-1) - 1)/p^3 vanishes mod p there.
for p in (5, 7, 11, 16843):
    exact, mod_p = wolstenholme_quotient(p)
    print(f"W_{p} mod {p} = {mod_p.value}")
