"""
Composites that imitate primes, and q-analogues
===============================================

No composite n is known with C(2n-1, n-1) = 1 mod n^3.  Mod n the
condition is weaker, and a few composites satisfy it.
"""

from wolstenholme.catalog import GridOptions, sweep
from wolstenholme.hunter import converse_scan
from wolstenholme.qring import q_binomial, q_harmonic

# Odd composites up to 30000 that are not prime powers, in W_1.
res = converse_scan(5, 30000, 1, ["odd-composite"])
print("odd composites in W_1:", res.members(1))

# Every n up to 3000 with the level it reaches (W_1 contains W_2 contains W_3).
res = converse_scan(2, 3000, 3, ["prime-power", "odd-composite", "even"])
print("non-prime members up to 3000:", [(h.n, h.tag, h.level) for h in res.hits])

# The q-world: Gaussian binomials become ordinary binomials at q = 1.
print("C(4,2)_q =", q_binomial(4, 2), "->", q_binomial(4, 2)(1))

# H_{p-1}(q) modulo the p-th cyclotomic polynomial.
print("H_4(q) mod Phi_5 =", q_harmonic(4, "plain", 5, 1))

# The symbolic q-congruence checks, swept for p <= 13.
report = sweep(["Q.*"], GridOptions(hi=13))
print("q-checks:", report.summary.passed, "hold,", report.summary.failed, "asserted failures")
