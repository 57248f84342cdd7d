"""Wolstenholme quotient, the fast B_{p-3} residue, and congruences that hold
only at Wolstenholme primes."""

from __future__ import annotations

from fractions import Fraction as F

from ..bernoulli import b_pminus3_fast, bernoulli_mod, wolstenholme_quotient
from ._common import bern, central, harm
from .registry import GridOptions, Sides, cong_pe, register

KNOWN_WOLSTENHOLME_PRIMES = (16843, 2124679)
# Conditional checks run at primes up to this bound; the larger known prime
# needs p^8-size residues over 2 * 10^6 terms and is left to explicit calls.
CONDITIONAL_CAP = 20000


@register("P.quotient", "W_p = -2/3 B_{p-3} mod p", 7, ("p",),
          lambda opt: ({"p": p} for p in opt.primes(7)),
          paths="exact quotient of the central binomial vs Bernoulli power sums")
def _quotient(p):
    return cong_pe(wolstenholme_quotient(p)[1], -F(2, 3) * bern(p - 3, p, 1), p, 1)


@register("P.stafford-vandiver", "B_{p-3} = 1/21 sum 1/k^3 over p/6 < k <= p/4 mod p", 11, ("p",),
          lambda opt: ({"p": p} for p in opt.primes(11)), asserted=False,
          paths="power-sum Bernoulli residue vs short cube-reciprocal sum")
def _stafford_vandiver(p):
    return cong_pe(bernoulli_mod(p - 3, p, 1).residue(1), b_pminus3_fast(p), p, 1)


def _is_wolstenholme_prime(p: int) -> bool:
    return central(p, 4).value == 1


def _conditional_domain(forms):
    def domain(x):
        if x["form"] not in forms:
            return f"form must be one of {', '.join(forms)}"
        if not _is_wolstenholme_prime(x["p"]):
            return "p must be a Wolstenholme prime"
        return None
    return domain


def _conditional_grid(forms):
    def grid(opt: GridOptions):
        if not opt.conditional:
            return
        for p in KNOWN_WOLSTENHOLME_PRIMES:
            if p <= CONDITIONAL_CAP:
                for form in forms:
                    yield {"p": p, "form": form}
    return grid


P8_FORMS = ("power-sums", "simplified")


@register("P.mestrovic.p8", "C(2p-1,p-1) mod p^8 via H1..H6 at Wolstenholme primes", 5,
          ("p", "form"), _conditional_grid(P8_FORMS), domain=_conditional_domain(P8_FORMS),
          paths="product formula vs harmonic sums")
def _p8(p, form):
    h = {j: harm(p, j, 8) for j in range(1, 7)}
    if form == "power-sums":
        rhs = 1 + sum(F((-1) ** (j + 1) * p ** j, j) * h[j] for j in range(1, 7))
    else:
        rhs = (1 + F(3 * p, 2) * h[1] - F(p * p, 4) * h[2] + F(7 * p ** 3, 12) * h[3]
               + F(5 * p ** 5, 12) * h[5])
    return cong_pe(central(p, 8), rhs, p, 8)


P7_FORMS = ("squares", "cubes")


@register("P.mestrovic.p7", "C(2p-1,p-1) mod p^7 via H1, H2 or H1, H3 at Wolstenholme primes", 5,
          ("p", "form"), _conditional_grid(P7_FORMS), domain=_conditional_domain(P7_FORMS),
          paths="product formula vs harmonic sums")
def _p7(p, form):
    if form == "squares":
        rhs = 1 - 2 * p * harm(p, 1, 7) - 2 * p * p * harm(p, 2, 7)
    else:
        rhs = 1 + 2 * p * harm(p, 1, 7) + F(2 * p ** 3, 3) * harm(p, 3, 7)
    return cong_pe(central(p, 7), rhs, p, 7)


BERN_FORMS = ("high-index", "low-index")


@register("P.mestrovic.bern", "C(2p-1,p-1) mod p^7 via Bernoulli numbers at Wolstenholme primes", 5,
          ("p", "form"), _conditional_grid(BERN_FORMS), domain=_conditional_domain(BERN_FORMS),
          paths="product formula vs Bernoulli power sums")
def _p7_bern(p, form):
    if form == "high-index":
        rhs = (1 - p ** 3 * bern(p ** 4 - p ** 3 - 2, p, 4) - F(3, 2) * p ** 5 * bern(p * p - p - 4, p, 2)
               + F(3, 10) * p ** 6 * bern(p - 5, p, 1))
    else:
        b3, b24, b35, b46 = (bern(k, p, 4) for k in (p - 3, 2 * p - 4, 3 * p - 5, 4 * p - 6))
        b5, b26 = bern(p - 5, p, 2), bern(2 * p - 6, p, 2)
        rhs = (1 - p ** 3 * (F(8, 3) * b3 - 3 * b24 + F(8, 5) * b35 - F(1, 3) * b46)
               - p ** 4 * (F(8, 9) * b3 - F(3, 2) * b24 + F(24, 25) * b35 - F(2, 9) * b46)
               - p ** 5 * (F(8, 27) * b3 - F(3, 4) * b24 + F(72, 125) * b35 - F(4, 27) * b46
                           + F(12, 5) * b5 - b26)
               - F(2, 25) * p ** 6 * b5)
    return cong_pe(central(p, 7), rhs, p, 7)
