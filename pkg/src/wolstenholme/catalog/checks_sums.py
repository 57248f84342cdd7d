"""Binomial sums: Chamberland-Dilcher, Cai-Granville, Pan, reciprocal sums,
Apery numbers and the Putnam sum."""

from __future__ import annotations

from fractions import Fraction as F

from ..combinatorics import (
    apery_number, binomial_mod, binomial_sum_u, power_binomial_sum, putnam_sum, reciprocal_binomial_sum,
)
from ._common import bern
from .registry import GridOptions, Override, cong_pe, register


def _grid_chamberland(opt: GridOptions):
    for p in opt.primes(5):
        for eps in (0, 1):
            for a in range(4):
                for b in range(4):
                    if (eps, a, b) != (0, 0, 1):
                        yield {"p": p, "form": "triple", "eps": eps, "a": a, "b": b, "m": 1}
        for m in range(1, 6):
            yield {"p": p, "form": "scaled", "eps": 1, "a": 1, "b": 1, "m": m}


def _chamberland_domain(x):
    if x["form"] == "triple":
        if x["eps"] not in (0, 1) or x["a"] < 0 or x["b"] < 0 or x["m"] != 1:
            return "need eps in {0, 1}, a, b >= 0 and m = 1"
        if (x["eps"], x["a"], x["b"]) == (0, 0, 1):
            return "(eps, a, b) = (0, 0, 1) is excluded"
        return None
    if x["form"] == "scaled":
        if (x["eps"], x["a"], x["b"]) != (1, 1, 1) or x["m"] < 1:
            return "the scaled form needs (eps, a, b) = (1, 1, 1) and m >= 1"
        return None
    return "form must be triple or scaled"


@register("B.chamberland", "u(p) = 1 + (-1)^eps 2^b mod p^3; u(mp) = u(m) mod p^3", 5,
          ("p", "form", "eps", "a", "b", "m"), _grid_chamberland, domain=_chamberland_domain,
          overrides=[
              Override({"form": "triple", "eps": 0, "a": 0, "b": 0}, "sum is p + 1, not 2; fails for every prime"),
              Override({"form": "triple", "eps": 0, "a": 1, "b": 0}, "sum is 2^p, not 2; fails for every prime"),
          ],
          paths="direct binomial sum vs closed form or sum at m")
def _chamberland(p, form, eps, a, b, m):
    mod = p ** 3
    if form == "triple":
        return cong_pe(binomial_sum_u(a, b, eps, p, mod), 1 + (-1) ** eps * 2 ** b, p, 3)
    return cong_pe(binomial_sum_u(1, 1, 1, m * p, mod), binomial_sum_u(1, 1, 1, m, mod), p, 3)


def _grid_cai(opt: GridOptions):
    for p in opt.primes(5):
        for form in ("alternating", "plain"):
            for n in range(1, 7):
                yield {"p": p, "form": form, "n": n}


@register("B.cai-granville", "sum (+-1)^k C(p-1,k)^n is C(np-2,p-1) mod p^4 or 2^(n(p-1)) mod p^3 by parity", 5,
          ("p", "form", "n"), _grid_cai,
          domain=lambda x: None if x["form"] in ("alternating", "plain") and x["n"] >= 1
          else "form must be alternating or plain and n >= 1",
          paths="direct power sum vs binomial residue or power of two")
def _cai_granville(p, form, n):
    alternating = form == "alternating"
    # The binomial value appears for odd n in the alternating sum and even n in the plain one.
    if (n % 2 == 1) == alternating:
        return cong_pe(power_binomial_sum(n, alternating, p, 4), binomial_mod(n * p - 2, p - 1, p ** 4), p, 4)
    return cong_pe(power_binomial_sum(n, alternating, p, 3), pow(2, n * (p - 1), p ** 3), p, 3)


def _grid_pan(opt: GridOptions):
    for p in opt.primes(3):
        for n in range(1, 7):
            yield {"p": p, "n": n}


@register("B.pan", "sum (-1)^((n-1)k) C(p-1,k)^n = 2^(n(p-1)) + n(n-1)(3n-4)/48 p^3 B_{p-3} mod p^4", 3,
          ("p", "n"), _grid_pan, domain=lambda x: None if x["n"] >= 1 else "need n >= 1",
          paths="direct power sum vs Bernoulli power sums")
def _pan(p, n):
    lhs = power_binomial_sum(n, n % 2 == 0, p, 4)
    rhs = 2 ** (n * (p - 1)) + F(n * (n - 1) * (3 * n - 4), 48) * p ** 3 * bern(p - 3, p, 1)
    return cong_pe(lhs, rhs, p, 4)


def _grid_recip(opt: GridOptions):
    for p in opt.primes(3):
        yield {"p": p, "form": "fourth"}
        yield {"p": p, "form": "third"}


@register("B.mestrovic.recip", "sum 1/C(p-1,k) = 2^(1-p) - 7/24 p^3 B_{p-3} mod p^4, hence 2^(1-p) mod p^3", 3,
          ("p", "form"), _grid_recip,
          domain=lambda x: None if x["form"] in ("fourth", "third") else "form must be fourth or third",
          overrides=[Override({"form": "third", "p": 3}, "the mod p^3 corollary fails at p = 3")],
          paths="exact rational sum vs power of two and Bernoulli power sums")
def _recip(p, form):
    if form == "fourth":
        rhs = F(1, 2 ** (p - 1)) - F(7, 24) * p ** 3 * bern(p - 3, p, 1)
        return cong_pe(reciprocal_binomial_sum(p, 4), rhs, p, 4)
    return cong_pe(reciprocal_binomial_sum(p, 3), F(1, 2 ** (p - 1)), p, 3)


APERY_PRIMES = (5, 7, 11, 13)


def _grid_apery(opt: GridOptions):
    for p in opt.primes(5, 13):
        for n in range(31):
            yield {"p": p, "n": n}


@register("B.apery", "A(pn) = A(n) mod p^3", 5, ("p", "n"), _grid_apery,
          domain=lambda x: None if x["n"] >= 0 else "need n >= 0",
          paths="Apery sums at pn and at n (each cross-checked against the second sum form)")
def _apery(p, n):
    return cong_pe(apery_number(p * n), apery_number(n), p, 3)


@register("B.putnam", "sum C(p,j) over 1 <= j <= floor(2p/3) is 0 mod p^2", 5, ("p",),
          lambda opt: ({"p": p} for p in opt.primes(5)), paths="direct binomial sum vs zero")
def _putnam(p):
    return cong_pe(putnam_sum(p), 0, p, 2)
