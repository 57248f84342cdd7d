"""Binomial-coefficient congruences: the C(2p-1, p-1) tower, supercongruences,
Ljunggren/Jacobsthal type congruences, Lucas and Kummer.

Left sides come from binomial residues (product formula or prime-power
factorials); right sides from harmonic sums (batch inversion) or Bernoulli
residues (power sums), never from the left side.
"""

from __future__ import annotations

import random
from fractions import Fraction as F

from ..combinatorics import (
    binomial_exact, binomial_mod, kummer_valuation, lucas_binomial_mod_p, multiple_harmonic_mod,
)
from ..residues import residue, valuation
from ._common import bern, central, harm, ratio_mod
from .registry import GridOptions, Override, cong_pe, exact, register


def _primes(floor: int, cap: int | None = None):
    def grid(opt: GridOptions):
        for p in opt.primes(floor, cap):
            yield {"p": p}
    return grid


# The C(2p-1, p-1) tower.

@register("W.babbage", "C(2p-1,p-1) = 1 mod p^2", 3, ("p",), _primes(3), paths="product formula vs constant")
def _babbage(p):
    return cong_pe(central(p, 2), 1, p, 2)


@register("W.wolstenholme.binom", "C(2p-1,p-1) = 1 mod p^3", 5, ("p",), _primes(5), paths="product formula vs constant")
def _wolstenholme(p):
    return cong_pe(central(p, 3), 1, p, 3)


@register("W.glaisher.p4", "C(2p-1,p-1) = 1 - 2p H1 mod p^4", 5, ("p",), _primes(5),
          overrides=[Override({}, "printed sign fails for every prime; + sign form is W.zhao.p5")],
          paths="product formula vs harmonic sum")
def _glaisher_p4(p):
    m = p ** 4
    return cong_pe(central(p, 4), 1 - 2 * p * harm(p, 1, 4) % m, p, 4)


@register("W.mcintosh.p5", "C(2p-1,p-1) = 1 - p^2 H2 mod p^5", 7, ("p",), _primes(7), paths="product formula vs harmonic sum")
def _mcintosh_p5(p):
    return cong_pe(central(p, 5), 1 - p * p * harm(p, 2, 5), p, 5)


@register("W.zhao.p5", "C(2p-1,p-1) = 1 + 2p H1 mod p^5", 7, ("p",), _primes(7), paths="product formula vs harmonic sum")
def _zhao_p5(p):
    return cong_pe(central(p, 5), 1 + 2 * p * harm(p, 1, 5), p, 5)


@register("W.tauraso.p6", "C(2p-1,p-1) = 1 + 2p H1 + 2/3 p^3 H3 mod p^6", 7, ("p",), _primes(7), paths="product formula vs harmonic sums")
def _tauraso_p6(p):
    rhs = 1 + 2 * p * harm(p, 1, 6) + F(2, 3) * p ** 3 * harm(p, 3, 6)
    return cong_pe(central(p, 6), rhs, p, 6)


@register("W.mestrovic.p6", "C(2p-1,p-1) = 1 - 2p H1 - 2p^2 H2 mod p^6", 7, ("p",), _primes(7), paths="product formula vs harmonic sums")
def _mestrovic_p6(p):
    rhs = 1 - 2 * p * harm(p, 1, 6) - 2 * p * p * harm(p, 2, 6)
    return cong_pe(central(p, 6), rhs, p, 6)


def _grid_p7(opt: GridOptions):
    for p in opt.primes(7):
        for form in ("double-sum", "shuffle"):
            yield {"p": p, "form": form}


@register("W.mestrovic.p7", "C(2p-1,p-1) mod p^7 via double harmonic sum or its shuffle form", 7, ("p", "form"), _grid_p7,
          domain=lambda a: None if a["form"] in ("double-sum", "shuffle") else "form must be double-sum or shuffle",
          paths="product formula vs multiple harmonic sum (prefix sums) or power sums (shuffle form)")
def _mestrovic_p7(p, form):
    # The modulus is p^7 for p >= 11; at p = 7 the congruence holds only mod 7^6.
    e = 7 if p >= 11 else 6
    m = p ** e
    h1 = harm(p, 1, e)
    if form == "double-sum":
        pairs = multiple_harmonic_mod(p, e, method="prefix").value
        rhs = 1 - 2 * p * h1 + 4 * p * p * pairs
    else:
        rhs = 1 - 2 * p * h1 + 2 * p * p * (h1 * h1 - harm(p, 2, e))
    return cong_pe(central(p, e), rhs % m, p, e)


@register("W.tauraso.p9", "C(2p-1,p-1) mod p^9 via H1, H3, H5", 7, ("p",), _primes(7), paths="product formula vs harmonic sums")
def _tauraso_p9(p):
    h1, h3, h5 = harm(p, 1, 9), harm(p, 3, 9), harm(p, 5, 9)
    rhs = (1 + 2 * p * h1 + F(2, 3) * p ** 3 * h3 + 2 * p * p * h1 * h1
           + F(2, 5) * p ** 5 * h5 + F(4, 3) * p ** 4 * h1 * h3)
    return cong_pe(central(p, 9), rhs, p, 9)


@register("W.mestrovic.p9", "C(2p-1,p-1) mod p^9 via H1..H4", 7, ("p",), _primes(7), paths="product formula vs harmonic sums")
def _mestrovic_p9(p):
    h1, h2, h3, h4 = (harm(p, j, 9) for j in (1, 2, 3, 4))
    rhs = (1 + p * h1 - F(p * p, 2) * (5 * h1 * h1 + h2)
           - F(p ** 3, 30) * (15 * h1 * h2 - 2 * h3)
           + F(p ** 4, 40) * (35 * h2 * h2 - 26 * h4))
    return cong_pe(central(p, 9), rhs, p, 9)


def _grid_glaisher_np(opt: GridOptions):
    for p in opt.primes(5):
        for n in range(1, 13):
            yield {"p": p, "n": n}


@register("W.glaisher.np", "C(np-1,p-1) = 1 - n(n-1)/3 p^3 B_{p-3} mod p^4", 5, ("p", "n"), _grid_glaisher_np,
          domain=lambda a: None if a["n"] >= 1 else "n must be positive",
          paths="prime-power binomial vs Bernoulli power sums")
def _glaisher_np(p, n):
    lhs = binomial_mod(n * p - 1, p - 1, p ** 4)
    rhs = 1 - F(n * (n - 1), 3) * p ** 3 * bern(p - 3, p, 1)
    return cong_pe(lhs, rhs, p, 4)


@register("W.glaisher.bern", "C(2p-1,p-1) = 1 - 2/3 p^3 B_{p-3} mod p^4", 7, ("p",), _primes(7), paths="product formula vs Bernoulli")
def _glaisher_bern(p):
    return cong_pe(central(p, 4), 1 - F(2, 3) * p ** 3 * bern(p - 3, p, 1), p, 4)


@register("W.mcintosh.bern", "C(2p-1,p-1) = 1 - p^3 B_{p^3-p^2-2} mod p^5", 7, ("p",), _primes(7), paths="product formula vs Bernoulli")
def _mcintosh_bern(p):
    return cong_pe(central(p, 5), 1 - p ** 3 * bern(p ** 3 - p ** 2 - 2, p, 2), p, 5)


@register("W.helou.p6", "C(2p-1,p-1) mod p^6 via B_{p^3-p^2-2}, B_{p-3}, B_{p-5}", 5, ("p",), _primes(5), paths="product formula vs Bernoulli")
def _helou_p6(p):
    rhs = (1 - p ** 3 * bern(p ** 3 - p ** 2 - 2, p, 3)
           + F(1, 3) * p ** 5 * bern(p - 3, p, 1) - F(6, 5) * p ** 5 * bern(p - 5, p, 1))
    return cong_pe(central(p, 6), rhs, p, 6)


def bern_p7_rhs(p: int) -> F:
    """Right side of the mod p^7 Bernoulli form, exactly as printed."""
    b1 = bern(p ** 4 - p ** 3 - 2, p, 4)
    b2 = bern(p * p - p - 4, p, 2)
    b3 = bern(p ** 4 - p ** 3 - 4, p, 2)
    b4 = bern(p - 3, p, 1)
    b5 = bern(p - 5, p, 1)
    return (1 - p ** 3 * b1 + p ** 5 * (F(1, 2) * b2 - 2 * b3)
            + p ** 6 * (F(2, 9) * b4 * b4 - F(1, 3) * b4 - F(1, 10) * b5))


@register("W.mestrovic.bern.p7", "C(2p-1,p-1) mod p^7 via Bernoulli numbers up to B_{p^4-p^3-2}", 11, ("p",), _primes(11),
          overrides=[Override({}, "printed form holds mod p^6 but not mod p^7")],
          paths="product formula vs Bernoulli at indices up to p^4-p^3-2")
def _mestrovic_bern_p7(p):
    return cong_pe(central(p, 7), bern_p7_rhs(p), p, 7)


# Supercongruences.

@register("S.granville", "C(2p-1,p-1) / C(2p,p)^3 = 3/8 mod p^5", 5, ("p",), _primes(5),
          overrides=[Override({}, "printed ratio fails mod p^5 for every prime")],
          paths="two binomial residues vs constant")
def _granville(p):
    m = p ** 5
    c = central(p, 5).value
    c2 = binomial_mod(2 * p, p, m).value
    lhs = c * pow(c2, -3, m) % m
    return cong_pe(lhs, F(3, 8), p, 5)


@register("S.sun-wan", "C(4p-1,2p-1) = C(4p,p) - 1 mod p^5", 7, ("p",), _primes(7), paths="two independent binomial residues")
def _sun_wan(p):
    m = p ** 5
    return cong_pe(binomial_mod(4 * p - 1, 2 * p - 1, m), binomial_mod(4 * p, p, m).value - 1, p, 5)


def _grid_squares(opt: GridOptions):
    for p in opt.primes(5):
        yield {"p": p, "form": "square"}
        if p <= 13:
            yield {"p": p, "form": "cube"}


@register("S.squares", "C(2p^2,p^2) = C(2p,p) mod p^6; C(2p^3,p^3) = C(2p^2,p^2) mod p^9", 5, ("p", "form"), _grid_squares,
          domain=lambda a: None if a["form"] in ("square", "cube") else "form must be square or cube",
          paths="prime-power factorial binomial vs exact binomial")
def _squares(p, form):
    if form == "square":
        return cong_pe(binomial_mod(2 * p * p, p * p, p ** 6), binomial_exact(2 * p, p), p, 6)
    return cong_pe(binomial_mod(2 * p ** 3, p ** 3, p ** 9), binomial_exact(2 * p * p, p * p), p, 9)


def _grid_integerpart(opt: GridOptions):
    for p in opt.primes(2, 13):
        for k in (1, 2, 3):
            rng = random.Random(opt.seed * 1_000_003 + p * 10 + k)
            pk = p ** k
            found = 0
            tries = 0
            seen = set()
            while found < 12 and tries < 400:
                tries += 1
                n = rng.randint(1, 12 * pk)
                m = n - pk * rng.randint(0, n // pk)
                if m < 1 or (n, m) in seen or binomial_exact(n, m) % p == 0:
                    continue
                seen.add((n, m))
                found += 1
            for n, m in sorted(seen):
                yield {"p": p, "k": k, "n": n, "m": m}


def _integerpart_domain(a):
    p, k, n, m = a["p"], a["k"], a["n"], a["m"]
    if not (k >= 1 and n >= m >= 1):
        return "need k >= 1 and n >= m >= 1"
    if (n - m) % p ** k:
        return "m must be congruent to n modulo p^k"
    if binomial_exact(n, m) % p == 0:
        return "C(n, m) must not be divisible by p"
    return None


@register("S.integerpart", "C(n,m) = C(n//p, m//p) mod p^k when m = n mod p^k", 2, ("p", "k", "n", "m"), _grid_integerpart, domain=_integerpart_domain,
          paths="binomial residue vs exact binomial of the integer parts")
def _integerpart(p, k, n, m):
    return cong_pe(binomial_mod(n, m, p ** k), binomial_exact(n // p, m // p), p, k)


# Ljunggren / Jacobsthal / Zhao / Helou-Terjanian.

def _grid_nm(floor, nmax, strict=False):
    def grid(opt: GridOptions):
        for p in opt.primes(floor):
            for n in range(1, nmax + 1):
                for m in range(1, n if strict else n + 1):
                    yield {"p": p, "n": n, "m": m}
    return grid


def _nm_domain(strict=False):
    def domain(a):
        n, m = a["n"], a["m"]
        if not (1 <= m <= n) or (strict and m == n):
            return "need 1 <= m < n" if strict else "need 1 <= m <= n"
        return None
    return domain


@register("L.ljunggren", "C(np,mp) = C(n,m) mod p^3", 5, ("p", "n", "m"), _grid_nm(5, 10), domain=_nm_domain(),
          paths="binomial residue vs exact small binomial")
def _ljunggren(p, n, m):
    return cong_pe(binomial_mod(n * p, m * p, p ** 3), binomial_exact(n, m), p, 3)


def _grid_np3(opt: GridOptions):
    for p in opt.primes(5):
        for n in range(1, 13):
            yield {"p": p, "n": n}


@register("L.glaisher.np3", "C(np,p) = n mod p^3", 5, ("p", "n"), _grid_np3,
          domain=lambda a: None if a["n"] >= 1 else "n must be positive",
          paths="binomial residue vs integer")
def _glaisher_np3(p, n):
    return cong_pe(binomial_mod(n * p, p, p ** 3), n, p, 3)


TOP_CAP = 30000


def _grid_jacobsthal(opt: GridOptions):
    for p in opt.primes(5):
        ns = list(range(1, 7))
        if p <= 31:
            ns += [p, 2 * p]
        for n in ns:
            ms = range(1, n) if n <= 6 else [m for m in (1, 2, p - 1, p, p + 1) if 1 <= m < n]
            for m in ms:
                yield {"p": p, "form": "single", "n": n, "m": m, "a": 0, "b": 0, "c": 0}
        for n in range(1, 4):
            for a in range(3):
                if n * p ** a > TOP_CAP:
                    continue
                for b in range(a + 1):
                    for c in range(b + 1):
                        for m in range(n + 1):
                            yield {"p": p, "form": "general", "n": n, "m": m, "a": a, "b": b, "c": c}
                if a >= 1:
                    for m in range(n + 1):
                        yield {"p": p, "form": "diagonal", "n": n, "m": m, "a": a, "b": a, "c": 1}


def _jacobsthal_domain(a):
    form, n, m = a["form"], a["n"], a["m"]
    if form == "single":
        return None if 1 <= m < n else "need 1 <= m < n"
    if form in ("general", "diagonal"):
        if not (0 <= a["c"] <= a["b"] <= a["a"]) or n < 0 or m < 0:
            return "need 0 <= c <= b <= a and n, m >= 0"
        if form == "diagonal" and (a["a"] != a["b"] or a["c"] != 1):
            return "the specialization needs a = b and c = 1"
        return None
    return "form must be single, general or diagonal"


@register("L.jacobsthal", "C(np^a,mp^b) = C(np^(a-c),mp^(b-c)) mod p^(3+a+2b-3c)", 5, ("p", "form", "n", "m", "a", "b", "c"), _grid_jacobsthal,
          domain=_jacobsthal_domain, paths="two independent binomial residues")
def _jacobsthal(p, form, n, m, a, b, c):
    if form == "single":
        t = valuation(p ** 3 * n * m * (n - m), p)
        return cong_pe(binomial_mod(n * p, m * p, p ** t), binomial_exact(n, m), p, t)
    e = 3 + a + 2 * b - 3 * c
    lhs = binomial_mod(n * p ** a, m * p ** b, p ** e)
    rhs = binomial_mod(n * p ** (a - c), m * p ** (b - c), p ** e)
    return cong_pe(lhs, rhs, p, e)


def _grid_robbins(opt: GridOptions):
    for p in opt.primes(3):
        for n in range(1, 4):
            if n % p == 0:
                continue
            for a in (1, 2):
                if n * p ** a > TOP_CAP:
                    continue
                for b in range(a + 1):
                    top = n * p ** (a - b)
                    for m in sorted({1, 2, 3, top - 1, top - 2}):
                        if 0 < m < top and m % p:
                            yield {"p": p, "n": n, "m": m, "a": a, "b": b}


def _robbins_domain(x):
    p, n, m, a, b = x["p"], x["n"], x["m"], x["a"], x["b"]
    if not (0 <= b <= a and a >= 1) or not (0 < m < n * p ** (a - b)) or (n * m) % p == 0:
        return "need 0 <= b <= a, a >= 1, 0 < m < n p^(a-b), p not dividing nm"
    return None


@register("L.robbins", "C(np^a,mp^b) = C(np^(a-b),m) mod p^a", 3, ("p", "n", "m", "a", "b"), _grid_robbins, domain=_robbins_domain,
          paths="two independent binomial residues")
def _robbins(p, n, m, a, b):
    lhs = binomial_mod(n * p ** a, m * p ** b, p ** a)
    rhs = binomial_mod(n * p ** (a - b), m, p ** a)
    return cong_pe(lhs, rhs, p, a)


@register("L.helou.s", "C(np,mp) = C(n,m) mod p^s, s = v_p(p^3 m(n-m) C(n,m))", 5, ("p", "n", "m"), _grid_nm(5, 10, strict=True), domain=_nm_domain(True),
          paths="binomial residue vs exact small binomial")
def _helou_s(p, n, m):
    s = valuation(p ** 3 * m * (n - m) * binomial_exact(n, m), p)
    return cong_pe(binomial_mod(n * p, m * p, p ** s), binomial_exact(n, m), p, s)


@register("L.zhao.wp", "C(np,mp)/C(n,m) = 1 + w_p nm(n-m) p^3 mod p^5", 7, ("p", "n", "m"), _grid_nm(7, 8), domain=_nm_domain(),
          paths="binomial ratio vs harmonic sum quotient")
def _zhao_wp(p, n, m):
    h = harm(p, 1, 4)
    if h % (p * p):
        raise ArithmeticError("harmonic sum is not divisible by p^2")
    w = h // (p * p) % (p * p)
    lhs = ratio_mod(n * p, m * p, binomial_exact(n, m), p, 5)
    return cong_pe(lhs, 1 + w * n * m * (n - m) * p ** 3, p, 5)


@register("L.helou.p6", "C(np,mp)/C(n,m) mod p^6 via Bernoulli numbers", 5, ("p", "n", "m"), _grid_nm(5, 6), domain=_nm_domain(),
          paths="binomial ratio vs Bernoulli")
def _helou_p6_ratio(p, n, m):
    lhs = ratio_mod(n * p, m * p, binomial_exact(n, m), p, 6)
    inner = (F(p ** 3, 2) * bern(p ** 3 - p ** 2 - 2, p, 3) - F(p ** 5, 6) * bern(p - 3, p, 1)
             + F(m * m - m * n + n * n, 5) * p ** 5 * bern(p - 5, p, 1))
    return cong_pe(lhs, 1 - m * n * (n - m) * inner, p, 6)


@register("L.helou.p4", "C(np,mp)/C(n,m) = 1 - nm(n-m)/3 p^3 B_{p-3} mod p^4", 5, ("p", "n", "m"), _grid_nm(5, 8), domain=_nm_domain(),
          paths="binomial ratio vs Bernoulli")
def _helou_p4_ratio(p, n, m):
    lhs = ratio_mod(n * p, m * p, binomial_exact(n, m), p, 4)
    return cong_pe(lhs, 1 - F(m * n * (n - m), 3) * p ** 3 * bern(p - 3, p, 1), p, 4)


# Lucas and Kummer.

def _grid_lucas(opt: GridOptions):
    for p in opt.primes(2, 13):
        for n in range(13):
            for m in range(n + 1):
                yield {"p": p, "form": "scaled", "n": n, "m": m}
        rng = random.Random(opt.seed * 7919 + p)
        for _ in range(40):
            n = rng.randint(0, 500)
            yield {"p": p, "form": "lucas", "n": n, "m": rng.randint(0, n)}


@register("X.lucas", "C(n,m) mod p is the product of digitwise binomials", 2, ("p", "form", "n", "m"), _grid_lucas,
          domain=lambda a: None if a["form"] in ("scaled", "lucas") and 0 <= a["m"] <= a["n"] else "bad form or m",
          paths="digitwise product vs full binomial residue")
def _lucas(p, form, n, m):
    if form == "scaled":
        return cong_pe(binomial_mod(n * p, m * p, p), binomial_exact(n, m), p, 1)
    return cong_pe(lucas_binomial_mod_p(n, m, p), residue(binomial_exact(n, m), p), p, 1)


def _grid_kummer(opt: GridOptions):
    for p in opt.primes(2, 13):
        rng = random.Random(opt.seed * 104729 + p)
        for _ in range(40):
            n = rng.randint(0, 500)
            yield {"p": p, "n": n, "m": rng.randint(0, n)}


def _valuation_by_division(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@register("X.kummer", "v_p C(n,m) is the number of carries adding m and n-m in base p", 2, ("p", "n", "m"), _grid_kummer,
          domain=lambda a: None if 0 <= a["m"] <= a["n"] else "need 0 <= m <= n",
          paths="carry count vs repeated division of the exact binomial")
def _kummer(p, n, m):
    return exact(kummer_valuation(n, m, p), _valuation_by_division(binomial_exact(n, m), p))
