"""Harmonic-sum congruences, at primes and at composite moduli.

Sums are evaluated with batch modular inversion; Bernoulli right sides come
from the power-sum method, and the zero right sides need no computation.
"""

from __future__ import annotations

from fractions import Fraction as F
from itertools import combinations
from math import gcd

from ..combinatorics import HarmonicSpec, alkan_sum_mod, harmonic_sum_mod, modified_binomial
from ..primes import factorint, primes_between
from ..residues import ResidueClass, crt_combine, residue
from ._common import bern, harm
from .registry import GridOptions, Sides, cong, cong_pe, register


def _primes(floor: int):
    def grid(opt: GridOptions):
        for p in opt.primes(floor):
            yield {"p": p}
    return grid


def _shifted_sum(power: int, length: int, modulus: int, offset: int = 0, coprime_to: int | None = None) -> ResidueClass:
    return harmonic_sum_mod(HarmonicSpec(power, length, modulus, offset, coprime_to))


@register("H.wolstenholme.h1", "sum 1/k over k < p is 0 mod p^2", 5, ("p",), _primes(5),
          paths="batch inversion vs zero")
def _h1(p):
    return cong_pe(harm(p, 1, 2), 0, p, 2)


@register("H.wolstenholme.h2", "sum 1/k^2 over k < p is 0 mod p", 5, ("p",), _primes(5),
          paths="batch inversion vs zero")
def _h2(p):
    return cong_pe(harm(p, 2, 1), 0, p, 1)


@register("H.alkan", "sum 1/(k(p-k)) over k <= (p-1)/2 is 0 mod p", 5, ("p",), _primes(5),
          paths="half-range inversion vs zero")
def _alkan(p):
    return cong_pe(alkan_sum_mod(p), 0, p, 1)


def _grid_m(opt: GridOptions):
    for p in opt.primes(5):
        for m in range(1, 9):
            if p >= m + 3:
                yield {"p": p, "m": m}


def _m_domain(a):
    if a["m"] < 1 or a["p"] < a["m"] + 3:
        return "need m >= 1 and p >= m + 3"
    return None


@register("H.bayat", "sum 1/k^m over k < p is 0 mod p (m even) or p^2 (m odd)", 5, ("p", "m"), _grid_m,
          domain=_m_domain, paths="batch inversion vs zero")
def _bayat(p, m):
    e = 1 if m % 2 == 0 else 2
    return cong_pe(harm(p, m, e), 0, p, e)


def glaisher_rhs(p: int, m: int) -> tuple[F, int]:
    """Bernoulli right side of the power-m harmonic sum and its exponent."""
    if m % 2 == 0:
        return F(m, m + 1) * p * bern(p - 1 - m, p, 1), 2
    return -F(m * (m + 1), 2 * (m + 2)) * p * p * bern(p - 2 - m, p, 1), 3


@register("H.glaisher.gen", "sum 1/k^m over k < p via B_{p-1-m} or B_{p-2-m}", 5, ("p", "m"), _grid_m,
          domain=_m_domain, paths="batch inversion vs Bernoulli power sums")
def _glaisher_gen(p, m):
    rhs, e = glaisher_rhs(p, m)
    return cong_pe(harm(p, m, e), rhs, p, e)


def _grid_m123(opt: GridOptions):
    for p in opt.primes(5):
        for m in (1, 2, 3):
            if m < 3 or p >= 7:
                yield {"p": p, "m": m}


def _m123_domain(a):
    m, p = a["m"], a["p"]
    if m not in (1, 2, 3):
        return "m must be 1, 2 or 3"
    if m == 3 and p < 7:
        return "m = 3 needs p >= 7"
    return None


@register("H.glaisher.m123", "H1 = -p^2 B_{p-3}/3 mod p^3, H2 = 2p B_{p-3}/3 mod p^2, H3 = -6p^2 B_{p-5}/5 mod p^3",
          5, ("p", "m"), _grid_m123, domain=_m123_domain, paths="batch inversion vs Bernoulli power sums")
def _glaisher_m123(p, m):
    if m == 1:
        return cong_pe(harm(p, 1, 3), -F(1, 3) * p * p * bern(p - 3, p, 1), p, 3)
    if m == 2:
        return cong_pe(harm(p, 2, 2), F(2, 3) * p * bern(p - 3, p, 1), p, 2)
    return cong_pe(harm(p, 3, 3), -F(6, 5) * p * p * bern(p - 5, p, 1), p, 3)


def _grid_carlitz(opt: GridOptions):
    for p in opt.primes(5):
        for m in range(-8, 9):
            yield {"p": p, "m": m}


@register("H.carlitz", "sum 1/(mp+k) over k < p is 0 mod p^2", 5, ("p", "m"), _grid_carlitz,
          paths="batch inversion of shifted denominators vs zero")
def _carlitz(p, m):
    return cong_pe(_shifted_sum(1, p, p * p, m * p), 0, p, 2)


HONG_CASES = ("odd", "even", "pm2")


def _hong_cases(p: int, r: int) -> list[str]:
    out = []
    if r % 2 == 1 and p >= r + 4:
        out.append("odd")
    if r % 2 == 0 and p >= r + 3:
        out.append("even")
    if r == p - 2:
        out.append("pm2")
    return out


def _grid_hong(opt: GridOptions):
    for p in opt.primes(3):
        for n in range(1, 7):
            for r in range(1, 7):
                for case in _hong_cases(p, r):
                    yield {"p": p, "n": n, "r": r, "case": case}


def _hong_domain(a):
    if a["n"] < 1 or a["r"] < 1:
        return "need n, r >= 1"
    if a["case"] not in _hong_cases(a["p"], a["r"]):
        return f"case {a['case']} does not apply to p={a['p']}, r={a['r']}"
    return None


def _shifted_power_rhs(p: int, l: int, n: int, r: int, case: str) -> tuple[F, int]:
    """Right side and exponent for the sum of 1/(n p^l + k)^r over k < p^l prime to p."""
    if case == "odd":
        c = -F((2 * n + 1) * r * (r + 1), 2 * (p ** (l - 1) + r + 1))
        return c * p ** (2 * l) * bern(p ** l - p ** (l - 1) - r - 1, p, l), 3 * l
    if case == "even":
        c = F(r, p ** (2 * l - 2) + r)
        return c * p ** l * bern(p ** (2 * l - 1) - p ** (2 * l - 2) - r, p, 2 * l - 1), 3 * l - 1
    return F(-(2 * n + 1) * p ** (2 * l - 1)), 2 * l


@register("H.hong", "sum 1/(np+k)^r over k < p via Bernoulli numbers, three cases", 3,
          ("p", "n", "r", "case"), _grid_hong, domain=_hong_domain,
          paths="batch inversion vs Bernoulli power sums")
def _hong(p, n, r, case):
    rhs, e = _shifted_power_rhs(p, 1, n, r, case)
    return cong_pe(_shifted_sum(r, p, p ** e, n * p), rhs, p, e)


SLAVUTSKII_CAP = 2500


def _grid_slavutskii(opt: GridOptions):
    for p in opt.primes(3):
        for l in (1, 2):
            if l == 2 and p ** l > SLAVUTSKII_CAP:
                continue
            for n in range(1, 5):
                for r in range(1, 6):
                    for case in _hong_cases(p, r):
                        yield {"p": p, "l": l, "n": n, "r": r, "case": case}


def _slavutskii_domain(a):
    if a["l"] < 1:
        return "need l >= 1"
    return _hong_domain(a)


@register("H.slavutskii", "sum 1/(np^l+k)^r over k < p^l prime to p via Bernoulli numbers", 3,
          ("p", "l", "n", "r", "case"), _grid_slavutskii, domain=_slavutskii_domain,
          paths="batch inversion vs Bernoulli power sums")
def _slavutskii(p, l, n, r, case):
    rhs, e = _shifted_power_rhs(p, l, n, r, case)
    q = p ** l
    return cong_pe(_shifted_sum(r, q, p ** e, n * q, coprime_to=p), rhs, p, e)


def _grid_syl(opt: GridOptions):
    for p in opt.primes(5):
        for r in (0, 1, 2):
            for j in (-3, -1, 1, 3):
                yield {"p": p, "m": (j * p ** r - 1) // 2, "r": r}


def _syl_domain(a):
    if a["r"] < 0 or (2 * a["m"] + 1) % a["p"] ** a["r"]:
        return "need p^r | 2m + 1"
    return None


@register("H.su-yang-li", "sum 1/(mp+k) over k < p is 0 mod p^(r+2) when p^r | 2m+1", 5,
          ("p", "m", "r"), _grid_syl, domain=_syl_domain, paths="batch inversion vs zero")
def _su_yang_li(p, m, r):
    return cong_pe(_shifted_sum(1, p, p ** (r + 2), m * p), 0, p, r + 2)


# Composite moduli.

def _leudesdorf_grid(opt: GridOptions):
    for n in range(5, 1001):
        if gcd(n, 6) == 1:
            yield {"n": n}


@register("C.leudesdorf", "sum 1/k over k < n prime to n is 0 mod n^2", 5, ("n",), _leudesdorf_grid,
          domain=lambda a: None if a["n"] > 1 and gcd(a["n"], 6) == 1 else "need gcd(n, 6) = 1",
          prime_param=None, paths="batch inversion vs zero")
def _leudesdorf(n):
    return cong(_shifted_sum(1, n, n * n, coprime_to=n), 0, n * n, f"{n}^2")


def epsilon(n: int) -> F:
    """Correction term of the modified binomial coefficient modulo n^3."""
    f = factorint(n)
    if list(f) == [2]:
        return F(n, 2)
    if n % 3 == 0 and all(q % 6 != 1 for q in f):
        return (-1) ** (len(f) + 1) * F(n, 3)
    return F(0)


@register("C.mcintosh.modified", "prod over k <= n prime to n of (2n-k)/k = 1 + n^2 eps_n mod n^3", 3, ("n",),
          lambda opt: ({"n": n} for n in range(3, 2001)),
          domain=lambda a: None if a["n"] >= 3 else "need n >= 3",
          prime_param=None, paths="unit product vs factorization-based correction")
def _mcintosh_modified(n):
    return cong(modified_binomial(n, 3), 1 + n * n * epsilon(n), n ** 3, f"{n}^3")


def _even_hypothesis(n: int, s: int) -> bool:
    return all(n % q for q in primes_between(2, s + 1) if s % (q - 1) == 0)


def _odd_hypothesis(n: int, s: int) -> bool:
    fac = factorint(n)
    c1 = all((s + 1) % (q - 1) for q in fac)
    c2 = all(s % q == 0 for q in fac if (s + 1) % (q - 1) == 0)
    return c1 or c2


def _grid_even(opt: GridOptions):
    for s in (2, 4, 6, 8):
        for n in range(2, 501):
            if _even_hypothesis(n, s):
                yield {"n": n, "s": s}


@register("C.slavutskii.even", "sum 1/k^s over k < n prime to n is 0 mod n (s even, hypothesis on n)", 2,
          ("n", "s"), _grid_even,
          domain=lambda a: None if a["s"] % 2 == 0 and a["s"] > 0 and a["n"] >= 2 and _even_hypothesis(a["n"], a["s"])
          else "need even s and gcd(n, q) = 1 for every prime q with q-1 | s",
          prime_param=None, paths="batch inversion vs zero")
def _slavutskii_even(n, s):
    return cong(_shifted_sum(s, n, n, coprime_to=n), 0, n, str(n))


def _grid_odd(opt: GridOptions):
    for s in (1, 3, 5, 7):
        for n in range(2, 501):
            if _odd_hypothesis(n, s):
                yield {"n": n, "s": s}


@register("C.slavutskii.odd", "sum 1/k^s over k < n prime to n is 0 mod n^2 (s odd, hypothesis on n)", 2,
          ("n", "s"), _grid_odd,
          domain=lambda a: None if a["s"] % 2 == 1 and a["s"] > 0 and a["n"] >= 2 and _odd_hypothesis(a["n"], a["s"])
          else "need odd s and the divisibility hypothesis on the primes of n",
          prime_param=None, paths="batch inversion vs zero")
def _slavutskii_odd(n, s):
    return cong(_shifted_sum(s, n, n * n, coprime_to=n), 0, n * n, f"{n}^2")


def _totient(fac: dict[int, int]) -> int:
    out = 1
    for q, a in fac.items():
        out *= (q - 1) * q ** (a - 1)
    return out


def _grid_bern(opt: GridOptions):
    for n in range(5, 201):
        if gcd(n, 6) != 1:
            continue
        fac = factorint(n)
        for s in range(1, 9):
            yield {"form": "composite", "n": n, "s": s}
            if len(fac) == 1 and max(fac.values()) <= 2:
                yield {"form": "prime-power", "n": n, "s": s}


def _bern_domain(a):
    n, s, form = a["n"], a["s"], a["form"]
    if n < 5 or gcd(n, 6) != 1 or s < 1:
        return "need gcd(n, 6) = 1, n > 1 and s >= 1"
    if form == "prime-power":
        return None if len(factorint(n)) == 1 else "n must be a prime power"
    return None if form == "composite" else "form must be composite or prime-power"


@register("C.slavutskii.bern", "sum 1/k^s over k < n prime to n via B_t mod n^2, t = (phi(n^2)-1)s", 5,
          ("form", "n", "s"), _grid_bern, domain=_bern_domain, prime_param=None,
          paths="batch inversion vs Bernoulli power sums combined by CRT")
def _slavutskii_bern(form, n, s):
    fac = factorint(n)
    t = (_totient({q: 2 * a for q, a in fac.items()}) - 1) * s
    parts = []
    for q, a in fac.items():
        mod = q ** (2 * a)
        if form == "prime-power":
            prod = 1
        else:
            shift = t - 1 if s % 2 == 0 else t - 2
            prod = 1
            for r in fac:
                prod = prod * (1 - pow(r, shift, mod)) % mod
        if s % 2 == 0:
            rhs = n * bern(t, q, a + 1) * prod
        else:
            rhs = F(t, 2) * n * n * bern(t - 1, q, 1) * prod
        parts.append(residue(rhs, mod))
    lhs = _shifted_sum(s, n, n * n, coprime_to=n)
    return Sides(lhs, crt_combine(parts), f"{n}^2")


DUPARC_CAP = 30000


def duparc_exponent(p: int, l: int, s: int) -> int:
    if s % 2 == 1:
        if (s + 1) % (p - 1) == 0 and s % p:
            return 2 * l - 1
        return 2 * l
    if s % (p - 1) == 0:
        return l - 1
    return l


def _grid_duparc(opt: GridOptions):
    for p in opt.primes(3):
        for l in (1, 2, 3):
            if p ** l > DUPARC_CAP:
                continue
            for s in range(1, 9):
                if duparc_exponent(p, l, s) >= 1:
                    yield {"p": p, "l": l, "s": s}


@register("C.duparc", "sum 1/k^s over k < p^l prime to p is 0 mod p^(2l-1), p^(2l), p^(l-1) or p^l by case", 3,
          ("p", "l", "s"), _grid_duparc,
          domain=lambda a: None if a["l"] >= 1 and a["s"] >= 1 else "need l, s >= 1",
          paths="batch inversion vs zero")
def _duparc(p, l, s):
    e = duparc_exponent(p, l, s)
    return cong_pe(_shifted_sum(s, p ** l, p ** e, coprime_to=p), 0, p, e)


def _grid_multiprime(opt: GridOptions):
    ps = primes_between(5, 29)
    for size in (2, 3):
        for tup in combinations(ps, size):
            n = 1
            for q in tup:
                n *= q
            for m in range(4):
                yield {"n": n, "m": m}


def _multiprime_domain(a):
    fac = factorint(a["n"])
    if len(fac) < 1 or any(e > 1 for e in fac.values()) or min(fac) <= 3 or a["m"] < 0:
        return "n must be a squarefree product of primes > 3 and m >= 0"
    return None


@register("C.hong.multiprime", "sum 1/(mP+k) over k <= P prime to P is 0 mod P^2, P squarefree", 5, ("n", "m"),
          _grid_multiprime, domain=_multiprime_domain, prime_param=None,
          paths="batch inversion of shifted denominators vs zero")
def _multiprime(n, m):
    return cong(_shifted_sum(1, n + 1, n * n, m * n, coprime_to=n), 0, n * n, f"{n}^2")
