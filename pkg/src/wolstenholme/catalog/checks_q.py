"""q-analogues, evaluated symbolically in Q[q] modulo powers of the p-th
cyclotomic polynomial."""

from __future__ import annotations

from ..qring import Q_CHECKS, q_congruence_sides
from .registry import GridOptions, Override, Sides, register

STATEMENTS = {
    "Q.andrews.h": "H_{p-1}(q) = (p-1)/2 (1-q) mod [p]_q",
    "Q.andrews.htilde": "sum q^k/[k]_q = -(p-1)/2 (1-q) mod [p]_q",
    "Q.shi-pan.h2": "H_{p-1}(q) = (p-1)/2 (1-q) + (p^2-1)/24 (1-q)^2 [p]_q mod [p]_q^2",
    "Q.shi-pan.sq": "sum 1/[k]_q^2 = -(p-1)(p-5)/12 (1-q)^2 mod [p]_q",
    "Q.shi-pan.sqtilde": "sum q^k/[k]_q^2 = -(p^2-1)/12 (1-q)^2 mod [p]_q",
    "Q.straub": "[np, mp]_q is determined by [n, m]_{q^(p^2)} mod [p]_q^3",
    "Q.clark": "[np, mp]_q = [n, m]_{q^(p^2)} mod [p]_q^2",
    "Q.andrews.binom": "[np, mp]_q = q^((n-m)m p(p-1)/2) [n, m]_{q^p} mod [p]_q^2",
    "Q.wolstenholme": "[2p, p]_q = [2]_{q^(p^2)} - (p^2-1)/12 (q^p-1)^2 mod [p]_q^3",
}

BINOMIAL_IDS = ("Q.straub", "Q.clark", "Q.andrews.binom")
# Primes above this bound make the q-binomials impractically long.
Q_PRIME_CAP = 13
PROBE_PRIME = 3


def _make(check_id: str, floor: int):
    binomial = check_id in BINOMIAL_IDS
    probe = check_id in ("Q.clark", "Q.andrews.binom")

    def grid(opt: GridOptions):
        primes = opt.primes(floor, Q_PRIME_CAP)
        if probe and opt.lo <= PROBE_PRIME <= opt.hi:
            primes = [PROBE_PRIME] + primes
        for p in primes:
            if binomial:
                for n in range(4):
                    for m in range(n + 1):
                        yield {"p": p, "n": n, "m": m}
            else:
                yield {"p": p}

    def evaluate(**params):
        lhs, rhs = q_congruence_sides(check_id, **params)
        r = Q_CHECKS[check_id][1]
        witness = "" if lhs == rhs else f"difference {lhs - rhs}"
        return Sides(lhs, rhs, f"Phi_{params['p']}(q)^{r}", witness)

    overrides = [Override({"p": PROBE_PRIME}, "probe below the stated floor")] if probe else []
    domain = (lambda a: None if 0 <= a["m"] <= a["n"] else "need 0 <= m <= n") if binomial else None
    register(check_id, STATEMENTS[check_id], floor, ("p", "n", "m") if binomial else ("p",), grid,
             domain=domain, overrides=overrides, paths="symbolic reduction of both sides")(evaluate)


for _id, (_floor, _r, _fn) in Q_CHECKS.items():
    _make(_id, _floor)
