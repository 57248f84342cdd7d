"""Registry of congruence checks and the single-check runner."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from ..errors import ParamsOutOfDomain, UnknownCheckId
from ..primes import isprime, primes_between
from ..qring import QRingElement
from ..report import CheckResult
from ..residues import ResidueClass, residue


@dataclass(frozen=True)
class GridOptions:
    """Parameter ranges for a sweep.  lo/hi bound every prime parameter."""

    lo: int = 2
    hi: int = 499
    conditional: bool = False
    seed: int = 0
    # Optional inclusive bounds on other integer parameters, e.g. {"n": (0, 10)}.
    bounds: dict = field(default_factory=dict)

    def primes(self, floor: int, cap: int | None = None) -> list[int]:
        hi = self.hi if cap is None else min(self.hi, cap)
        return primes_between(max(self.lo, floor), hi)

    def admits(self, params: dict) -> bool:
        for name, (lo, hi) in self.bounds.items():
            v = params.get(name)
            if isinstance(v, int) and not lo <= v <= hi:
                return False
        return True


@dataclass(frozen=True)
class Sides:
    lhs: ResidueClass | QRingElement | int
    rhs: ResidueClass | QRingElement | int
    modulus: str
    witness: str = ""


@dataclass(frozen=True)
class Override:
    """Bindings matching every key/value in `match` are informative, not asserted."""

    match: dict
    reason: str

    def applies(self, params: dict) -> bool:
        return all(params.get(k) == v for k, v in self.match.items())


@dataclass(frozen=True)
class CongruenceCheck:
    id: str
    statement: str
    floor: int
    params: tuple[str, ...]
    evaluate: Callable[..., Sides]
    grid: Callable[[GridOptions], Iterator[dict]]
    domain: Callable[[dict], str | None] | None = None
    asserted: bool = True
    overrides: tuple[Override, ...] = ()
    paths: str = ""
    prime_param: str | None = "p"
    family: str = field(default="")

    def informative_reason(self, params: dict) -> str | None:
        if not self.asserted:
            return "comparison only"
        for o in self.overrides:
            if o.applies(params):
                return o.reason
        return None

    def validate(self, params: dict) -> None:
        if set(params) != set(self.params):
            raise ParamsOutOfDomain(f"{self.id} takes parameters {self.params}, got {tuple(params)}")
        pp = self.prime_param
        if pp is not None:
            p = params[pp]
            if not isinstance(p, int) or not isprime(p):
                raise ParamsOutOfDomain(f"{self.id}: {pp}={p} is not prime")
            if p < self.floor and not any(o.applies(params) for o in self.overrides):
                raise ParamsOutOfDomain(f"{self.id}: {pp}={p} is below the floor {self.floor}")
        if self.domain is not None:
            msg = self.domain(params)
            if msg:
                raise ParamsOutOfDomain(f"{self.id}: {msg}")


REGISTRY: dict[str, CongruenceCheck] = {}


def register(check_id: str, statement: str, floor: int, params: tuple[str, ...], grid, *,
             domain=None, asserted: bool = True, overrides=(), paths: str = "",
             prime_param: str | None = "p"):
    """Decorator registering an evaluator under check_id."""
    def wrap(fn):
        if check_id in REGISTRY:
            raise ValueError(f"duplicate check id {check_id}")
        REGISTRY[check_id] = CongruenceCheck(
            check_id, statement, floor, tuple(params), fn, grid, domain, asserted,
            tuple(overrides), paths, prime_param, check_id.split(".")[0])
        return fn
    return wrap


def get_check(check_id: str) -> CongruenceCheck:
    try:
        return REGISTRY[check_id]
    except KeyError:
        raise UnknownCheckId(check_id) from None


def _text(x) -> str:
    if isinstance(x, ResidueClass):
        return str(x.value)
    return str(x)


def run_check(check_id: str, **params) -> CheckResult:
    check = get_check(check_id)
    check.validate(params)
    t0 = time.perf_counter()
    sides = check.evaluate(**params)
    micros = int((time.perf_counter() - t0) * 1e6)
    lhs, rhs = _text(sides.lhs), _text(sides.rhs)
    reason = check.informative_reason(params)
    passed = lhs == rhs
    note = "; ".join(x for x in (reason, None if passed else sides.witness) if x)
    return CheckResult(check_id, dict(params), passed, lhs, rhs, sides.modulus, micros,
                       reason is None, note)


# Helpers shared by the check definitions.

def mod_label(p: int, e: int) -> str:
    return f"{p}^{e}"


def cong(lhs: int | Fraction | ResidueClass, rhs: int | Fraction | ResidueClass, modulus: int,
         label: str | None = None) -> Sides:
    """Reduce both sides modulo `modulus`."""
    def red(x):
        if isinstance(x, ResidueClass):
            return x.reduce(modulus) if x.modulus != modulus else x
        return residue(x, modulus)
    return Sides(red(lhs), red(rhs), label or str(modulus))


def cong_pe(lhs, rhs, p: int, e: int) -> Sides:
    return cong(lhs, rhs, p ** e, mod_label(p, e))


def exact(lhs: int, rhs: int) -> Sides:
    return Sides(lhs, rhs, "exact")
