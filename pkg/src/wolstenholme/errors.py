"""Exception types shared across the package."""

from __future__ import annotations


class WolstenholmeError(Exception):
    """Base class for every error raised by this package."""


class NonInvertible(WolstenholmeError, ArithmeticError):
    """A residue shares a factor with its modulus."""

    def __init__(self, value: int, modulus: int, gcd: int, index: int | None = None):
        self.value = value
        self.modulus = modulus
        self.gcd = gcd
        self.index = index
        where = f" at index {index}" if index is not None else ""
        super().__init__(f"{value} is not invertible modulo {modulus} (gcd {gcd}){where}")


class NonInvertibleDenominator(NonInvertible):
    """A fraction's denominator shares a factor with the modulus."""

    def __init__(self, denom: int, modulus: int, gcd: int):
        super().__init__(denom, modulus, gcd)
        self.args = (f"denominator {denom} is not invertible modulo {modulus} (common factor {gcd})",)


class NonCoprimeModuli(WolstenholmeError, ArithmeticError):
    def __init__(self, m1: int, m2: int, gcd: int):
        self.pair = (m1, m2)
        self.gcd = gcd
        super().__init__(f"moduli {m1} and {m2} are not coprime (gcd {gcd})")


class ValuationTooNegative(WolstenholmeError, ArithmeticError):
    pass


class BadFactorization(WolstenholmeError, ValueError):
    pass


class CapExceeded(WolstenholmeError, ValueError):
    pass


class OddIndex(WolstenholmeError, ValueError):
    pass


class PrecisionUnreachable(WolstenholmeError, ArithmeticError):
    pass


class PrecisionCheckFailed(WolstenholmeError, AssertionError):
    """Two computations at different working precision disagreed."""


class NotPrime(WolstenholmeError, ValueError):
    pass


class NonUnit(WolstenholmeError, ArithmeticError):
    pass


class UnknownCheckId(WolstenholmeError, KeyError):
    def __str__(self) -> str:
        return f"unknown check id: {self.args[0]}"


class ParamsOutOfDomain(WolstenholmeError, ValueError):
    pass


class InvalidRange(WolstenholmeError, ValueError):
    pass


class FastMethodNotValidated(WolstenholmeError, RuntimeError):
    pass


class ResumeMismatch(WolstenholmeError, ValueError):
    pass


class CheckpointCorrupt(WolstenholmeError, ValueError):
    pass
