"""Exact residue arithmetic.

Residues of rationals follow the usual convention: m/n mod M means m * n^-1
when gcd(n, M) = 1.  All values here are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _native
from .errors import NonCoprimeModuli, NonInvertible, NonInvertibleDenominator, ValuationTooNegative

BigRational = Fraction

# Batches shorter than this are not worth the array conversion.
NATIVE_BATCH_MIN = 64


@dataclass(frozen=True)
class ResidueClass:
    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, ResidueClass):
            if other.modulus != self.modulus:
                raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
            return other.value
        if isinstance(other, Fraction):
            return make_residue(other.numerator, other.denominator, self.modulus).value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ResidueClass((self.value + v) % self.modulus, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ResidueClass((self.value - v) % self.modulus, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ResidueClass((v - self.value) % self.modulus, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ResidueClass(self.value * v % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ResidueClass(-self.value % self.modulus, self.modulus)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * inverse(ResidueClass(v, self.modulus))

    def __pow__(self, exponent: int):
        return pow_mod(self, exponent)

    def __eq__(self, other) -> bool:
        if isinstance(other, ResidueClass):
            return self.value == other.value and self.modulus == other.modulus
        if isinstance(other, int):
            return (self.value - other) % self.modulus == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __int__(self) -> int:
        return self.value

    def reduce(self, modulus: int) -> ResidueClass:
        """Image under Z/m -> Z/modulus; modulus must divide m."""
        if self.modulus % modulus:
            raise ValueError(f"{modulus} does not divide {self.modulus}")
        return ResidueClass(self.value % modulus, modulus)

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.modulus})"


def residue(x: int | Fraction, modulus: int) -> ResidueClass:
    """Residue of an integer or a fraction."""
    if isinstance(x, Fraction):
        return make_residue(x.numerator, x.denominator, modulus)
    return ResidueClass(x % modulus, modulus)


def make_residue(numer: int, denom: int, modulus: int) -> ResidueClass:
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    g = math.gcd(denom, modulus)
    if g != 1:
        raise NonInvertibleDenominator(denom, modulus, g)
    if denom == 1:
        return ResidueClass(numer % modulus, modulus)
    return ResidueClass(numer * pow(denom, -1, modulus) % modulus, modulus)


def _extended_gcd(a: int, b: int) -> tuple[int, int]:
    """Return (g, s) with g = gcd(a, b) and s*a = g mod b."""
    r0, r1 = b, a % b
    s0, s1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    return r0, s0


def inverse(x: ResidueClass) -> ResidueClass:
    m = x.modulus
    g, s = _extended_gcd(x.value, m)
    if g != 1:
        raise NonInvertible(x.value, m, g)
    return ResidueClass(s % m, m)


def batch_inverse(xs: Sequence[ResidueClass | int], modulus: int | None = None,
                  native: bool | None = None) -> list[ResidueClass]:
    """Inverses of a batch sharing one modulus via prefix products.

    One extended-Euclid call per batch.  native=None picks the fixed-width
    kernel when the modulus is small enough and the batch long enough; both
    paths give identical results.
    """
    if modulus is None:
        if not xs:
            raise ValueError("empty batch needs an explicit modulus")
        modulus = xs[0].modulus
    vals = []
    for x in xs:
        if isinstance(x, ResidueClass):
            if x.modulus != modulus:
                raise ValueError(f"modulus mismatch: {x.modulus} vs {modulus}")
            vals.append(x.value)
        else:
            vals.append(x % modulus)
    if native is None:
        native = modulus < _native.MAX_NATIVE_MODULUS and len(vals) >= NATIVE_BATCH_MIN
    if native:
        if modulus >= _native.MAX_NATIVE_MODULUS:
            raise ValueError("modulus too large for the fixed-width path")
        out = _batch_inverse_native(vals, modulus)
    else:
        out = batch_inverse_values(vals, modulus)
    return [ResidueClass(v, modulus) for v in out]


def batch_inverse_values(vals: Sequence[int], modulus: int) -> list[int]:
    """Plain-int batch inversion (the arbitrary-precision path)."""
    n = len(vals)
    prefix = [0] * n
    acc = 1 % modulus
    for i, v in enumerate(vals):
        prefix[i] = acc
        acc = acc * v % modulus
    g, t = _extended_gcd(acc, modulus)
    if g != 1:
        for i, v in enumerate(vals):
            gi = math.gcd(v, modulus)
            if gi != 1:
                raise NonInvertible(v, modulus, gi, index=i)
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = prefix[i] * t % modulus
        t = t * vals[i] % modulus
    return out


def _batch_inverse_native(vals: Sequence[int], modulus: int) -> list[int]:
    arr = np.asarray(vals, dtype=np.int64)
    out, bad = _native.batch_inverse(arr, modulus)
    if bad >= 0:
        v = int(vals[bad])
        raise NonInvertible(v, modulus, math.gcd(v, modulus), index=int(bad))
    return out.tolist()


def pow_mod(base: ResidueClass, exponent: int) -> ResidueClass:
    if exponent < 0:
        return pow_mod(inverse(base), -exponent)
    # Python's three-argument pow is square-and-multiply; 0^0 = 1.
    return ResidueClass(pow(base.value, exponent, base.modulus), base.modulus)


def crt_combine(parts: Iterable[ResidueClass]) -> ResidueClass:
    parts = list(parts)
    if not parts:
        raise ValueError("crt_combine needs at least one part")
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            g = math.gcd(parts[i].modulus, parts[j].modulus)
            if g != 1:
                raise NonCoprimeModuli(parts[i].modulus, parts[j].modulus, g)
    value, modulus = parts[0].value, parts[0].modulus
    for part in parts[1:]:
        # value + modulus * t = part.value mod part.modulus
        t = (part.value - value) * pow(modulus, -1, part.modulus) % part.modulus
        value += modulus * t
        modulus *= part.modulus
    return ResidueClass(value % modulus, modulus)


def valuation(x: int | Fraction, p: int) -> int | None:
    """p-adic valuation of a nonzero rational; None for zero."""
    x = Fraction(x)
    if x == 0:
        return None
    return _vp(x.numerator, p) - _vp(x.denominator, p)


def _vp(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicValue:
    """p^valuation * unit, with unit known modulo p^precision.

    valuation is None for the zero value (known to be 0 modulo p^precision).
    """

    prime: int
    valuation: int | None
    unit: ResidueClass
    precision: int

    def __post_init__(self) -> None:
        if self.precision < 1:
            raise ValueError("precision must be >= 1")
        if self.unit.modulus != self.prime ** self.precision:
            raise ValueError("unit modulus must be prime**precision")
        if self.valuation is not None and self.unit.value % self.prime == 0:
            raise ValueError("unit part must be coprime to the prime")
        if self.valuation is None and self.unit.value != 0:
            raise ValueError("zero must carry a zero unit")

    @classmethod
    def zero(cls, p: int, e: int) -> PadicValue:
        return cls(p, None, ResidueClass(0, p ** e), e)

    @property
    def is_zero(self) -> bool:
        return self.valuation is None

    def reduce(self, e: int) -> PadicValue:
        """Same value at lower precision e <= precision."""
        if e > self.precision:
            raise ValueError(f"cannot raise precision {self.precision} to {e}")
        return PadicValue(self.prime, self.valuation, self.unit.reduce(self.prime ** e), e)

    def to_fraction(self) -> Fraction:
        """A rational representative, exact modulo p^(valuation + precision)."""
        if self.valuation is None:
            return Fraction(0)
        return Fraction(self.unit.value) * Fraction(self.prime) ** self.valuation

    def residue(self, k: int) -> ResidueClass:
        """The value modulo p^k (needs valuation >= 0 and k <= valuation + precision)."""
        p = self.prime
        if self.valuation is None:
            if k > self.precision:
                raise ValueError("not enough precision")
            return ResidueClass(0, p ** k)
        if self.valuation < 0:
            raise NonInvertibleDenominator(p, p ** k, p)
        if k > self.valuation + self.precision:
            raise ValueError("not enough precision")
        return ResidueClass(self.unit.value * p ** self.valuation, p ** k)

    def __str__(self) -> str:
        if self.valuation is None:
            return f"0 + O({self.prime}^{self.precision})"
        return f"{self.prime}^{self.valuation} * {self.unit.value} + O({self.prime}^{self.valuation + self.precision})"


def padic_normalize(x: int | Fraction, p: int, e: int) -> PadicValue:
    x = Fraction(x)
    if x == 0:
        return PadicValue.zero(p, e)
    v = valuation(x, p)
    if v < -1:
        raise ValuationTooNegative(f"v_{p}({x}) = {v} < -1")
    u = x / Fraction(p) ** v
    return PadicValue(p, v, make_residue(u.numerator, u.denominator, p ** e), e)
