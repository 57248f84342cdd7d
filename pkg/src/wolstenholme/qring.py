"""Polynomials in q over the rationals and the quotient rings Q[q]/Phi_p(q)^r."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import NonUnit


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class QPoly:
    """Ascending coefficients; the zero polynomial has no coefficients and degree -1."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def const(cls, c) -> QPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> QPoly:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other) -> QPoly:
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return QPoly(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        return QPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other) -> QPoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> QPoly:
        return _as_poly(other) - self

    def __mul__(self, other) -> QPoly:
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> QPoly:
        out = QPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: QPoly) -> tuple[QPoly, QPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(0, len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                c = c / lead
                quot[i - d] = c
                for j, y in enumerate(other.coeffs):
                    rem[i - d + j] -= c * y
        return QPoly(quot), QPoly(rem[:d] if d > 0 else [])

    def __mod__(self, other: QPoly) -> QPoly:
        return self.divmod(other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def substitute_power(self, k: int) -> QPoly:
        """The polynomial in q^k."""
        out = [Fraction(0)] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return QPoly(out)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "q" if i == 1 else f"q^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _as_poly(x) -> QPoly:
    if isinstance(x, QPoly):
        return x
    if isinstance(x, QRingElement):
        return x.rep
    return QPoly.const(x)


def q_integer(k: int) -> QPoly:
    """[k]_q = 1 + q + ... + q^(k-1)."""
    return QPoly((1,) * k)


def q_factorial(n: int) -> QPoly:
    out = QPoly.const(1)
    for k in range(1, n + 1):
        out = out * q_integer(k)
    return out


@lru_cache(maxsize=None)
def _q_binomial_ints(n: int, m: int) -> tuple[int, ...]:
    if m < 0 or m > n:
        return ()
    if m == 0 or m == n:
        return (1,)
    # C(n, m)_q = C(n-1, m-1)_q + q^m C(n-1, m)_q
    a = _q_binomial_ints(n - 1, m - 1)
    b = _q_binomial_ints(n - 1, m)
    out = [0] * max(len(a), len(b) + m)
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i + m] += x
    return tuple(out)


def q_binomial(n: int, m: int) -> QPoly:
    coeffs = _q_binomial_ints(n, m)
    if any(not isinstance(c, int) for c in coeffs):
        raise AssertionError("Gaussian binomial lost integrality")
    return QPoly(coeffs)


@lru_cache(maxsize=None)
def cyclotomic_power(p: int, r: int) -> QPoly:
    """Phi_p(q)^r for prime p."""
    return q_integer(p) ** r


@dataclass(frozen=True)
class QRingElement:
    rep: QPoly
    p: int
    r: int

    def __post_init__(self) -> None:
        if self.r not in (1, 2, 3):
            raise ValueError("power r must be 1, 2 or 3")
        m = cyclotomic_power(self.p, self.r)
        if self.rep.degree >= m.degree:
            object.__setattr__(self, "rep", self.rep % m)

    def _other(self, other) -> QPoly:
        if isinstance(other, QRingElement):
            if (other.p, other.r) != (self.p, self.r):
                raise ValueError("ring mismatch")
            return other.rep
        return _as_poly(other)

    def __add__(self, other) -> QRingElement:
        return QRingElement(self.rep + self._other(other), self.p, self.r)

    __radd__ = __add__

    def __sub__(self, other) -> QRingElement:
        return QRingElement(self.rep - self._other(other), self.p, self.r)

    def __rsub__(self, other) -> QRingElement:
        return QRingElement(self._other(other) - self.rep, self.p, self.r)

    def __neg__(self) -> QRingElement:
        return QRingElement(-self.rep, self.p, self.r)

    def __mul__(self, other) -> QRingElement:
        return QRingElement(self.rep * self._other(other), self.p, self.r)

    __rmul__ = __mul__

    def __truediv__(self, other) -> QRingElement:
        if not isinstance(other, QRingElement):
            other = reduce_mod_cyclotomic_power(_as_poly(other), self.p, self.r)
        return self * q_ring_inverse(other)

    def __eq__(self, other) -> bool:
        if isinstance(other, QRingElement):
            return (self.p, self.r, self.rep) == (other.p, other.r, other.rep)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.rep, self.p, self.r))

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def is_unit(self) -> bool:
        return not (self.rep % q_integer(self.p)).is_zero()

    def lower(self, r: int) -> QRingElement:
        """Image in Q[q]/Phi_p^r for r <= self.r."""
        return QRingElement(self.rep, self.p, r)

    def __str__(self) -> str:
        return str(self.rep)


def reduce_mod_cyclotomic_power(x: QPoly, p: int, r: int) -> QRingElement:
    return QRingElement(x % cyclotomic_power(p, r), p, r)


def q_ring_inverse(x: QRingElement) -> QRingElement:
    m = cyclotomic_power(x.p, x.r)
    # Extended Euclid on (m, rep): track s with s * rep = remainder mod m.
    r0, r1 = m, x.rep
    s0, s1 = QPoly(), QPoly.const(1)
    while not r1.is_zero():
        quot, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
    if r0.degree != 0:
        raise NonUnit(f"{x.rep} is divisible by Phi_{x.p}(q)")
    return QRingElement(s0 * (1 / r0.coeffs[0]), x.p, x.r)


def _q_power_inverse(k: int, power: int, p: int, r: int) -> QRingElement:
    base = reduce_mod_cyclotomic_power(q_integer(k), p, r)
    if not base.is_unit():
        raise NonUnit(f"[{k}]_q is divisible by Phi_{p}(q)")
    inv = q_ring_inverse(base)
    out = inv
    for _ in range(power - 1):
        out = out * inv
    return out


def q_harmonic(n: int, variant: str, p: int, r: int, power: int = 1) -> QRingElement:
    """sum_{k<=n} c_k/[k]_q^power with c_k = 1 (plain) or q^k (tilde)."""
    if variant not in ("plain", "tilde"):
        raise ValueError(f"unknown variant {variant!r}")
    total = QRingElement(QPoly(), p, r)
    for k in range(1, n + 1):
        term = _q_power_inverse(k, power, p, r)
        if variant == "tilde":
            term = term * QPoly.monomial(k)
        total = total + term
    return total


# q-analogues of the classical congruences.  Each entry: (floor, r, evaluator)
# where the evaluator returns (lhs, rhs) in Q[q]/Phi_p(q)^r, both sides
# computed independently.

def _ring(x: QPoly, p: int, r: int) -> QRingElement:
    return reduce_mod_cyclotomic_power(x, p, r)


def _one_minus_q() -> QPoly:
    return QPoly((1, -1))


def _q_andrews_h(p: int) -> tuple[QRingElement, QRingElement]:
    lhs = q_harmonic(p - 1, "plain", p, 1)
    rhs = _ring(_one_minus_q() * Fraction(p - 1, 2), p, 1)
    return lhs, rhs


def _q_andrews_htilde(p: int) -> tuple[QRingElement, QRingElement]:
    lhs = q_harmonic(p - 1, "tilde", p, 1)
    rhs = _ring(_one_minus_q() * Fraction(-(p - 1), 2), p, 1)
    return lhs, rhs


def _q_shi_pan_h2(p: int) -> tuple[QRingElement, QRingElement]:
    lhs = q_harmonic(p - 1, "plain", p, 2)
    x = _one_minus_q()
    rhs = _ring(x * Fraction(p - 1, 2) + x * x * q_integer(p) * Fraction(p * p - 1, 24), p, 2)
    return lhs, rhs


def _q_shi_pan_sq(p: int) -> tuple[QRingElement, QRingElement]:
    lhs = q_harmonic(p - 1, "plain", p, 1, power=2)
    x = _one_minus_q()
    rhs = _ring(x * x * Fraction(-(p - 1) * (p - 5), 12), p, 1)
    return lhs, rhs


def _q_shi_pan_sqtilde(p: int) -> tuple[QRingElement, QRingElement]:
    lhs = q_harmonic(p - 1, "tilde", p, 1, power=2)
    x = _one_minus_q()
    rhs = _ring(x * x * Fraction(-(p * p - 1), 12), p, 1)
    return lhs, rhs


def _straub_rhs(p: int, n: int, m: int) -> QPoly:
    from math import comb
    qp1 = QPoly.monomial(p) - 1
    corr = qp1 * qp1 * (comb(n, m + 1) * comb(m + 1, 2) * Fraction(p * p - 1, 12))
    return q_binomial(n, m).substitute_power(p * p) - corr


def _q_straub(p: int, n: int, m: int) -> tuple[QRingElement, QRingElement]:
    return _ring(q_binomial(n * p, m * p), p, 3), _ring(_straub_rhs(p, n, m), p, 3)


def _q_clark(p: int, n: int, m: int) -> tuple[QRingElement, QRingElement]:
    lhs = _ring(q_binomial(n * p, m * p), p, 2)
    rhs = _ring(q_binomial(n, m).substitute_power(p * p), p, 2)
    return lhs, rhs


def _q_andrews_binom(p: int, n: int, m: int) -> tuple[QRingElement, QRingElement]:
    lhs = _ring(q_binomial(n * p, m * p), p, 2)
    shift = (n - m) * m * (p * (p - 1) // 2)
    rhs = _ring(QPoly.monomial(shift) * q_binomial(n, m).substitute_power(p), p, 2)
    return lhs, rhs


def _q_wolstenholme(p: int) -> tuple[QRingElement, QRingElement]:
    lhs = _ring(q_binomial(2 * p, p), p, 3)
    qp1 = QPoly.monomial(p) - 1
    rhs = _ring(q_integer(2).substitute_power(p * p) - qp1 * qp1 * Fraction(p * p - 1, 12), p, 3)
    return lhs, rhs


Q_CHECKS = {
    "Q.andrews.h": (3, 1, _q_andrews_h),
    "Q.andrews.htilde": (3, 1, _q_andrews_htilde),
    "Q.shi-pan.h2": (5, 2, _q_shi_pan_h2),
    "Q.shi-pan.sq": (5, 1, _q_shi_pan_sq),
    "Q.shi-pan.sqtilde": (5, 1, _q_shi_pan_sqtilde),
    "Q.straub": (5, 3, _q_straub),
    "Q.clark": (5, 2, _q_clark),
    "Q.andrews.binom": (5, 2, _q_andrews_binom),
    "Q.wolstenholme": (5, 3, _q_wolstenholme),
}


def q_congruence_sides(check_id: str, p: int, **params) -> tuple[QRingElement, QRingElement]:
    from .errors import UnknownCheckId
    if check_id not in Q_CHECKS:
        raise UnknownCheckId(check_id)
    return Q_CHECKS[check_id][2](p, **params)


def q_congruence_check(check_id: str, p: int, **params):
    """Evaluate one q-congruence; the witness on failure is the difference polynomial."""
    import time
    from .report import CheckResult
    t0 = time.perf_counter()
    lhs, rhs = q_congruence_sides(check_id, p, **params)
    r = Q_CHECKS[check_id][1]
    micros = int((time.perf_counter() - t0) * 1e6)
    passed = lhs == rhs
    note = "" if passed else f"difference {lhs - rhs}"
    return CheckResult(check_id, {"p": p, **params}, passed, str(lhs), str(rhs),
                       f"Phi_{p}(q)^{r}", micros, True, note)


def straub_implies_clark(p: int, n: int, m: int) -> bool:
    """The Straub right side reduced mod Phi_p^2 equals the Clark right side."""
    rhs70 = _ring(_straub_rhs(p, n, m), p, 3).lower(2)
    rhs71 = _ring(q_binomial(n, m).substitute_power(p * p), p, 2)
    return rhs70 == rhs71
