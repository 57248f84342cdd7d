"""Searches: Wolstenholme primes, the mod p^5 audit, irregular pairs (p, p-3)
and composite n with C(2n-1, n-1) = 1 mod n^k.

Prime scans walk a segmented sieve; each segment is an immutable descriptor
handed to a stateless worker, and results are merged in ascending order by
the single process that owns the checkpoint file.
"""

from __future__ import annotations

import hashlib
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _native
from .bernoulli import b_pminus3_fast_native, bernoulli_mod
from .combinatorics import (
    HarmonicSpec, binomial_mod, binomial_mod_composite, central_shifted_binomial_mod, harmonic_sum_mod,
    lucas_binomial_mod_p,
)
from .errors import (
    CapExceeded, CheckpointCorrupt, FastMethodNotValidated, InvalidRange, NotPrime, ResumeMismatch,
)
from .primes import (
    DEFAULT_SEGMENT, factor_with_table, isprime, primes_between, primes_in_segment, segments, small_primes,
    smallest_prime_factors,
)

CHECKPOINT_VERSION = 1
METHODS = ("harmonic", "direct", "fast")
KINDS = ("wolstenholme", "w5")
# The fast formula is trusted only after it matches the Bernoulli oracle on this range.
FAST_VALIDATION_RANGE = (11, 499)
FAST_MIN_PRIME = 11
# Largest n the converse scan accepts unless the caller raises the budget.
CONVERSE_BUDGET = 200_000
CONVERSE_CLASSES = ("prime", "prime-power", "odd-composite", "even")


# Witnesses.

@dataclass(frozen=True)
class Witness:
    """Residues certifying a hit: H_{p-1} mod p^3 and C(2p-1, p-1) mod p^4 (or p^5)."""

    p: int
    harmonic: int
    binomial: int
    binomial_exponent: int = 4

    def to_text(self) -> str:
        return f"{self.p}:H={self.harmonic}:C={self.binomial}:e={self.binomial_exponent}"

    @classmethod
    def from_text(cls, text: str) -> Witness:
        p, h, c, e = text.split(":")
        return cls(int(p), int(h[2:]), int(c[2:]), int(e[2:]))


def witness(p: int, exponent: int = 4) -> Witness:
    """Recompute both residues for p with the big-integer code paths."""
    h = harmonic_sum_mod(HarmonicSpec(1, p, p ** 3)).value
    c = central_shifted_binomial_mod(p, exponent).value
    return Witness(p, h, c, exponent)


# Checkpoints.

@dataclass
class HuntCheckpoint:
    kind: str
    method: str
    lo: int
    hi: int
    done_hi: int
    hits: list[Witness] = field(default_factory=list)
    wall_time: float = 0.0
    version: int = CHECKPOINT_VERSION

    @property
    def complete(self) -> bool:
        return self.done_hi >= self.hi

    @property
    def hit_primes(self) -> list[int]:
        return [w.p for w in self.hits]

    def _payload(self) -> list[str]:
        return [
            f"version: {self.version}",
            f"kind: {self.kind}",
            f"method: {self.method}",
            f"lo: {self.lo}",
            f"hi: {self.hi}",
            f"done_hi: {self.done_hi}",
            "hits: " + " ".join(w.to_text() for w in self.hits),
            f"wall_time: {self.wall_time:.3f}",
        ]

    def to_text(self) -> str:
        payload = self._payload()
        digest = hashlib.sha256("\n".join(payload).encode()).hexdigest()
        return "# wolstenholme hunt checkpoint\n" + "\n".join(payload) + f"\ndigest: {digest}\n"

    @classmethod
    def from_text(cls, text: str) -> HuntCheckpoint:
        lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
        if not lines or not lines[-1].startswith("digest: "):
            raise CheckpointCorrupt("missing digest line")
        payload, digest = lines[:-1], lines[-1][len("digest: "):]
        if hashlib.sha256("\n".join(payload).encode()).hexdigest() != digest:
            raise CheckpointCorrupt("digest does not match payload")
        rec = {}
        for ln in payload:
            key, _, value = ln.partition(": ")
            rec[key.rstrip(":")] = value
        try:
            version = int(rec["version"])
            if version != CHECKPOINT_VERSION:
                raise CheckpointCorrupt(f"unsupported checkpoint version {version}")
            hits = [Witness.from_text(t) for t in rec.get("hits", "").split()]
            return cls(rec["kind"], rec["method"], int(rec["lo"]), int(rec["hi"]), int(rec["done_hi"]),
                       hits, float(rec["wall_time"]), version)
        except (KeyError, ValueError) as exc:
            raise CheckpointCorrupt(f"malformed checkpoint: {exc}") from None

    def save(self, path: str) -> None:
        """Write atomically: a temporary sibling file, then rename over the target."""
        tmp = f"{path}.tmp.{os.getpid()}"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(self.to_text())
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str) -> HuntCheckpoint:
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read())


# The fast-method gate.

_FAST_VALIDATED: bool | None = None


def validate_fast_method(lo: int = FAST_VALIDATION_RANGE[0], hi: int = FAST_VALIDATION_RANGE[1]) -> bool:
    """True iff the short cube-reciprocal formula matches B_{p-3} mod p for every prime in [lo, hi]."""
    for p in primes_between(max(lo, FAST_MIN_PRIME), hi):
        if b_pminus3_fast_native(p) != bernoulli_mod(p - 3, p, 1).residue(1).value:
            return False
    return True


def fast_method_validated() -> bool:
    global _FAST_VALIDATED
    if _FAST_VALIDATED is None:
        _FAST_VALIDATED = validate_fast_method()
    return _FAST_VALIDATED


# Prime scans.

@dataclass(frozen=True)
class Segment:
    a: int
    b: int  # exclusive
    kind: str
    method: str


def _scan_segment(seg: Segment) -> tuple[Segment, int, list[int]]:
    base = small_primes(int(np.sqrt(seg.b)) + 2)
    ps = primes_in_segment(seg.a, seg.b, base)
    ps = ps[ps >= 5]
    if ps.size == 0:
        return seg, 0, []
    if seg.method == "harmonic":
        cand = ps[_harmonic_flags(ps)]
    elif seg.method == "direct":
        cand = ps[_direct_flags(ps, 4)]
    else:
        small = ps[ps < FAST_MIN_PRIME]
        big = ps[ps >= FAST_MIN_PRIME]
        if big.size and big[-1] >= 1 << 31:
            raise InvalidRange("the fast pre-filter handles primes below 2^31 only")
        pre = np.concatenate([small, big[_native.stafford_vandiver_zero(big)]])
        cand = pre[_harmonic_flags(pre)] if pre.size else pre
    if seg.kind == "w5" and cand.size:
        cand = cand[_direct_flags(cand, 5)]
    return seg, int(ps.size), sorted(int(p) for p in cand)


@dataclass
class ScanResult:
    checkpoint: HuntCheckpoint
    primes_tested: int = 0

    @property
    def hits(self) -> list[int]:
        return self.checkpoint.hit_primes


def _check_range(lo: int, hi: int) -> None:
    if lo < 5 or hi < lo:
        raise InvalidRange(f"need 5 <= lo <= hi, got [{lo}, {hi}]")


# Above these bounds the float-assisted kernels would overflow; such primes go
# through the big-integer path instead (correct, but operator-scale slow).
HARMONIC_NATIVE_LIMIT = 1 << 25
DIRECT_NATIVE_LIMIT = _native.MAX_DIGIT_PRIME


def _python_harmonic_hit(p: int) -> bool:
    return harmonic_sum_mod(HarmonicSpec(1, p, p ** 3)).value == 0


def _python_direct_hit(p: int, e: int) -> bool:
    return central_shifted_binomial_mod(p, e).value == 1


def _harmonic_flags(ps: np.ndarray) -> np.ndarray:
    small = ps < HARMONIC_NATIVE_LIMIT
    out = np.zeros(ps.size, dtype=bool)
    out[small] = _native.harmonic_hits(ps[small])
    for i in np.flatnonzero(~small):
        out[i] = _python_harmonic_hit(int(ps[i]))
    return out


def _direct_flags(ps: np.ndarray, e: int) -> np.ndarray:
    small = ps < DIRECT_NATIVE_LIMIT
    out = np.zeros(ps.size, dtype=bool)
    out[small] = _native.direct_hits(ps[small], e)
    for i in np.flatnonzero(~small):
        out[i] = _python_direct_hit(int(ps[i]), e)
    return out


def wolstenholme_scan(lo: int, hi: int, method: str = "harmonic", *, kind: str = "wolstenholme",
                      segment_size: int = DEFAULT_SEGMENT, jobs: int = 1,
                      checkpoint_path: str | None = None, resume: HuntCheckpoint | str | None = None,
                      allow_fast: bool = False, progress: Callable[[dict], None] | None = None,
                      max_segments: int | None = None, witnesses: bool = True) -> ScanResult:
    """Primes p in [lo, hi] with C(2p-1, p-1) = 1 mod p^4 (kind "w5": mod p^5).

    method "harmonic" tests H_{p-1} = 0 mod p^3; "direct" tests the binomial
    itself; "fast" pre-filters with the short B_{p-3} formula and confirms
    with the harmonic test.  max_segments stops early (the checkpoint then
    records how far the scan got).
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    _check_range(lo, hi)
    if method == "fast" and not (allow_fast and fast_method_validated()):
        raise FastMethodNotValidated(
            "the fast method needs --allow-experimental-fast and a passing validation against the oracle")
    if isinstance(resume, str):
        resume = HuntCheckpoint.load(resume)
    if resume is not None:
        if (resume.kind, resume.method, resume.lo) != (kind, method, lo) or resume.done_hi > hi:
            raise ResumeMismatch(
                f"checkpoint is {resume.kind}/{resume.method} from {resume.lo} done to {resume.done_hi}; "
                f"requested {kind}/{method} over [{lo}, {hi}]")
        ckpt = HuntCheckpoint(kind, method, lo, hi, resume.done_hi, list(resume.hits), resume.wall_time)
    else:
        ckpt = HuntCheckpoint(kind, method, lo, hi, lo - 1)
    start = ckpt.done_hi + 1
    segs = [Segment(a, b, kind, method) for a, b in segments(start, hi, segment_size)] if start <= hi else []
    if max_segments is not None:
        segs = segs[:max_segments]
    result = ScanResult(ckpt)
    t0 = time.perf_counter()
    base_wall = ckpt.wall_time
    exponent = 5 if kind == "w5" else 4

    def absorb(seg: Segment, count: int, found: list[int]) -> None:
        for p in found:
            ckpt.hits.append(witness(p, exponent) if witnesses else Witness(p, 0, 0, exponent))
        ckpt.done_hi = seg.b - 1
        ckpt.wall_time = base_wall + time.perf_counter() - t0
        result.primes_tested += count
        if checkpoint_path:
            ckpt.save(checkpoint_path)
        if progress:
            progress({"kind": kind, "method": method, "segment": [seg.a, seg.b - 1], "primes": count,
                      "hits": found, "done_hi": ckpt.done_hi, "hi": hi})

    if jobs > 1 and len(segs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for seg, count, found in pool.map(_scan_segment, segs):
                absorb(seg, count, found)
    else:
        for seg in segs:
            absorb(*_scan_segment(seg))
    if checkpoint_path and not segs:
        ckpt.save(checkpoint_path)
    return result


def w5_scan(lo: int, hi: int, **kwargs) -> ScanResult:
    """Primes with C(2p-1, p-1) = 1 mod p^5 (expected: none)."""
    return wolstenholme_scan(lo, hi, kwargs.pop("method", "harmonic"), kind="w5", **kwargs)


def irregular_pair_check(p: int) -> bool:
    """True iff p divides the numerator of B_{p-3}."""
    if not isinstance(p, int) or p < 7 or not isprime(p):
        raise NotPrime(f"{p} is not a prime >= 7")
    return bernoulli_mod(p - 3, p, 1).valuation != 0


# Converse scan.

def classify(n: int, factors: dict[int, int]) -> str:
    if n % 2 == 0:
        return "even"
    if len(factors) == 1:
        return "prime" if next(iter(factors.values())) == 1 else "prime-power"
    return "odd-composite"


@dataclass
class ConverseHit:
    n: int
    tag: str
    level: int  # largest j <= k with C(2n-1, n-1) = 1 mod n^j


@dataclass
class ConverseResult:
    """Every scanned n in W_1, with the deepest level j <= k it reaches."""

    lo: int
    hi: int
    k: int
    classes: tuple[str, ...]
    hits: list[ConverseHit] = field(default_factory=list)

    def members(self, j: int | None = None) -> list[int]:
        """n in the scanned classes with C(2n-1, n-1) = 1 mod n^j (default j = k)."""
        j = self.k if j is None else j
        if not 1 <= j <= self.k:
            raise ValueError(f"level must be between 1 and {self.k}")
        return [h.n for h in self.hits if h.level >= j]


def central_residue(n: int, e: int, factors: dict[int, int] | None = None) -> int:
    """C(2n-1, n-1) mod n^e."""
    modulus = n ** e
    if factors is None:
        return binomial_mod(2 * n - 1, n - 1, modulus).value
    fac = {q: a * e for q, a in factors.items()}
    return binomial_mod_composite(2 * n - 1, n - 1, modulus, fac).value


def _passes_lucas(n: int, factors: dict[int, int]) -> bool:
    # Necessary condition: C(2n-1, n-1) = 1 modulo every prime factor of n.
    return all(lucas_binomial_mod_p(2 * n - 1, n - 1, q).value == 1 for q in factors)


def _levels(n: int, tag: str, factors: dict[int, int], k: int) -> list[bool]:
    """Membership of n in W_1..W_k, each level computed on its own."""
    if tag == "prime":
        if n >= DIRECT_NATIVE_LIMIT:
            return [_python_direct_hit(n, j) for j in range(1, k + 1)]
        return [bool(_native.central_binomial_is_one(n, j)) for j in range(1, k + 1)]
    return [(central_residue(n, j, factors) - 1) % n ** j == 0 for j in range(1, k + 1)]


def converse_scan(lo: int, hi: int, k: int = 1, classes: tuple[str, ...] | list[str] | None = None,
                  budget: int = CONVERSE_BUDGET) -> ConverseResult:
    """All n in [lo, hi] of the selected classes lying in W_1, with their level up to k.

    Primes use the digit-vector kernel; other n are pre-filtered by Lucas'
    theorem at each prime factor and the survivors evaluated mod n^j through
    prime-power factorials and CRT.  Levels are computed independently, so
    the chain W_k within W_(k-1) is checked rather than assumed.
    """
    if not 1 <= k <= 4:
        raise InvalidRange("k must be between 1 and 4")
    if lo < 2 or hi < lo:
        raise InvalidRange(f"need 2 <= lo <= hi, got [{lo}, {hi}]")
    if hi > budget:
        raise CapExceeded(f"upper bound {hi} exceeds the converse budget {budget}")
    classes = tuple(CONVERSE_CLASSES if classes is None else classes)
    for c in classes:
        if c not in CONVERSE_CLASSES:
            raise ValueError(f"unknown class {c!r}")
    spf = smallest_prime_factors(hi)
    out = ConverseResult(lo, hi, k, classes)
    for n in range(lo, hi + 1):
        factors = factor_with_table(n, spf)
        tag = classify(n, factors)
        if tag not in classes or (tag != "prime" and not _passes_lucas(n, factors)):
            continue
        flags = _levels(n, tag, factors, k)
        if any(flags[j] and not flags[j - 1] for j in range(1, k)):
            raise AssertionError(f"W-chain broken at n={n}: levels {flags}")
        level = sum(flags)
        if level:
            out.hits.append(ConverseHit(n, tag, level))
    return out


def converse_candidate(n: int, k: int) -> tuple[str, int]:
    """Targeted single-candidate mode: (class, C(2n-1, n-1) mod n^k)."""
    from .primes import factorint
    factors = factorint(n)
    return classify(n, factors), central_residue(n, k, factors)
