from __future__ import annotations

import math

import pytest
import sympy

from oracles import frac_mod, harmonic, primes_upto, wolstenholme_quotient
from wolstenholme import hunter
from wolstenholme.errors import (CapExceeded, CheckpointCorrupt, FastMethodNotValidated, InvalidRange,
                                 NotPrime, ResumeMismatch)
from wolstenholme.hunter import (HuntCheckpoint, Witness, converse_candidate, converse_scan,
                                 irregular_pair_check, validate_fast_method, w5_scan, witness,
                                 wolstenholme_scan)
from wolstenholme.primes import factor_with_table, primes_between, primes_in_segment, segments, \
    smallest_prime_factors


# sieve

def test_segmented_sieve_matches_sympy():
    assert primes_between(2, 20000) == primes_upto(20000)
    got = []
    for a, b in segments(10 ** 6, 10 ** 6 + 50000, 4096):
        got.extend(int(p) for p in primes_in_segment(a, b))
    assert got == list(sympy.primerange(10 ** 6, 10 ** 6 + 50001))


def test_factor_table_matches_sympy():
    spf = smallest_prime_factors(5000)
    for n in range(2, 5001):
        assert factor_with_table(n, spf) == sympy.factorint(n)


# Wolstenholme prime scans

def test_scan_small_range_empty():
    for p in primes_upto(100):
        if p >= 7:
            assert wolstenholme_quotient(p) % p != 0
    assert wolstenholme_scan(5, 100).hits == []
    assert wolstenholme_scan(5, 100, "direct").hits == []


def test_scan_finds_first_known_prime():
    assert wolstenholme_scan(5, 10 ** 5).hits == [16843]


def test_scan_single_prime_both_methods():
    assert wolstenholme_scan(16843, 16843, "harmonic").hits == [16843]
    assert wolstenholme_scan(16843, 16843, "direct").hits == [16843]


def test_methods_agree_up_to_ten_thousand():
    a = wolstenholme_scan(5, 10 ** 4, "harmonic")
    b = wolstenholme_scan(5, 10 ** 4, "direct")
    assert a.hits == b.hits == []
    assert a.primes_tested == b.primes_tested == len(primes_between(5, 10 ** 4))


@pytest.mark.parametrize("lo, hi", [(16000, 17500), (2124000, 2125000)])
def test_methods_agree_on_windows(lo, hi):
    a = wolstenholme_scan(lo, hi, "harmonic", witnesses=False)
    b = wolstenholme_scan(lo, hi, "direct", witnesses=False)
    assert a.hits == b.hits
    assert len(a.hits) == 1


def test_witness_values():
    w = witness(16843)
    assert w.harmonic == 0 and w.binomial == 1
    w7 = witness(7)
    assert w7.harmonic == frac_mod(harmonic(6), 7 ** 3)
    assert w7.binomial == math.comb(13, 6) % 7 ** 4
    assert Witness.from_text(w7.to_text()) == w7


def test_python_fallback_paths_match_native(monkeypatch):
    native_h = wolstenholme_scan(16000, 17500, "harmonic", witnesses=False).hits
    native_d = wolstenholme_scan(16000, 17500, "direct", witnesses=False).hits
    monkeypatch.setattr(hunter, "HARMONIC_NATIVE_LIMIT", 0)
    monkeypatch.setattr(hunter, "DIRECT_NATIVE_LIMIT", 0)
    assert wolstenholme_scan(16000, 17500, "harmonic", witnesses=False).hits == native_h
    assert wolstenholme_scan(16000, 17500, "direct", witnesses=False).hits == native_d


def test_jobs_do_not_change_output():
    one = wolstenholme_scan(5, 40000, segment_size=4096)
    two = wolstenholme_scan(5, 40000, segment_size=4096, jobs=2)
    assert one.checkpoint.hits == two.checkpoint.hits
    assert one.primes_tested == two.primes_tested


def test_progress_records():
    seen = []
    wolstenholme_scan(5, 20000, segment_size=5000, progress=seen.append)
    assert [r["segment"] for r in seen] == [[5, 5004], [5005, 10004], [10005, 15004], [15005, 20000]]
    assert seen[-1]["done_hi"] == 20000
    assert [p for r in seen for p in r["hits"]] == [16843]


def test_invalid_range():
    with pytest.raises(InvalidRange):
        wolstenholme_scan(3, 100)
    with pytest.raises(InvalidRange):
        wolstenholme_scan(100, 50)


def test_w5_scan_empty():
    assert w5_scan(5, 10 ** 5).hits == []


# the fast method gate

def test_fast_method_requires_permission():
    with pytest.raises(FastMethodNotValidated):
        wolstenholme_scan(5, 100, "fast")


def test_fast_method_blocked_when_validation_fails(monkeypatch):
    monkeypatch.setattr(hunter, "_FAST_VALIDATED", False)
    with pytest.raises(FastMethodNotValidated):
        wolstenholme_scan(5, 100, "fast", allow_fast=True)


def test_fast_method_after_validation():
    assert validate_fast_method()
    fast = wolstenholme_scan(5, 10 ** 5, "fast", allow_fast=True)
    assert fast.hits == [16843]


# checkpoints

def test_checkpoint_resume_after_interruption(tmp_path):
    path = str(tmp_path / "hunt.ckpt")
    full = wolstenholme_scan(5, 60000, segment_size=4096)
    for stop in (1, 4, 5, 14):
        partial = wolstenholme_scan(5, 60000, segment_size=4096, checkpoint_path=path, max_segments=stop)
        assert not partial.checkpoint.complete
        saved = HuntCheckpoint.load(path)
        assert saved.done_hi == partial.checkpoint.done_hi
        resumed = wolstenholme_scan(5, 60000, segment_size=4096, checkpoint_path=path, resume=path)
        assert resumed.checkpoint.complete
        assert resumed.checkpoint.hits == full.checkpoint.hits
        assert HuntCheckpoint.load(path).hits == full.checkpoint.hits


def test_checkpoint_round_trip():
    ck = HuntCheckpoint("wolstenholme", "harmonic", 5, 100, 50, [Witness(16843, 0, 1, 4)], 1.5)
    assert HuntCheckpoint.from_text(ck.to_text()) == ck


def test_checkpoint_digest_detects_tampering(tmp_path):
    ck = HuntCheckpoint("wolstenholme", "harmonic", 5, 100, 50)
    text = ck.to_text().replace("done_hi: 50", "done_hi: 99")
    with pytest.raises(CheckpointCorrupt):
        HuntCheckpoint.from_text(text)
    with pytest.raises(CheckpointCorrupt):
        HuntCheckpoint.from_text("version: 1\n")


def test_resume_mismatch():
    ck = HuntCheckpoint("wolstenholme", "harmonic", 5, 1000, 500)
    with pytest.raises(ResumeMismatch):
        wolstenholme_scan(5, 1000, "direct", resume=ck)
    with pytest.raises(ResumeMismatch):
        wolstenholme_scan(7, 1000, resume=ck)
    with pytest.raises(ResumeMismatch):
        wolstenholme_scan(5, 400, resume=ck)
    with pytest.raises(ResumeMismatch):
        w5_scan(5, 1000, resume=ck)


# irregular pairs

def test_irregular_pair_examples():
    assert irregular_pair_check(16843)
    assert not irregular_pair_check(13)
    assert not irregular_pair_check(11)
    with pytest.raises(NotPrime):
        irregular_pair_check(15)
    with pytest.raises(NotPrime):
        irregular_pair_check(5)


def test_irregular_pair_agrees_with_scan():
    hits = set(wolstenholme_scan(7, 3000).hits)
    for p in primes_between(7, 3000):
        assert irregular_pair_check(p) == (p in hits)


# converse scans

def test_converse_odd_composites():
    res = converse_scan(5, 30000, 1, ["odd-composite"])
    assert res.members(1) == [27173]
    assert 27173 == 29 * 937
    assert converse_candidate(27173, 1) == ("odd-composite", 1)


def test_converse_even_level_three_empty():
    res = converse_scan(2, 10 ** 4, 3, ["even"])
    assert res.members(3) == []


def test_converse_primes_in_w3():
    res = converse_scan(5, 499, 3, ["prime"])
    assert res.members(3) == primes_between(5, 499)


def test_converse_chain_and_oracle():
    res = converse_scan(2, 400, 3)
    for j in (2, 3):
        assert set(res.members(j)) <= set(res.members(j - 1))
    for n in range(2, 401):
        in_w1 = (math.comb(2 * n - 1, n - 1) - 1) % n == 0
        assert (n in res.members(1)) == in_w1, n


def test_converse_errors():
    with pytest.raises(CapExceeded):
        converse_scan(5, 10 ** 6)
    with pytest.raises(InvalidRange):
        converse_scan(5, 100, k=5)
    with pytest.raises(ValueError):
        converse_scan(5, 100, classes=["weird"])
