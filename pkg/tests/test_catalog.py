from __future__ import annotations

import math
from fractions import Fraction

import pytest

from oracles import apery_direct, frac_mod, harmonic
from wolstenholme.catalog import REGISTRY, GridOptions, run_check, select, sweep
from wolstenholme.catalog.sweep import plan
from wolstenholme.errors import ParamsOutOfDomain, UnknownCheckId
from wolstenholme.report import CheckResult, to_jsonl

EXPECTED_IDS = """
W.babbage W.wolstenholme.binom W.glaisher.p4 W.mcintosh.p5 W.zhao.p5 W.tauraso.p6 W.mestrovic.p6
W.mestrovic.p7 W.tauraso.p9 W.mestrovic.p9 W.glaisher.np W.glaisher.bern W.mcintosh.bern W.helou.p6
W.mestrovic.bern.p7 H.wolstenholme.h1 H.wolstenholme.h2 H.alkan H.bayat H.glaisher.gen H.glaisher.m123
H.carlitz H.hong H.slavutskii H.su-yang-li S.granville S.sun-wan S.squares S.integerpart L.ljunggren
L.glaisher.np3 L.jacobsthal L.robbins L.helou.s L.zhao.wp L.helou.p6 L.helou.p4 P.quotient
P.stafford-vandiver P.mestrovic.p8 P.mestrovic.p7 P.mestrovic.bern C.leudesdorf C.mcintosh.modified
C.slavutskii.even C.slavutskii.odd C.slavutskii.bern C.duparc C.hong.multiprime B.chamberland
B.cai-granville B.pan B.mestrovic.recip B.apery B.putnam X.lucas X.kummer
""".split()


def test_registry_covers_every_congruence():
    assert set(EXPECTED_IDS) <= set(REGISTRY)
    q_ids = [cid for cid in REGISTRY if cid.startswith("Q.")]
    assert len(q_ids) == 9
    assert len(REGISTRY) == len(EXPECTED_IDS) + 9
    for check in REGISTRY.values():
        assert check.statement and check.floor >= 2


# run_check examples against independent arithmetic

def test_run_check_wolstenholme_binom():
    assert math.comb(9, 4) % 125 == 1
    res = run_check("W.wolstenholme.binom", p=5)
    assert res.passed and res.asserted
    assert res.lhs == res.rhs == "1"


def test_run_check_harmonic():
    assert harmonic(4).numerator == 25
    assert run_check("H.wolstenholme.h1", p=5).passed


def test_run_check_ljunggren():
    assert math.comb(15, 10) == 3003 == 24 * 125 + 3
    res = run_check("L.ljunggren", p=5, n=3, m=2)
    assert res.passed
    assert res.lhs == "3"


def test_run_check_apery():
    for p in (5, 7):
        for n in range(0, 11):
            res = run_check("B.apery", p=p, n=n)
            assert res.passed
            assert int(res.lhs) == apery_direct(p * n) % p ** 3


def test_run_check_quotient_matches_bernoulli():
    res = run_check("P.quotient", p=13)
    w = (math.comb(25, 12) - 1) // 13 ** 3
    assert res.passed and int(res.lhs) == w % 13


def test_run_check_errors():
    with pytest.raises(UnknownCheckId):
        run_check("bogus.id", p=5)
    with pytest.raises(ParamsOutOfDomain):
        run_check("W.wolstenholme.binom", p=3)
    with pytest.raises(ParamsOutOfDomain):
        run_check("W.wolstenholme.binom", p=9)
    with pytest.raises(ParamsOutOfDomain):
        run_check("W.wolstenholme.binom", p=5, n=2)
    with pytest.raises(ParamsOutOfDomain):
        run_check("L.robbins", p=5, n=1, m=1, a=0, b=1)


def test_pass_flag_is_string_equality():
    with pytest.raises(AssertionError):
        CheckResult("x", {}, True, "1", "2", "5")
    assert not CheckResult("x", {}, False, "1", "2", "5").passed


# documented floor overrides and informative checks

def test_seventh_power_at_seven_uses_sixth_power():
    for form in ("double-sum", "shuffle"):
        res = run_check("W.mestrovic.p7", p=7, form=form)
        assert res.passed and res.modulus == "7^6"
    assert run_check("W.mestrovic.p7", p=11, form="shuffle").modulus == "11^7"


def test_reciprocal_corollary_at_three_is_informative():
    res = run_check("B.mestrovic.recip", p=3, form="third")
    assert not res.passed and not res.asserted
    assert frac_mod(Fraction(5, 2), 27) != frac_mod(Fraction(1, 4), 27)
    assert run_check("B.mestrovic.recip", p=3, form="fourth").passed


def test_chamberland_excluded_triples_are_informative():
    res = run_check("B.chamberland", p=7, form="triple", eps=0, a=0, b=0, m=1)
    assert not res.passed and not res.asserted
    assert res.lhs == str((7 + 1) % 7 ** 3)
    ok = run_check("B.chamberland", p=7, form="triple", eps=1, a=1, b=1, m=1)
    assert ok.passed and ok.asserted


def test_printed_glaisher_sign_is_reported_not_asserted():
    res = run_check("W.glaisher.p4", p=7)
    assert not res.asserted and not res.passed
    assert "W.zhao.p5" in res.note
    assert run_check("W.zhao.p5", p=7).passed


def test_stafford_vandiver_is_comparison_only():
    check = REGISTRY["P.stafford-vandiver"]
    assert not check.asserted
    res = run_check("P.stafford-vandiver", p=11)
    assert not res.asserted and res.passed


def test_conditional_checks_need_the_flag():
    ids = ["P.mestrovic.p8", "P.mestrovic.p7", "P.mestrovic.bern"]
    assert plan(ids, GridOptions(hi=20000)) == []
    gated = plan(ids, GridOptions(hi=20000, conditional=True))
    assert {params["p"] for _, params in gated} == {16843}


# sweep engine

def test_sweep_empty():
    report = sweep([])
    assert report.results == [] and report.ok
    assert report.summary.passed == report.summary.failed == 0


def test_select_patterns():
    assert select(["W.babbage"]) == ["W.babbage"]
    assert "W.babbage" in select(["W.*"]) and all(c.startswith("W.") for c in select(["W.*"]))
    assert select(["nomatch.*"]) == []
    with pytest.raises(UnknownCheckId):
        select(["bogus.id"])


def test_sweep_w_family_small_primes():
    report = sweep(["W.*"], GridOptions(lo=5, hi=97))
    assert report.summary.failed == 0
    asserted = [r for r in report.results if r.asserted]
    assert asserted and all(r.passed for r in asserted)


def test_sweep_apery_grid():
    report = sweep(["B.apery"], GridOptions(lo=5, hi=7, bounds={"n": (0, 10)}))
    assert len(report.results) == 2 * 11
    assert all(r.passed for r in report.results)


def test_sweep_skip_count():
    report = sweep(["W.wolstenholme.binom"], GridOptions(lo=2, hi=13))
    assert report.summary.skipped_below_floor == 2
    assert [r.params["p"] for r in report.results] == [5, 7, 11, 13]


def test_sweep_deterministic_across_jobs():
    opts = GridOptions(lo=2, hi=41)
    pats = ["W.*", "H.*", "L.robbins", "Q.andrews.*"]
    one = sweep(pats, opts, jobs=1)
    two = sweep(pats, opts, jobs=2)
    again = sweep(pats, opts, jobs=1)
    text = to_jsonl(one.results, timing=False)
    assert text == to_jsonl(two.results, timing=False) == to_jsonl(again.results, timing=False)
    keys = [(r.check_id) for r in one.results]
    assert keys == sorted(keys)


def test_on_result_streams_in_order():
    seen = []
    report = sweep(["X.*"], GridOptions(hi=7), on_result=seen.append)
    assert seen == report.results


@pytest.mark.parametrize("check_id", sorted(REGISTRY))
def test_each_check_small_range(check_id):
    report = sweep([check_id], GridOptions(lo=2, hi=23))
    failures = [r for r in report.results if r.failed_assertion]
    assert not failures, failures[:3]
    for r in report.results:
        assert r.passed == (r.lhs == r.rhs)
