"""Sweep engine: expand grids, run checks (optionally in worker processes),
merge results in canonical order and summarize."""

from __future__ import annotations

import fnmatch
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from ..errors import UnknownCheckId, WolstenholmeError
from ..primes import primes_between
from ..report import CheckResult, Summary
from .registry import REGISTRY, GridOptions, get_check, run_check

CHUNK = 16


@dataclass
class SweepReport:
    results: list[CheckResult] = field(default_factory=list)
    summary: Summary = field(default_factory=Summary)

    @property
    def ok(self) -> bool:
        return self.summary.failed == 0


def select(patterns: Iterable[str] | None) -> list[str]:
    """Check ids matching any of the patterns (shell wildcards), sorted."""
    if patterns is None:
        return sorted(REGISTRY)
    out = set()
    for pat in patterns:
        if any(ch in pat for ch in "*?["):
            out.update(fnmatch.filter(REGISTRY, pat))
        else:
            get_check(pat)
            out.add(pat)
    return sorted(out)


def plan(ids: list[str], options: GridOptions) -> list[tuple[str, dict]]:
    tasks = []
    for cid in ids:
        for params in REGISTRY[cid].grid(options):
            if options.admits(params):
                tasks.append((cid, params))
    return tasks


def skipped_below_floor(ids: list[str], options: GridOptions) -> int:
    """Primes in the requested range that fall below a check's floor, summed over checks."""
    total = 0
    for cid in ids:
        check = REGISTRY[cid]
        if check.prime_param is not None and options.lo < check.floor:
            total += len(primes_between(options.lo, min(options.hi, check.floor - 1)))
    return total


def _run_one(cid: str, params: dict) -> CheckResult:
    try:
        return run_check(cid, **params)
    except (WolstenholmeError, ArithmeticError, ValueError) as exc:
        check = REGISTRY[cid]
        reason = check.informative_reason(params)
        return CheckResult(cid, dict(params), False, f"error: {type(exc).__name__}", "", "n/a", 0,
                           reason is None, str(exc))


def _run_chunk(chunk: list[tuple[str, dict]]) -> list[CheckResult]:
    return [_run_one(cid, params) for cid, params in chunk]


def summarize(results: list[CheckResult], skipped: int = 0) -> Summary:
    s = Summary(skipped_below_floor=skipped)
    for r in results:
        row = s.by_check.setdefault(r.check_id, {"passed": 0, "failed": 0, "informative_failed": 0})
        if r.passed:
            s.passed += 1
            row["passed"] += 1
        elif r.asserted:
            s.failed += 1
            row["failed"] += 1
        else:
            s.informative_failed += 1
            row["informative_failed"] += 1
    return s


def sweep(patterns: Iterable[str] | None = None, options: GridOptions | None = None, jobs: int = 1,
          on_result: Callable[[CheckResult], None] | None = None) -> SweepReport:
    """Run every binding of the selected checks.

    Results come back in canonical order (check id, then grid order) whatever
    the number of worker processes.
    """
    options = options or GridOptions()
    ids = select(patterns)
    tasks = plan(ids, options)
    chunks = [tasks[i:i + CHUNK] for i in range(0, len(tasks), CHUNK)]
    results: list[CheckResult] = []
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_run_chunk, chunks):
                results.extend(part)
                if on_result:
                    for r in part:
                        on_result(r)
    else:
        for chunk in chunks:
            part = _run_chunk(chunk)
            results.extend(part)
            if on_result:
                for r in part:
                    on_result(r)
    return SweepReport(results, summarize(results, skipped_below_floor(ids, options)))


__all__ = ["SweepReport", "select", "plan", "sweep", "summarize", "UnknownCheckId"]
