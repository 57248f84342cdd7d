"""Check results and their serializations (JSON lines, CSV, text table)."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable

FIELDS = ("check_id", "params", "modulus", "lhs", "rhs", "pass", "micros", "asserted", "note")


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    params: dict
    passed: bool
    lhs: str
    rhs: str
    modulus: str
    micros: int = 0
    asserted: bool = True
    note: str = ""

    def __post_init__(self) -> None:
        if self.passed != (self.lhs == self.rhs):
            raise AssertionError(f"{self.check_id}: pass flag disagrees with lhs/rhs")

    @property
    def failed_assertion(self) -> bool:
        return self.asserted and not self.passed

    def to_record(self, timing: bool = True) -> dict:
        return {
            "check_id": self.check_id,
            "params": dict(self.params),
            "modulus": self.modulus,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
            "micros": self.micros if timing else 0,
            "asserted": self.asserted,
            "note": self.note,
        }

    @classmethod
    def from_record(cls, rec: dict) -> CheckResult:
        return cls(rec["check_id"], dict(rec["params"]), bool(rec["pass"]), rec["lhs"], rec["rhs"],
                   rec["modulus"], int(rec["micros"]), bool(rec.get("asserted", True)), rec.get("note", ""))


@dataclass
class Summary:
    passed: int = 0
    failed: int = 0
    informative_failed: int = 0
    skipped_below_floor: int = 0
    by_check: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        return {
            "passed": self.passed,
            "failed": self.failed,
            "informative_failed": self.informative_failed,
            "skipped_below_floor": self.skipped_below_floor,
        }


def params_text(params: dict) -> str:
    return ",".join(f"{k}={v}" for k, v in params.items())


def to_jsonl(results: Iterable[CheckResult], timing: bool = True) -> str:
    return "".join(json.dumps(r.to_record(timing), separators=(", ", ": ")) + "\n" for r in results)


def to_csv(results: Iterable[CheckResult], timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in results:
        rec = r.to_record(timing)
        rec["params"] = json.dumps(rec["params"], separators=(",", ":"))
        rec["pass"] = "true" if rec["pass"] else "false"
        rec["asserted"] = "true" if rec["asserted"] else "false"
        w.writerow([rec[k] for k in FIELDS])
    return buf.getvalue()


def from_csv(text: str) -> list[CheckResult]:
    rows = csv.DictReader(io.StringIO(text))
    out = []
    for row in rows:
        row = dict(row)
        row["params"] = json.loads(row["params"])
        row["pass"] = row["pass"] == "true"
        row["asserted"] = row["asserted"] == "true"
        out.append(CheckResult.from_record(row))
    return out


def _clip(s: str, width: int) -> str:
    return s if len(s) <= width else s[: width - 3] + "..."


def to_table(results: Iterable[CheckResult], timing: bool = True) -> str:
    rows = [("status", "check", "params", "modulus", "lhs", "rhs", "us")]
    for r in results:
        status = "ok" if r.passed else ("FAIL" if r.asserted else "info")
        rows.append((status, r.check_id, params_text(r.params), _clip(r.modulus, 24),
                     _clip(r.lhs, 30), _clip(r.rhs, 30), str(r.micros if timing else 0)))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n" for row in rows)


def render(results: list[CheckResult], fmt: str, timing: bool = True) -> str:
    if fmt == "json":
        return to_jsonl(results, timing)
    if fmt == "csv":
        return to_csv(results, timing)
    if fmt == "table":
        return to_table(results, timing)
    raise ValueError(f"unknown format {fmt!r}")
