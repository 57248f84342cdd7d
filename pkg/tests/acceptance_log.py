"""Collects one status line per acceptance criterion for the terminal summary."""

from __future__ import annotations

LINES: list[str] = []


def record(key: str, title: str, ok: bool, detail: str) -> bool:
    LINES.append(f"[{'PASS' if ok else 'FAIL'}] {key:<3} {title}: {detail}")
    return ok
