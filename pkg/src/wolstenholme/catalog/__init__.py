"""Catalog of congruences as named, parameterized checks, and the sweep engine."""

from __future__ import annotations

from . import checks_binomial, checks_harmonic, checks_primes, checks_q, checks_sums  # noqa: F401  (registration)
from .registry import REGISTRY, CongruenceCheck, GridOptions, Override, Sides, get_check, run_check
from .sweep import SweepReport, plan, select, summarize, sweep

__all__ = [
    "REGISTRY", "CongruenceCheck", "GridOptions", "Override", "Sides", "SweepReport",
    "get_check", "plan", "run_check", "select", "summarize", "sweep",
]
