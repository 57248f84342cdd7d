"""Wolstenholme-type congruences: residue arithmetic, Bernoulli numbers modulo
prime powers, q-analogues, a catalog of executable congruence checks, and
searches for Wolstenholme primes."""

from __future__ import annotations

from .bernoulli import bernoulli_exact, bernoulli_fraction, bernoulli_mod, wolstenholme_quotient
from .combinatorics import binomial_mod, central_shifted_binomial_mod, harmonic_sum_mod, HarmonicSpec
from .residues import PadicValue, ResidueClass

__version__ = "0.1.0"

__all__ = [
    "HarmonicSpec", "PadicValue", "ResidueClass", "bernoulli_exact", "bernoulli_fraction", "bernoulli_mod",
    "binomial_mod", "central_shifted_binomial_mod", "harmonic_sum_mod", "wolstenholme_quotient",
]
