"""Quadratic-residue analytics: symbols, exponential sums, pattern censuses,
least nonresidues and partial character sums over prime fields."""

from .modcore import PrimeModulus, PrimeRange, is_prime, primes_in
from .symbol import legendre

__all__ = ["PrimeModulus", "PrimeRange", "is_prime", "primes_in", "legendre"]
__version__ = "0.1.0"
