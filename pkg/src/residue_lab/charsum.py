"""Partial sums f(x) = sum_{0 <= n <= x} (n|p) and bounds on them."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .modcore import GuardError, PrimeModulus, as_modulus
from .symbol import legendre, legendre_table

PROFILE_MAX_P = 10**7
BURGESS_MIN_P = 10**7
BURGESS_R = range(1, 7)


def _longest_run(flags: np.ndarray) -> int:
    """Length of the longest block of consecutive True values."""
    if not flags.any():
        return 0
    padded = np.concatenate(([0], flags.astype(np.int8), [0]))
    edges = np.flatnonzero(np.diff(padded))
    return int((edges[1::2] - edges[::2]).max())


@dataclass(frozen=True)
class PartialSumProfile:
    p: int
    values: np.ndarray
    max_abs: int
    longest_inc_run: int
    longest_dec_run: int

    def to_row(self) -> dict:
        pv = pv_bound(self.p)
        return {
            "p": self.p,
            "max_abs": self.max_abs,
            "pv_bound": pv,
            "ratio": self.max_abs / pv,
            "longest_inc_run": self.longest_inc_run,
            "longest_dec_run": self.longest_dec_run,
        }


def partial_sum_profile(m: PrimeModulus | int) -> PartialSumProfile:
    """One pass over a period.

    A strictly increasing stretch f(N) < ... < f(N+H) is H consecutive
    residues N+1..N+H; the zero step at n = 0 ends every run.
    """
    p = as_modulus(m).p
    if p > PROFILE_MAX_P:
        raise GuardError(f"profile needs p <= {PROFILE_MAX_P}")
    chi = legendre_table(p)
    f = np.cumsum(chi, dtype=np.int64)
    return PartialSumProfile(
        p=p,
        values=f,
        max_abs=int(np.abs(f).max()),
        longest_inc_run=_longest_run(chi == 1),
        longest_dec_run=_longest_run(chi == -1),
    )


def partial_sum_at(profile: PartialSumProfile, x: int) -> int:
    """f extended periodically to all x >= 0."""
    return int(profile.values[x % profile.p])


def pv_bound(m: PrimeModulus | int) -> float:
    p = as_modulus(m).p
    return math.sqrt(p) * math.log(p)


@dataclass(frozen=True)
class BoundCheck:
    value: float
    bound: float
    satisfied: bool

    @property
    def ratio(self) -> float:
        return self.value / self.bound


def pv_check(m: PrimeModulus | int) -> BoundCheck:
    """max |f| against sqrt(p) ln p (implied constant 1)."""
    p = as_modulus(m).p
    max_abs = partial_sum_profile(p).max_abs
    bound = pv_bound(p)
    return BoundCheck(max_abs, bound, max_abs <= bound)


def burgess_bound(p: int, n_len: int, r: int) -> float:
    return 2.7 * n_len ** (1 - 1 / r) * p ** ((r + 1) / (4 * r * r)) * math.log(p) ** (1 / r)


def burgess_check(p: int, m_start: int, n_len: int, r: int) -> BoundCheck:
    """|sum over M < n <= M + N of (n|p)| against the explicit Burgess bound."""
    mod = as_modulus(p)
    if mod.p < BURGESS_MIN_P:
        raise GuardError(f"explicit Burgess bound needs p >= {BURGESS_MIN_P}, got {mod.p}")
    if n_len < 1:
        raise ValueError("interval length N must be >= 1")
    if m_start < 0:
        raise ValueError("start M must be non-negative")
    if r not in BURGESS_R:
        raise GuardError(f"r must be in [{BURGESS_R.start}, {BURGESS_R.stop - 1}]")
    total = sum(legendre(n, mod.p) for n in range(m_start + 1, m_start + n_len + 1))
    bound = burgess_bound(mod.p, n_len, r)
    return BoundCheck(abs(total), bound, abs(total) <= bound)


def quadratic_residues(m: PrimeModulus | int) -> list[int]:
    p = as_modulus(m).p
    return sorted({x * x % p for x in range(1, (p - 1) // 2 + 1)})


def qr_sum(m: PrimeModulus | int) -> int:
    """Sum of the nonzero residues; equals p(p-1)/4 when p = 1 mod 4."""
    p = as_modulus(m).p
    if p % 4 != 1:
        raise ValueError(f"identity needs p = 1 mod 4, got p = {p}")
    return sum(quadratic_residues(p))


@dataclass(frozen=True)
class LehmerSum:
    value: int
    degenerate: bool


def lehmer_triple_sum(m: PrimeModulus | int, a: int, b: int) -> LehmerSum:
    """sum_{0 <= n < p} ((n+a)|p)(n|p)((n+b)|p).

    ``degenerate`` is set unless a, b are distinct nonzero squares mod p.
    """
    p = as_modulus(m).p
    chi = legendre_table(p).astype(np.int64)
    n = np.arange(p, dtype=np.int64)
    value = int((chi[(n + a) % p] * chi[n] * chi[(n + b) % p]).sum())
    ok = a % p != b % p and legendre(a, p) == 1 and legendre(b, p) == 1
    return LehmerSum(value, not ok)
