"""Least quadratic nonresidue n_p and the statistics built on it."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from ._parallel import ordered_map
from .modcore import GuardError, PrimeModulus, PrimeRange, as_modulus, is_prime, prime_array
from .symbol import legendre, legendre_table

DISTRIBUTION_MAX_X = 10**8
SYNOPSIS_EPS = 0.01
SCALE_CONSTANT = 20
WINDOW = 1 << 20

_SMALL_PRIMES: list[int] = prime_array(2, 2000).tolist()
_PRIME_INDEX = {q: i + 1 for i, q in enumerate(_SMALL_PRIMES)}


def prime_candidates() -> Iterator[int]:
    """2, 3, 5, ... without bound."""
    yield from _SMALL_PRIMES
    n = _SMALL_PRIMES[-1] + 2
    while True:
        if is_prime(n):
            yield n
        n += 2


def nth_prime(n: int) -> int:
    if n < 1:
        raise ValueError("prime index starts at 1")
    if n <= len(_SMALL_PRIMES):
        return _SMALL_PRIMES[n - 1]
    for i, q in enumerate(prime_candidates(), start=1):
        if i == n:
            return q
    raise AssertionError("unreachable")


def prime_index(q: int) -> int:
    """n such that q is the n-th prime."""
    if q in _PRIME_INDEX:
        return _PRIME_INDEX[q]
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    return int(np.count_nonzero(prime_array(2, q)))


def least_nonresidue(m: PrimeModulus | int) -> int:
    """Smallest n >= 2 with (n|p) = -1; only primes are tried."""
    p = as_modulus(m).p
    for q in prime_candidates():
        if legendre(q, p) == -1:
            return q
    raise AssertionError("unreachable")


def _symbol_of_small_prime(q: int, primes: np.ndarray) -> np.ndarray:
    """(q|p) for an array of odd primes p, by reciprocity (no modular powers)."""
    if q == 2:
        r = primes % 8
        return np.where((r == 1) | (r == 7), 1, -1)
    tbl = legendre_table(q).astype(np.int64)
    flip = np.where((primes % 4 == 3) & (q % 4 == 3), -1, 1)
    return tbl[primes % q] * flip


def least_nonresidues(primes: np.ndarray) -> np.ndarray:
    """Vectorized n_p for an array of odd primes."""
    primes = np.asarray(primes, dtype=np.int64)
    out = np.zeros_like(primes)
    for q in prime_candidates():
        todo = np.flatnonzero(out == 0)
        if todo.size == 0:
            break
        hit = _symbol_of_small_prime(q, primes[todo]) == -1
        out[todo[hit]] = q
    return out


def scale_of(p: int) -> float:
    """(ln p)(ln ln p)."""
    return math.log(p) * math.log(math.log(p))


@dataclass(frozen=True)
class NonresidueRecord:
    p: int
    n_p: int
    scale: float
    c_p: float

    @property
    def index(self) -> int:
        return prime_index(self.n_p)

    @property
    def tabulated_scale(self) -> float:
        return round(self.scale, 2)

    @property
    def tabulated_c_p(self) -> float:
        # The published table divides by the scale already rounded to 2 decimals.
        return self.n_p / self.tabulated_scale

    def to_row(self) -> dict:
        return {"p": self.p, "n_p": self.n_p, "scale": self.tabulated_scale, "c_p": self.tabulated_c_p}


def record_for(m: PrimeModulus | int) -> NonresidueRecord:
    p = as_modulus(m).p
    n_p = least_nonresidue(p)
    scale = scale_of(p)
    return NonresidueRecord(p=p, n_p=n_p, scale=scale, c_p=n_p / scale)


def _odd_prime_windows(lo: int, hi: int) -> Iterator[np.ndarray]:
    for start in range(max(lo, 3), hi + 1, WINDOW):
        yield prime_array(start, min(start + WINDOW - 1, hi))


def smallest_prime_attaining(n: int, search_bound: int) -> int | None:
    """Least prime p <= search_bound whose least nonresidue is the n-th prime."""
    target = nth_prime(n)
    for primes in _odd_prime_windows(3, search_bound):
        hits = np.flatnonzero(least_nonresidues(primes) == target)
        if hits.size:
            return int(primes[hits[0]])
    return None


@dataclass(frozen=True)
class TableRow:
    n: int
    p_n: int
    record: NonresidueRecord | None

    def to_row(self) -> dict:
        rec = self.record
        return {
            "n": self.n,
            "p_n": self.p_n,
            "p": rec.p if rec else None,
            "scale": rec.tabulated_scale if rec else None,
            "c_p": rec.tabulated_c_p if rec else None,
        }


def nonresidue_table(n_max: int, search_bound: int) -> list[TableRow]:
    """For n = 1..n_max, the smallest prime p <= search_bound with n_p = p_n."""
    targets = {nth_prime(n): n for n in range(1, n_max + 1)}
    first: dict[int, int] = {}
    for primes in _odd_prime_windows(3, search_bound):
        values = least_nonresidues(primes)
        for q in set(targets) - set(first):
            hits = np.flatnonzero(values == q)
            if hits.size:
                first[q] = int(primes[hits[0]])
        if len(first) == len(targets):
            break
    rows = []
    for q, n in sorted(targets.items(), key=lambda kv: kv[1]):
        p = first.get(q)
        rec = None if p is None else NonresidueRecord(p, q, scale_of(p), q / scale_of(p))
        rows.append(TableRow(n=n, p_n=q, record=rec))
    return rows


@dataclass
class DistributionReport:
    x: int
    counts: dict[int, int] = field(default_factory=dict)
    total: int = 0
    sum_np: int = 0

    @property
    def mean(self) -> float:
        return self.sum_np / self.total

    def frequency(self, n: int) -> float:
        return self.counts.get(n, 0) / self.total

    @property
    def frequencies(self) -> dict[int, float]:
        return {n: c / self.total for n, c in sorted(self.counts.items())}

    def to_rows(self) -> list[dict]:
        rows = [
            {"type": "bin", "n": n, "p_n": nth_prime(n), "count": c,
             "frequency": c / self.total, "geometric": 2.0**-n, "mean": None}
            for n, c in sorted(self.counts.items())
        ]
        rows.append({"type": "summary", "n": None, "p_n": None, "count": self.total,
                     "frequency": sum(self.counts.values()) / self.total, "geometric": None,
                     "mean": self.mean})
        return rows


def _distribution_part(bounds: tuple[int, int]) -> tuple[Counter, int, int]:
    lo, hi = bounds
    counts: Counter = Counter()
    total = sum_np = 0
    for primes in _odd_prime_windows(lo, hi):
        values = least_nonresidues(primes)
        counts.update(values.tolist())
        total += int(values.size)
        sum_np += int(values.sum())
    return counts, total, sum_np


def distribution(x: int, workers: int = 1) -> DistributionReport:
    """Counts of n_p = p_n over all odd primes p <= x, plus the mean of n_p."""
    if x > DISTRIBUTION_MAX_X:
        raise GuardError(f"x must be <= {DISTRIBUTION_MAX_X}")
    if x < 3:
        raise ValueError("x must be >= 3")
    parts = [(r.lo, r.hi) for r in PrimeRange(3, x).split(max(1, workers) * 4)]
    report = DistributionReport(x=x)
    merged: Counter = Counter()
    for counts, total, sum_np in ordered_map(_distribution_part, parts, workers):
        merged.update(counts)
        report.total += total
        report.sum_np += sum_np
    report.counts = {prime_index(q): c for q, c in sorted(merged.items())}
    return report


def geometric_mean_limit(terms: int = 200) -> float:
    """sum_n p_n / 2^n, truncated."""
    return math.fsum(nth_prime(n) / 2.0**n for n in range(1, terms + 1))


@dataclass(frozen=True)
class SynopsisBound:
    name: str
    value: float
    satisfied: bool


def bound_synopsis(m: PrimeModulus | int) -> list[SynopsisBound]:
    p = as_modulus(m).p
    n_p = least_nonresidue(p)
    bounds = [
        ("sqrt_p_plus_1", math.sqrt(p) + 1),
        ("burgess_exponent", p ** (1 / (4 * math.sqrt(math.e)) + SYNOPSIS_EPS)),
        ("grh_2_log2", 2 * math.log(p) ** 2),
        ("c20_loglog", SCALE_CONSTANT * scale_of(p)),
    ]
    return [SynopsisBound(name, value, n_p <= value) for name, value in bounds]
