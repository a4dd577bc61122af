"""Exact censuses of quadratic residue / nonresidue patterns.

For a pattern (signs e_i at offsets a_i) the census N(k, p) counts the
u in F_p with ((u + a_i) | p) = e_i for every i, offsets taken mod p.
Any u that makes some u + a_i vanish matches nothing, since the symbol
is 0 there. Counts are compared with the T-term (p-1)^{k+1} / (2^k p^k),
the main terms p/2^k (1 - 1/p)^k and p/2^k, and the envelope
(k + 1)(3 + sqrt p).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from ._parallel import chunked, ordered_map
from .modcore import GuardError, PrimeModulus, PrimeRange, as_modulus, prime_array
from .symbol import euler_array, legendre, legendre_table

MAX_K = 24
MAX_SWEEP_K = 12
MAX_EXACT_P = 1 << 31
TABLE_MAX_P = 1 << 24  # beyond this, symbols come from the vectorized Euler criterion
BLOCK = 1 << 20


@dataclass(frozen=True)
class SymbolPattern:
    signs: tuple[int, ...]
    offsets: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        signs = tuple(int(e) for e in self.signs)
        offsets = tuple(int(a) for a in self.offsets) or tuple(range(len(signs)))
        if not 1 <= len(signs) <= MAX_K:
            raise ValueError(f"pattern length must be in [1, {MAX_K}], got {len(signs)}")
        if any(e not in (1, -1) for e in signs):
            raise ValueError(f"signs must be +1/-1, got {signs}")
        if len(offsets) != len(signs):
            raise ValueError("offsets and signs differ in length")
        if any(b <= a for a, b in zip(offsets, offsets[1:])):
            raise ValueError(f"offsets must be strictly increasing, got {offsets}")
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "offsets", offsets)

    @classmethod
    def parse(cls, text: str, offsets: Iterable[int] = ()) -> SymbolPattern:
        """'+-+' style label -> pattern."""
        lookup = {"+": 1, "-": -1}
        try:
            return cls(tuple(lookup[ch] for ch in text), tuple(offsets))
        except KeyError:
            raise ValueError(f"pattern labels use only '+' and '-', got {text!r}") from None

    @classmethod
    def from_code(cls, code: int, k: int) -> SymbolPattern:
        """Inverse of ``code``: bit k-1-i set means sign +1 at position i."""
        return cls(tuple(1 if code >> (k - 1 - i) & 1 else -1 for i in range(k)))

    @property
    def k(self) -> int:
        return len(self.signs)

    @property
    def code(self) -> int:
        out = 0
        for e in self.signs:
            out = 2 * out + (e == 1)
        return out

    @property
    def label(self) -> str:
        return "".join("+" if e == 1 else "-" for e in self.signs)

    def shifted(self, c: int) -> SymbolPattern:
        return SymbolPattern(self.signs, tuple(a + c for a in self.offsets))


def _symbols(idx: np.ndarray, p: int) -> np.ndarray:
    if p <= TABLE_MAX_P:
        return legendre_table(p)[idx]
    return euler_array(idx, p)


def _count(p: int, pat: SymbolPattern, start: int, length: int) -> int:
    total = 0
    for s in range(0, length, BLOCK):
        u = (start + np.arange(s, min(s + BLOCK, length), dtype=np.int64)) % p
        ok = np.ones(u.shape, dtype=bool)
        for a, e in zip(pat.offsets, pat.signs):
            ok &= _symbols((u + a) % p, p) == e
        total += int(np.count_nonzero(ok))
    return total


def count_pattern_exact(m: PrimeModulus | int, pat: SymbolPattern) -> int:
    p = as_modulus(m).p
    if p >= MAX_EXACT_P:
        raise GuardError(f"exhaustive census needs p < 2**31, got {p}")
    return _count(p, pat, 0, p)


def count_pattern_in_interval(m: PrimeModulus | int, start: int, length: int, pat: SymbolPattern) -> int:
    """Census restricted to u in {start, ..., start + length - 1} (mod p)."""
    p = as_modulus(m).p
    if p >= MAX_EXACT_P:
        raise GuardError(f"census needs p < 2**31, got {p}")
    if not 1 <= length <= p:
        raise ValueError(f"interval length must be in [1, {p}], got {length}")
    return _count(p, pat, start % p, length)


def interval_prediction(length: int, k: int) -> float:
    return length / 2**k


def pattern_histogram(m: PrimeModulus | int, k: int) -> np.ndarray:
    """Counts of all 2^k consecutive-offset patterns, indexed by ``SymbolPattern.code``."""
    p = as_modulus(m).p
    if p > TABLE_MAX_P:
        raise GuardError(f"histogram sweep needs p <= 2**24, got {p}")
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must be in [1, {MAX_K}]")
    chi = legendre_table(p)
    u = np.arange(p, dtype=np.int64)
    code = np.zeros(p, dtype=np.int64)
    valid = np.ones(p, dtype=bool)
    for i in range(k):
        v = chi[(u + i) % p]
        valid &= v != 0
        code = 2 * code + (v == 1)
    return np.bincount(code[valid], minlength=1 << k)


def t_term(k: int, m: PrimeModulus | int) -> Fraction:
    """(p-1)/2^k * (1 - 1/p)^k, exactly."""
    p = as_modulus(m).p
    if k < 1:
        raise ValueError("k must be >= 1")
    return Fraction((p - 1) ** (k + 1), 2**k * p**k)


def t_term_approx(k: int, m: PrimeModulus | int) -> float:
    """The small-k form p / 2^k of the T-term (error O(k))."""
    return as_modulus(m).p / 2**k


def first_order_term(k: int, m: PrimeModulus | int) -> float:
    p = as_modulus(m).p
    return p / 2**k * (1 - 1 / p) ** k


def peralta_bound(k: int, m: PrimeModulus | int) -> float:
    return (k + 1) * (3 + math.sqrt(as_modulus(m).p))


def u_residual(m: PrimeModulus | int, pat: SymbolPattern) -> Fraction:
    """N_exact - T(k, p), kept exact."""
    return count_pattern_exact(m, pat) - t_term(pat.k, m)


def positivity_guaranteed(k: int, m: PrimeModulus | int) -> bool:
    """p > 2^{k+1} (k+1)(3 + sqrt p): the envelope then forces N >= p/2^{k+1} > 0."""
    p = as_modulus(m).p
    return p > 2 ** (k + 1) * peralta_bound(k, p)


def twin_count_formula(m: PrimeModulus | int, a: int, e0: int, e1: int) -> int:
    """Closed form for #{n : (n|p) = e0, (n+a|p) = e1}.

    (p - 2 - e0 (-a|p) - e1 (a|p) - e0 e1) / 4: the sum of (n|p) over
    n != 0, -a is -(-a|p), and that of (n+a|p) is -(a|p).
    """
    p = as_modulus(m).p
    if a % p == 0:
        raise ValueError("shift a must be nonzero mod p")
    if e0 not in (1, -1) or e1 not in (1, -1):
        raise ValueError("signs must be +1/-1")
    num = p - 2 - e0 * legendre(-a, p) - e1 * legendre(a, p) - e0 * e1
    if num % 4:
        raise ArithmeticError(f"twin numerator {num} not divisible by 4 for p={p}")
    return num // 4


@dataclass(frozen=True)
class CensusReport:
    p: int
    pattern: SymbolPattern
    exact_count: int
    t_term: Fraction
    first_order: float
    second_order: float
    residual: Fraction
    peralta_bound: float

    @property
    def k(self) -> int:
        return self.pattern.k

    @property
    def deviation(self) -> float:
        return self.exact_count - self.second_order

    @property
    def within_peralta(self) -> bool:
        return abs(self.deviation) <= self.peralta_bound

    def to_row(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "pattern": self.pattern.label,
            "exact": self.exact_count,
            "t_term": float(self.t_term),
            "p_over_2k": self.second_order,
            "residual": float(self.residual),
            "peralta_bound": self.peralta_bound,
        }


def make_report(p: int, pat: SymbolPattern, exact: int) -> CensusReport:
    t = t_term(pat.k, p)
    return CensusReport(
        p=p,
        pattern=pat,
        exact_count=exact,
        t_term=t,
        first_order=first_order_term(pat.k, p),
        second_order=t_term_approx(pat.k, p),
        residual=exact - t,
        peralta_bound=peralta_bound(pat.k, p),
    )


def census_for_prime(p: int, k_max: int) -> list[CensusReport]:
    out = []
    for k in range(1, k_max + 1):
        hist = pattern_histogram(p, k)
        for code in range(1 << k):
            out.append(make_report(p, SymbolPattern.from_code(code, k), int(hist[code])))
    return out


def _census_chunk(args: tuple[list[int], int]) -> list[CensusReport]:
    primes, k_max = args
    return [r for p in primes for r in census_for_prime(p, k_max)]


def census_sweep(rng: PrimeRange, k_max: int, workers: int = 1) -> Iterator[CensusReport]:
    """All consecutive-offset patterns for k <= k_max and every odd prime in range.

    Ordered by (p, k, pattern code) whatever the worker count.
    """
    if not 1 <= k_max <= MAX_SWEEP_K:
        raise GuardError(f"k_max must be in [1, {MAX_SWEEP_K}] for all-pattern sweeps")
    primes = prime_array(max(rng.lo, 3), rng.hi).tolist()
    if primes and primes[-1] > TABLE_MAX_P:
        raise GuardError("census sweeps are limited to p <= 2**24")
    jobs = [(chunk, k_max) for chunk in chunked(primes, max(1, workers) * 4)]
    for reports in ordered_map(_census_chunk, jobs, workers):
        yield from reports


def residual_summary(reports: Iterable[CensusReport]) -> list[dict]:
    """Max |U| and max |N - p/2^k| per (k, decade of p)."""
    groups: dict[tuple[int, int], dict] = {}
    for r in reports:
        decade = len(str(r.p)) - 1
        g = groups.setdefault(
            (r.k, decade),
            {"k": r.k, "p_from": 10**decade, "p_to": 10 ** (decade + 1) - 1, "reports": 0,
             "max_abs_residual": 0.0, "max_abs_deviation": 0.0, "max_envelope_ratio": 0.0},
        )
        g["reports"] += 1
        g["max_abs_residual"] = max(g["max_abs_residual"], abs(float(r.residual)))
        g["max_abs_deviation"] = max(g["max_abs_deviation"], abs(r.deviation))
        g["max_envelope_ratio"] = max(g["max_envelope_ratio"], abs(r.deviation) / r.peralta_bound)
    return [groups[key] for key in sorted(groups)]
