"""Exact modular arithmetic over odd prime moduli.

Primality, prime streams, powers, inverses, primitive roots and square
roots. Everything here works on Python ints, so products never overflow;
the 2**62 cap only bounds the supported domain.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator

import numpy as np

MAX_MODULUS = 1 << 62
SEGMENT_SIZE = 1 << 20

# Deterministic for every n < 3.3e24, far beyond MAX_MODULUS.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Above this the base sieve would not fit in memory; fall back to Miller-Rabin.
_MAX_BASE_SIEVE = 1 << 27


class OutOfRangeError(ValueError):
    """Input outside the supported numeric domain."""


class GuardError(ValueError):
    """A runtime guard (size cap or hypothesis of a lemma) was violated."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 0 <= n < 2**62."""
    if n < 0 or n >= MAX_MODULUS:
        raise OutOfRangeError(f"is_prime: {n} outside [0, 2**62)")
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, math.isqrt(limit) + 1):
        if flags[q]:
            flags[q * q :: q] = False
    return np.flatnonzero(flags).astype(np.int64)


def prime_array(lo: int, hi: int) -> np.ndarray:
    """All primes in [lo, hi] as an int64 array (segmented, 2**20 per segment)."""
    lo = max(lo, 2)
    if hi >= MAX_MODULUS:
        raise OutOfRangeError(f"upper bound {hi} outside [0, 2**62)")
    if lo > hi:
        return np.array([], dtype=np.int64)
    chunks = list(_segments(lo, hi))
    return np.concatenate(chunks) if chunks else np.array([], dtype=np.int64)


def _segments(lo: int, hi: int) -> Iterator[np.ndarray]:
    root = math.isqrt(hi)
    if root > _MAX_BASE_SIEVE:
        for start in range(lo, hi + 1, SEGMENT_SIZE):
            stop = min(start + SEGMENT_SIZE - 1, hi)
            yield np.array([n for n in range(start, stop + 1) if is_prime(n)], dtype=np.int64)
        return
    base = _simple_sieve(root)
    for start in range(lo, hi + 1, SEGMENT_SIZE):
        stop = min(start + SEGMENT_SIZE - 1, hi)
        flags = np.ones(stop - start + 1, dtype=bool)
        for q in base:
            q = int(q)
            if q * q > stop:
                break
            first = max(q * q, -(-start // q) * q)
            flags[first - start :: q] = False
        if start < 2:
            flags[: 2 - start] = False
        yield np.flatnonzero(flags).astype(np.int64) + start


@dataclass(frozen=True)
class PrimeRange:
    """Inclusive integer interval whose iteration yields its primes, ascending."""

    lo: int
    hi: int

    @classmethod
    def parse(cls, text: str) -> PrimeRange:
        lo, sep, hi = text.partition(":")
        if not sep:
            raise ValueError(f"range must look like lo:hi, got {text!r}")
        return cls(int(lo), int(hi))

    def __iter__(self) -> Iterator[int]:
        return primes_in(self)

    def split(self, parts: int) -> list[PrimeRange]:
        """Disjoint, ordered sub-ranges covering this one."""
        if self.lo > self.hi:
            return []
        parts = max(1, min(parts, self.hi - self.lo + 1))
        step = -(-(self.hi - self.lo + 1) // parts)
        return [PrimeRange(a, min(a + step - 1, self.hi)) for a in range(self.lo, self.hi + 1, step)]


def primes_in(rng: PrimeRange) -> Iterator[int]:
    if rng.lo > rng.hi:
        return
    for seg in _segments(max(rng.lo, 2), rng.hi):
        yield from seg.tolist()


def _factor_small(n: int, out: dict[int, int], bound: int = 1000) -> int:
    for q in range(2, bound):
        if q * q > n:
            break
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    return n


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"failed to split {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {prime: exponent} of n >= 1."""
    out: dict[int, int] = {}
    n = _factor_small(n, out)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack += [d, m // d]
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class PrimeModulus:
    """A validated odd prime 3 <= p < 2**62.

    ``tau`` (least primitive root) is computed on first access and cached;
    the computation is deterministic, so sharing an instance is safe.
    """

    p: int
    half: int = field(init=False)

    def __post_init__(self) -> None:
        p = self.p
        if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
            raise TypeError(f"modulus must be an int, got {type(p).__name__}")
        p = int(p)
        if p < 3 or p >= MAX_MODULUS:
            raise OutOfRangeError(f"modulus {p} outside [3, 2**62)")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "half", (p - 1) // 2)

    @cached_property
    def tau(self) -> int:
        return _least_primitive_root(self.p)

    def __int__(self) -> int:
        return self.p


_modulus_cache = lru_cache(maxsize=4096)(PrimeModulus)


def as_modulus(m: PrimeModulus | int) -> PrimeModulus:
    """Accept a PrimeModulus or a plain int (validated once, then cached)."""
    if isinstance(m, PrimeModulus):
        return m
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise TypeError(f"modulus must be an int, got {type(m).__name__}")
    return _modulus_cache(int(m))


def mod_pow(b: int, e: int, m: PrimeModulus | int) -> int:
    p = as_modulus(m).p
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return pow(b % p, e, p)


def mod_inv(a: int, m: PrimeModulus | int) -> int:
    p = as_modulus(m).p
    if a % p == 0:
        raise ValueError(f"{a} has no inverse modulo {p}")
    return pow(a, -1, p)


def _least_primitive_root(p: int) -> int:
    if p == 3:
        return 2
    cofactors = [(p - 1) // q for q in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, c, p) != 1 for c in cofactors):
            return g
    raise ArithmeticError(f"no primitive root found for {p}")


def primitive_root(m: PrimeModulus | int) -> int:
    return as_modulus(m).tau


def _first_nonresidue(p: int) -> int:
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    return z


def sqrt_mod(u: int, m: PrimeModulus | int) -> tuple[int, ...] | None:
    """Square roots of u modulo p by Tonelli-Shanks.

    Returns ``(r, p - r)`` with r < p - r, ``(0,)`` for u = 0, and None
    when u is a nonresidue.
    """
    p = as_modulus(m).p
    u %= p
    if u == 0:
        return (0,)
    if pow(u, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        r = pow(u, (p + 1) // 4, p)
    else:
        z = _first_nonresidue(p)
        c = pow(z, q, p)
        r = pow(u, (q + 1) // 2, p)
        t = pow(u, q, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (s - i - 1), p)
            r = r * b % p
            c = b * b % p
            t = t * c % p
            s = i
    return tuple(sorted((r, p - r)))
