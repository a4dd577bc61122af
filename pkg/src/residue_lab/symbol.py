"""The quadratic symbol (u|p) and indicator functions of the residues.

Two independent evaluators are provided (binary reciprocity and Euler's
criterion) so each can check the other. ``(0|p)`` is taken to be 0.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .modcore import GuardError, PrimeModulus, as_modulus

EXPSUM_MAX_P = 1000
EXPSUM_TOL = 1e-6
TABLE_CACHE_MAX_P = 1 << 22


def legendre(u: int, m: PrimeModulus | int) -> int:
    """(u|p) via quadratic reciprocity and the supplements for -1 and 2."""
    p = as_modulus(m).p
    a, n = u % p, p
    acc = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                acc = -acc
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            acc = -acc
        a %= n
    return acc if n == 1 else 0


def euler_criterion(u: int, m: PrimeModulus | int) -> int:
    p = as_modulus(m).p
    r = pow(u % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    if r == 1:
        return 1
    if r == p - 1:
        return -1
    raise ArithmeticError(f"u^((p-1)/2) = {r} mod {p}: modulus is not prime")


def legendre_table(m: PrimeModulus | int) -> np.ndarray:
    """chi[u] = (u|p) for u in [0, p), built by marking the squares.

    Tables for p <= 2**22 are cached and returned read-only.
    """
    p = as_modulus(m).p
    if p <= TABLE_CACHE_MAX_P:
        return _cached_table(p)
    return _build_table(p)


@lru_cache(maxsize=256)
def _cached_table(p: int) -> np.ndarray:
    chi = _build_table(p)
    chi.flags.writeable = False
    return chi


def _build_table(p: int) -> np.ndarray:
    chi = np.full(p, -1, dtype=np.int8)
    x = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    chi[(x * x) % p] = 1
    chi[0] = 0
    return chi


def euler_array(values: np.ndarray, m: PrimeModulus | int) -> np.ndarray:
    """Vectorized Euler criterion; needs p < 2**31 so int64 products are exact."""
    p = as_modulus(m).p
    if p >= 1 << 31:
        raise GuardError(f"euler_array needs p < 2**31, got {p}")
    reduced = np.asarray(values, dtype=np.int64) % p
    base = reduced.copy()
    out = np.ones_like(base)
    e = (p - 1) // 2
    while e:
        if e & 1:
            out = out * base % p
        base = base * base % p
        e >>= 1
    out[reduced == 0] = 0
    return np.where(out == p - 1, -1, out).astype(np.int8)


def char_qr(u: int, m: PrimeModulus | int) -> int:
    p = as_modulus(m).p
    if u % p == 0:
        raise ValueError("indicator is defined for nonzero elements only")
    return (1 + legendre(u, p)) // 2


def char_qnr(u: int, m: PrimeModulus | int) -> int:
    p = as_modulus(m).p
    if u % p == 0:
        raise ValueError("indicator is defined for nonzero elements only")
    return (1 - legendre(u, p)) // 2


def _expsum_indicator(u: int, m: PrimeModulus | int, odd: bool) -> int:
    mod = as_modulus(m)
    p = mod.p
    if p > EXPSUM_MAX_P:
        raise GuardError(f"exponential-sum indicator is O(p^2); p={p} exceeds {EXPSUM_MAX_P}")
    if u % p == 0:
        raise ValueError("indicator is defined for nonzero elements only")
    tau = mod.tau
    powers = [pow(tau, 2 * n + odd, p) for n in range(mod.half)]
    diffs = (np.array(powers, dtype=np.int64) - u % p) % p
    steps = np.arange(p, dtype=np.int64)
    # (tau^{2n} - u) * m reduced exactly before scaling to an angle
    angles = 2 * np.pi * ((diffs[:, None] * steps[None, :]) % p) / p
    re = math.fsum(np.cos(angles).ravel()) / p
    im = math.fsum(np.sin(angles).ravel()) / p
    value = round(re)
    if abs(im) >= EXPSUM_TOL or abs(re - value) >= EXPSUM_TOL:
        raise ArithmeticError(f"exponential sum drifted: {re}+{im}i for u={u}, p={p}")
    return value


def char_qr_expsum(u: int, m: PrimeModulus | int) -> int:
    """Residue indicator evaluated as a double exponential sum over even powers of tau."""
    return _expsum_indicator(u, m, odd=False)


def char_qnr_expsum(u: int, m: PrimeModulus | int) -> int:
    """Nonresidue indicator; same sum over odd powers of tau."""
    return _expsum_indicator(u, m, odd=True)
