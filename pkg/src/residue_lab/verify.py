"""Exact-identity suite run by ``residue-lab verify``.

Every identity here holds for all primes, so any failure is a bug in
this package. Each identity scans primes up to the requested bound,
further capped at its own natural limit (``CAPS``).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable

from .census import SymbolPattern, count_pattern_exact, twin_count_formula
from .charsum import partial_sum_profile, qr_sum
from .expsums import (
    REL_TOL,
    fourier_fixed_point_residual,
    gauss_closed_form,
    gauss_sum,
    quad_poly_char_sum,
    quad_poly_closed_form,
    twisted_gauss_sum,
)
from .modcore import mod_pow, prime_array, primitive_root, sqrt_mod
from .symbol import char_qr, char_qr_expsum, euler_criterion, legendre, legendre_table

MAX_BOUND = 10**4

CAPS = {
    "fermat": 2000,
    "sqrt": 2000,
    "primroot": 2000,
    "agreement": 2000,
    "multiplicative": MAX_BOUND,
    "evaluations": MAX_BOUND,
    "reciprocity": 500,
    "balance": 2000,
    "charfn": 200,
    "gauss": MAX_BOUND,
    "twisted": MAX_BOUND,
    "fourier": 500,
    "quadpoly": 500,
    "twin": 5000,
    "qrsum": MAX_BOUND,
    "periodicity": MAX_BOUND,
}


@dataclass
class IdentityResult:
    name: str
    bound: int
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        if len(self.failures) < 20:
            self.failures.append(msg)
        else:
            self.failures[-1] = "... (truncated)"


def _odd_primes(bound: int, strict: bool = False) -> list[int]:
    return prime_array(3, bound - 1 if strict else bound).tolist()


def check_fermat(res: IdentityResult, rng: random.Random) -> None:
    for p in _odd_primes(res.bound, strict=True):
        for b in range(1, p):
            res.checked += 1
            if mod_pow(b, p - 1, p) != 1:
                res.fail(f"{b}^(p-1) != 1 mod {p}")


def check_sqrt(res: IdentityResult, rng: random.Random) -> None:
    for p in _odd_primes(res.bound, strict=True):
        found = 0
        for u in range(1, p):
            res.checked += 1
            roots = sqrt_mod(u, p)
            if (roots is None) != (euler_criterion(u, p) == -1):
                res.fail(f"sqrt_mod({u}, {p}) disagrees with Euler")
            elif roots is not None:
                found += 1
                if any(r * r % p != u for r in roots):
                    res.fail(f"bad root for {u} mod {p}: {roots}")
        if found != (p - 1) // 2:
            res.fail(f"{found} residues mod {p}, expected {(p - 1) // 2}")


def check_primroot(res: IdentityResult, rng: random.Random) -> None:
    for p in _odd_primes(res.bound, strict=True):
        res.checked += 1
        if mod_pow(primitive_root(p), (p - 1) // 2, p) != p - 1:
            res.fail(f"tau^((p-1)/2) != -1 mod {p}")


def check_agreement(res: IdentityResult, rng: random.Random) -> None:
    for p in _odd_primes(res.bound, strict=True):
        for u in range(p):
            res.checked += 1
            if legendre(u, p) != euler_criterion(u, p):
                res.fail(f"legendre != euler at u={u}, p={p}")


def check_multiplicative(res: IdentityResult, rng: random.Random) -> None:
    primes = _odd_primes(res.bound)
    for _ in range(10_000):
        p = rng.choice(primes)
        a, b = rng.randrange(1, p), rng.randrange(1, p)
        res.checked += 1
        if legendre(a * b, p) != legendre(a, p) * legendre(b, p):
            res.fail(f"(ab|p) != (a|p)(b|p) for a={a}, b={b}, p={p}")


def check_evaluations(res: IdentityResult, rng: random.Random) -> None:
    for p in _odd_primes(res.bound, strict=True):
        res.checked += 2
        if legendre(-1, p) != (-1) ** ((p - 1) // 2):
            res.fail(f"(-1|{p}) wrong")
        if legendre(2, p) != (-1) ** ((p * p - 1) // 8):
            res.fail(f"(2|{p}) wrong")


def check_reciprocity(res: IdentityResult, rng: random.Random) -> None:
    primes = _odd_primes(res.bound, strict=True)
    for p in primes:
        for q in primes:
            if p == q:
                continue
            res.checked += 1
            if legendre(q, p) * legendre(p, q) != (-1) ** ((p - 1) * (q - 1) // 4):
                res.fail(f"reciprocity fails for ({p}, {q})")


def check_balance(res: IdentityResult, rng: random.Random) -> None:
    for p in _odd_primes(res.bound, strict=True):
        res.checked += 1
        if int(legendre_table(p).sum(dtype=int)) != 0:
            res.fail(f"symbol does not balance mod {p}")


def check_charfn(res: IdentityResult, rng: random.Random) -> None:
    for p in _odd_primes(res.bound):
        for u in range(1, p):
            res.checked += 1
            if char_qr_expsum(u, p) != char_qr(u, p):
                res.fail(f"exponential-sum indicator wrong at u={u}, p={p}")


def check_gauss(res: IdentityResult, rng: random.Random) -> None:
    for p in _odd_primes(res.bound):
        res.checked += 1
        err = abs(gauss_sum(p) - gauss_closed_form(p))
        if err >= REL_TOL * math.sqrt(p):
            res.fail(f"gauss sum off by {err:.3g} at p={p}")


def check_twisted(res: IdentityResult, rng: random.Random) -> None:
    primes = _odd_primes(res.bound)
    for _ in range(100):
        p = rng.choice(primes)
        s = rng.randrange(1, p)
        res.checked += 1
        err = abs(twisted_gauss_sum(p, s) - gauss_closed_form(p, s))
        if err >= REL_TOL * math.sqrt(p):
            res.fail(f"twisted gauss sum off by {err:.3g} at p={p}, s={s}")


def check_fourier(res: IdentityResult, rng: random.Random) -> None:
    for p in _odd_primes(res.bound):
        for s in range(p):
            res.checked += 1
            r = fourier_fixed_point_residual(p, s)
            if r >= REL_TOL:
                res.fail(f"fixed-point residual {r:.3g} at p={p}, s={s}")


def check_quadpoly(res: IdentityResult, rng: random.Random) -> None:
    for p in _odd_primes(res.bound):
        if p <= 50:
            triples = ((a, b, c) for a in range(1, p) for b in range(p) for c in range(p))
        else:
            triples = ((rng.randrange(1, p), rng.randrange(p), rng.randrange(p)) for _ in range(50))
        for a, b, c in triples:
            res.checked += 1
            if quad_poly_char_sum(p, a, b, c) != quad_poly_closed_form(p, a, b, c):
                res.fail(f"quadratic character sum mismatch p={p}, (a,b,c)=({a},{b},{c})")


def check_twin(res: IdentityResult, rng: random.Random) -> None:
    for p in _odd_primes(res.bound, strict=True):
        for a in range(1, min(p - 1, 20) + 1):
            for e0 in (1, -1):
                for e1 in (1, -1):
                    res.checked += 1
                    brute = count_pattern_exact(p, SymbolPattern((e0, e1), (0, a)))
                    if twin_count_formula(p, a, e0, e1) != brute:
                        res.fail(f"twin formula mismatch p={p}, a={a}, signs=({e0},{e1})")


def check_qrsum(res: IdentityResult, rng: random.Random) -> None:
    for p in _odd_primes(res.bound):
        if p % 4 == 1:
            res.checked += 1
            if qr_sum(p) != p * (p - 1) // 4:
                res.fail(f"residue sum wrong for p={p}")


def check_periodicity(res: IdentityResult, rng: random.Random) -> None:
    for p in _odd_primes(res.bound):
        res.checked += 1
        f = partial_sum_profile(p).values
        if f[-1] != 0:
            res.fail(f"f(p-1) = {f[-1]} for p={p}")


IDENTITIES: dict[str, Callable[[IdentityResult, random.Random], None]] = {
    name[len("check_"):]: fn for name, fn in globals().items() if name.startswith("check_")
}


def run_identities(bound: int, only: list[str] | None = None, seed: int = 0) -> list[IdentityResult]:
    if not 3 <= bound <= MAX_BOUND:
        raise ValueError(f"bound must be in [3, {MAX_BOUND}]")
    names = only or list(IDENTITIES)
    unknown = set(names) - set(IDENTITIES)
    if unknown:
        raise ValueError(f"unknown identities: {', '.join(sorted(unknown))}")
    results = []
    for name in names:
        res = IdentityResult(name, min(bound, CAPS[name]))
        IDENTITIES[name](res, random.Random(f"{seed}:{name}"))
        results.append(res)
    return results
