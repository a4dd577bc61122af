import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from residue_lab import census
from residue_lab.census import (
    SymbolPattern,
    census_for_prime,
    census_sweep,
    count_pattern_exact,
    count_pattern_in_interval,
    interval_prediction,
    pattern_histogram,
    peralta_bound,
    positivity_guaranteed,
    residual_summary,
    t_term,
    t_term_approx,
    twin_count_formula,
    u_residual,
)
from residue_lab.modcore import GuardError, PrimeRange, prime_array
from residue_lab.symbol import legendre

PP = SymbolPattern((1, 1))


def brute_count(p, signs, offsets):
    return sum(all(legendre(u + a, p) == e for a, e in zip(offsets, signs)) for u in range(p))


def test_pattern_construction():
    pat = SymbolPattern.parse("+-+")
    assert pat.signs == (1, -1, 1) and pat.offsets == (0, 1, 2)
    assert pat.code == 0b101 and pat.label == "+-+"
    assert SymbolPattern.from_code(0b101, 3) == pat
    assert pat.shifted(4).offsets == (4, 5, 6)
    for bad in [((),), ((1, 0),), ((1,) * 25,), ((1, 1), (1, 0)), ((1, 1), (0,))]:
        with pytest.raises(ValueError):
            SymbolPattern(*bad)
    with pytest.raises(ValueError):
        SymbolPattern.parse("+x")


@pytest.mark.parametrize("p, pat, expected", [
    (11, PP, 2),
    (7, SymbolPattern((1,)), 3),
    (7, PP, 1),
])
def test_count_examples(p, pat, expected):
    assert count_pattern_exact(p, pat) == expected


def test_count_matches_brute_force():
    for p in prime_array(3, 200).tolist():
        for signs in itertools.product((1, -1), repeat=3):
            for offsets in [(0, 1, 2), (0, 2, 5), (1, 4, 9)]:
                pat = SymbolPattern(signs, offsets)
                assert count_pattern_exact(p, pat) == brute_count(p, signs, offsets)


def test_t_term_examples():
    assert t_term(1, 7) == Fraction(18, 7)
    assert t_term(2, 11) == Fraction(250, 121)
    assert t_term_approx(1, 7) == 3.5
    assert abs(float(t_term(1, 1000003)) - 1000003 / 2) < 1
    with pytest.raises(ValueError):
        t_term(0, 7)


def test_u_residual_examples():
    assert u_residual(11, PP) == 2 - Fraction(250, 121)
    assert u_residual(7, SymbolPattern((1,))) == Fraction(3, 7)


@pytest.mark.parametrize("p, a, e0, e1, expected", [(7, 1, 1, 1, 1), (11, 1, 1, 1, 2), (7, 1, -1, -1, 1)])
def test_twin_examples(p, a, e0, e1, expected):
    assert twin_count_formula(p, a, e0, e1) == expected
    assert count_pattern_exact(p, SymbolPattern((e0, e1), (0, a))) == expected


def test_twin_exact_small():
    for p in prime_array(3, 400).tolist():
        for a in range(1, min(p - 1, 20) + 1):
            for e0, e1 in itertools.product((1, -1), repeat=2):
                assert twin_count_formula(p, a, e0, e1) == count_pattern_exact(p, SymbolPattern((e0, e1), (0, a)))


def test_twin_printed_orientation_fails_only_for_3_mod_4():
    # the printed closed form swaps the roles of (a|p) and (-a|p)
    bad = set()
    for p in prime_array(3, 400).tolist():
        for a in range(1, min(p - 1, 20) + 1):
            for e0, e1 in itertools.product((1, -1), repeat=2):
                printed = (p - 2 - e0 * legendre(a, p) - e1 * legendre(-a, p) - e0 * e1) // 4
                if printed != count_pattern_exact(p, SymbolPattern((e0, e1), (0, a))):
                    bad.add((p % 4, e0 == e1))
    assert bad == {(3, False)}


def test_twin_rejects_zero_shift():
    with pytest.raises(ValueError):
        twin_count_formula(7, 14, 1, 1)
    with pytest.raises(ValueError):
        twin_count_formula(7, 1, 0, 1)


def test_partition():
    for p in prime_array(3, 1999).tolist():
        for k in range(1, 7):
            hist = pattern_histogram(p, k)
            assert hist.sum() == p - len({-i % p for i in range(k)})
    offsets = (0, 3, 7)
    for p in (3, 5, 7, 11):
        total = sum(count_pattern_exact(p, SymbolPattern(s, offsets)) for s in itertools.product((1, -1), repeat=3))
        assert total == p - len({-a % p for a in offsets})


def test_histogram_matches_exact_count():
    for p in (3, 5, 7, 101, 1009):
        for k in (1, 2, 3, 5):
            hist = pattern_histogram(p, k)
            for code in range(1 << k):
                assert hist[code] == count_pattern_exact(p, SymbolPattern.from_code(code, k))


def test_peralta_envelope_small_sweep():
    for r in census_sweep(PrimeRange(3, 1000), 8):
        assert r.within_peralta, r.to_row()


def test_interval_examples():
    assert count_pattern_in_interval(11, 0, 11, PP) == 2
    assert count_pattern_in_interval(11, 3, 2, PP) == 2
    assert count_pattern_in_interval(11, 6, 3, PP) == 0
    assert interval_prediction(16, 2) == 4
    for bad in (0, 12):
        with pytest.raises(ValueError):
            count_pattern_in_interval(11, 0, bad, PP)


@given(st.sampled_from(prime_array(3, 300).tolist()), st.integers(), st.integers(min_value=1, max_value=300),
       st.lists(st.sampled_from((1, -1)), min_size=1, max_size=4))
def test_interval_matches_brute_force(p, start, length, signs):
    length = min(length, p)
    pat = SymbolPattern(tuple(signs))
    expected = sum(
        all(legendre(u + a, p) == e for a, e in zip(pat.offsets, pat.signs))
        for u in ((start + i) % p for i in range(length))
    )
    assert count_pattern_in_interval(p, start, length, pat) == expected


def test_interval_full_length_is_exact():
    for p in prime_array(3, 500).tolist():
        for k in (1, 3):
            for code in range(1 << k):
                pat = SymbolPattern.from_code(code, k)
                assert count_pattern_in_interval(p, p // 3, p, pat) == count_pattern_exact(p, pat)


def test_shift_covariance():
    for p in prime_array(3, 499).tolist():
        for signs in [(1, 1), (1, -1, -1), (-1, 1, 1, -1)]:
            base = SymbolPattern(signs, tuple(range(0, 2 * len(signs), 2)))
            n = count_pattern_exact(p, base)
            assert all(count_pattern_exact(p, base.shifted(c)) == n for c in (1, 5, p, p + 3))


def test_positivity_k4():
    primes = prime_array(10**4 + 1, 10**5).tolist()
    checked = 0
    for p in primes:
        if positivity_guaranteed(4, p):
            checked += 1
            # every one of the 16 patterns occurs, including four consecutive residues
            assert pattern_histogram(p, 4).min() > 0
    assert checked > 0
    assert not positivity_guaranteed(4, 10007)


def test_euler_path_matches_table(monkeypatch):
    pat = SymbolPattern((1, -1, 1), (0, 2, 3))
    expected = [count_pattern_exact(p, pat) for p in (3, 101, 7919)]
    monkeypatch.setattr(census, "TABLE_MAX_P", 0)
    assert [count_pattern_exact(p, pat) for p in (3, 101, 7919)] == expected


def test_large_prime_guard():
    with pytest.raises(GuardError):
        count_pattern_exact(2147483659, PP)
    with pytest.raises(GuardError):
        census_sweep(PrimeRange(3, 10), 13).__next__()


def test_sweep_examples():
    reports = list(census_sweep(PrimeRange(3, 3), 1))
    assert [(r.pattern.label, r.exact_count) for r in reports] == [("-", 1), ("+", 1)]
    reports = list(census_sweep(PrimeRange(7, 7), 2))
    assert len(reports) == 6
    assert next(r for r in reports if r.pattern.label == "++").exact_count == 1


def test_sweep_order_and_worker_independence():
    rows = [r.to_row() for r in census_sweep(PrimeRange(3, 100), 4)]
    keys = [(r["p"], r["k"], SymbolPattern.parse(r["pattern"]).code) for r in rows]
    assert keys == sorted(keys)
    assert len(rows) == 24 * (2 + 4 + 8 + 16)
    assert rows == [r.to_row() for r in census_sweep(PrimeRange(3, 100), 4, workers=2)]


def test_report_fields():
    (r,) = [r for r in census_for_prime(11, 2) if r.pattern.label == "++"]
    row = r.to_row()
    assert list(row) == ["p", "k", "pattern", "exact", "t_term", "p_over_2k", "residual", "peralta_bound"]
    assert (row["p"], row["k"], row["exact"]) == (11, 2, 2)
    assert row["peralta_bound"] == peralta_bound(2, 11) == 3 * (3 + np.sqrt(11))
    assert r.residual == r.exact_count - r.t_term


def test_residual_summary_groups():
    summary = residual_summary(census_sweep(PrimeRange(3, 150), 3))
    assert [(g["k"], g["p_from"]) for g in summary] == [(1, 1), (1, 10), (1, 100), (2, 1), (2, 10), (2, 100),
                                                       (3, 1), (3, 10), (3, 100)]
    assert all(g["max_envelope_ratio"] <= 1 for g in summary)
