import pytest

from residue_lab.verify import CAPS, IDENTITIES, MAX_BOUND, run_identities


def test_identity_registry():
    assert set(IDENTITIES) == set(CAPS)
    assert len(IDENTITIES) == 16


def test_all_identities_small_bound():
    results = run_identities(300)
    assert [r.name for r in results] == list(IDENTITIES)
    assert all(r.passed and r.checked > 0 for r in results)
    assert {r.name: r.bound for r in results}["charfn"] == 200


def test_seed_is_reproducible():
    a = run_identities(1000, only=["multiplicative", "twisted"], seed=3)
    b = run_identities(1000, only=["multiplicative", "twisted"], seed=3)
    assert [(r.checked, r.failures) for r in a] == [(r.checked, r.failures) for r in b]


@pytest.mark.parametrize("bound, only", [(2, None), (MAX_BOUND + 1, None), (100, ["nope"])])
def test_bad_arguments(bound, only):
    with pytest.raises(ValueError):
        run_identities(bound, only)
