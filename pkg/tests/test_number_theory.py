import pytest
from hypothesis import given, strategies as st

from taxman.number_theory import (
    build_spf,
    divisors_of,
    factorize,
    primes_up_to,
    rank_of,
    ranks_up_to,
)


def spf_by_trial_division(k: int) -> int:
    d = 2
    while d * d <= k:
        if k % d == 0:
            return d
        d += 1
    return k


def test_build_spf_examples():
    assert build_spf(10).spf[9] == 3
    assert build_spf(10).spf[7] == 7
    assert build_spf(100).spf[91] == 7


def test_build_spf_rejects_zero():
    with pytest.raises(ValueError):
        build_spf(0)


def test_spf_matches_trial_division():
    table = build_spf(2000)
    for k in range(2, 2001):
        assert table.spf[k] == spf_by_trial_division(k)


def test_spf_invariants():
    table = build_spf(5000)
    for k in range(2, 5001):
        p = table.spf[k]
        assert k % p == 0
        assert p == spf_by_trial_division(p)  # p itself is prime
        assert (p == k) == (spf_by_trial_division(k) == k)
        rest = k // p
        assert rest == 1 or table.spf[rest] >= p


def test_rank_examples():
    table = build_spf(1000)
    assert rank_of(1, table) == 0
    assert rank_of(12, table) == 3
    assert rank_of(840, table) == 6


def test_rank_out_of_range():
    table = build_spf(10)
    with pytest.raises(ValueError):
        rank_of(11, table)
    with pytest.raises(ValueError):
        rank_of(0, table)


_TABLE_10K = build_spf(10_000)


@given(st.integers(1, 100), st.integers(1, 100))
def test_rank_additive(a, b):
    assert rank_of(a * b, _TABLE_10K) == rank_of(a, _TABLE_10K) + rank_of(b, _TABLE_10K)


def test_factorize_examples():
    table = build_spf(100)
    assert factorize(1, table) == []
    assert factorize(60, table) == [(2, 2), (3, 1), (5, 1)]
    assert factorize(97, table) == [(97, 1)]


def test_factorize_roundtrip_and_order():
    table = _TABLE_10K
    for k in range(1, 10_001):
        factors = factorize(k, table)
        product = 1
        for p, m in factors:
            product *= p**m
        assert product == k
        assert all(factors[i][0] < factors[i + 1][0] for i in range(len(factors) - 1))


def test_primes_up_to_examples():
    assert primes_up_to(1) == []
    assert primes_up_to(10) == [7, 5, 3, 2]
    assert primes_up_to(30) == [29, 23, 19, 17, 13, 11, 7, 5, 3, 2]


def test_primes_up_to_matches_trial_division():
    got = primes_up_to(300)
    expected = [k for k in range(300, 1, -1) if spf_by_trial_division(k) == k]
    assert got == expected


def test_divisors_of():
    table = build_spf(100)
    assert sorted(divisors_of(60, table)) == [1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]
    assert divisors_of(1, table) == [1]
    assert sorted(divisors_of(97, table)) == [1, 97]


def test_ranks_up_to_bulk():
    table = build_spf(500)
    bulk = ranks_up_to(table)
    for k in range(1, 501):
        assert bulk[k] == rank_of(k, table)
