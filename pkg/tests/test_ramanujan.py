import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohen_moments import CohenQuery, build_sieve, cohen_sum_direct, cohen_sum_identity, row_sum, row_table
from cohen_moments.arith import divisors
from cohen_moments.errors import DomainError, ExactOverflowError, ResourceLimitError
from cohen_moments.ramanujan import cohen_sums_direct, gcd_beta_coprime, iroot

from conftest import brute_cohen, brute_gcd_beta


def c(q, beta, n):
    return cohen_sum_identity(CohenQuery(q, beta, n))


@pytest.mark.parametrize("h, m, beta, expected", [(1, 4, 2, True), (0, 4, 2, False), (2, 4, 2, True), (0, 6, 2, True)])
def test_gcd_beta_coprime_examples(h, m, beta, expected):
    assert gcd_beta_coprime(h, m, beta) is expected


def test_gcd_beta_coprime_matches_brute():
    for beta in (1, 2, 3):
        for m in range(1, 70):
            for h in range(m):
                assert gcd_beta_coprime(h, m, beta) == brute_gcd_beta(h, m, beta)


@pytest.mark.parametrize(
    "q, beta, n, expected",
    [(1, 1, 7, 1), (1, 3, 5, 1), (2, 1, 3, -1), (2, 2, 4, 3), (5, 1, 1, -1), (3, 1, 3, 2), (4, 1, 2, -2)],
)
def test_examples_both_methods(q, beta, n, expected):
    query = CohenQuery(q, beta, n)
    assert cohen_sum_identity(query) == expected
    assert cohen_sum_direct(query) == expected


def test_direct_matches_brute_oracle():
    rng = random.Random(7)
    for _ in range(150):
        beta = rng.choice((1, 2, 3))
        q = rng.randint(1, {1: 60, 2: 9, 3: 4}[beta])
        n = rng.randint(1, 200)
        assert cohen_sum_direct(CohenQuery(q, beta, n)) == brute_cohen(q, beta, n)


def test_batch_matches_pointwise():
    for q, beta in ((12, 1), (6, 2), (3, 3), (30, 1)):
        batch = cohen_sums_direct(q, beta, 100)
        assert [int(v) for v in batch] == [cohen_sum_direct(CohenQuery(q, beta, n)) for n in range(1, 101)]


def test_query_validation():
    for bad in ((0, 1, 1), (1, 0, 1), (2, 1, 0)):
        with pytest.raises(DomainError):
            CohenQuery(*bad)
    with pytest.raises(ExactOverflowError):
        CohenQuery(2**20, 7, 1)


def test_direct_cap():
    with pytest.raises(ResourceLimitError):
        cohen_sum_direct(CohenQuery(100, 2, 1), cap=1000)


def test_periodicity():
    for beta in (1, 2):
        for q in range(1, 31):
            m = q**beta
            for n in range(1, 201):
                assert c(q, beta, n + m) == c(q, beta, n)


def test_magnitude_guard():
    for beta in (1, 2):
        for q in range(1, 80):
            for n in range(1, 150):
                cap = sum(d**beta for d in divisors(q) if n % d**beta == 0)
                assert abs(c(q, beta, n)) <= cap


@given(st.integers(1, 60), st.integers(1, 60), st.integers(1, 200), st.sampled_from([1, 2]))
def test_multiplicative_property(q, r, n, beta):
    if math.gcd(q, r) == 1:
        assert c(q, beta, n) * c(r, beta, n) == c(q * r, beta, n)


def test_iroot_exact():
    for k in (1, 2, 3, 5):
        for y in list(range(200)) + [10**18, 10**18 - 1, 2**64 + 3]:
            r = iroot(y, k)
            assert r**k <= y < (r + 1) ** k


@pytest.fixture(scope="module")
def small_sieve():
    return build_sieve(1000)


@pytest.mark.parametrize("beta, n, x, expected", [(1, 6, 3, 4), (1, 1, 10, -1), (2, 36, 1, 1), (3, 5, 1, 1)])
def test_row_sum_examples(small_sieve, beta, n, x, expected):
    assert row_sum(beta, n, x, small_sieve) == expected


def test_row_sum_is_sum_of_cohen_sums(small_sieve):
    for beta in (1, 2):
        for x in (1, 7, 20):
            for n in range(1, 120):
                assert row_sum(beta, n, x, small_sieve) == sum(c(q, beta, n) for q in range(1, x + 1))


def test_row_table_examples(small_sieve):
    assert list(row_table(1, 2, 5, small_sieve)) == [0, 2, 0, 2, 0]
    assert list(row_table(2, 1, 3, small_sieve)) == [1, 1, 1]
    assert row_table(1, 3, 6, small_sieve)[-1] == 4


def test_row_table_matches_row_sum(small_sieve):
    rng = random.Random(3)
    for _ in range(6):
        beta, x = rng.choice((1, 2, 3)), rng.randint(1, 1000)
        table = row_table(beta, x, 1000, small_sieve)
        assert [int(v) for v in table] == [row_sum(beta, n, x, small_sieve) for n in range(1, 1001)]


def test_row_table_range_checks(small_sieve, monkeypatch):
    with pytest.raises(DomainError):
        row_table(1, 2000, 10, small_sieve)
    monkeypatch.setenv("COHEN_MOMENTS_MEM_CAP", "100")
    with pytest.raises(ResourceLimitError):
        row_table(1, 10, 1000, small_sieve)
