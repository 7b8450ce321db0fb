import pytest
from hypothesis import given
from hypothesis import strategies as st

from coprimality.errors import TableTooSmallError
from coprimality.sieve import (
    build_mobius_table,
    build_prime_table,
    gcd,
    prime_factors,
    prime_limit_for_count,
)

# first values of the mobius function, checked by hand
MOBIUS_PREFIX = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0, -1, 1, 1, 0, -1, 0, -1, 0]

PRIMES_TO_100 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]


def test_mobius_prefix():
    table = build_mobius_table(100)
    assert [table[k] for k in range(1, 21)] == MOBIUS_PREFIX


def test_mobius_divisor_sums():
    # sum of mu(d) over d | n vanishes except at n = 1
    table = build_mobius_table(2000)
    sums = [0] * 2001
    for d in range(1, 2001):
        v = table[d]
        if v:
            for n in range(d, 2001, d):
                sums[n] += v
    assert sums[1] == 1
    assert all(s == 0 for s in sums[2:])


def test_mobius_against_factorization(primes_small):
    table = build_mobius_table(5000)
    for n in range(1, 5001):
        distinct = prime_factors(n, primes_small)
        m = n
        squarefree = True
        for p in distinct:
            m //= p
            if m % p == 0:
                squarefree = False
        expected = 0 if not squarefree else (-1) ** len(distinct)
        assert table[n] == expected, n


def test_mobius_limits():
    table = build_mobius_table(10)
    with pytest.raises(TableTooSmallError):
        table[11]
    with pytest.raises(TableTooSmallError):
        table[0]
    with pytest.raises(ValueError):
        build_mobius_table(0)


def test_prime_table_small():
    table = build_prime_table(100)
    assert table.primes == PRIMES_TO_100
    assert len(table) == 25
    assert table.nth(1) == 2
    assert table.nth(25) == 97
    assert table.rank_of(97) == 25
    assert 97 in table
    assert 91 not in table


def test_prime_table_million(primes_large):
    assert len(primes_large) == 78498
    assert primes_large.nth(100) == 541
    assert primes_large.primes[-1] == 999983


def test_prime_table_errors():
    table = build_prime_table(10)
    with pytest.raises(ValueError):
        build_prime_table(1)
    with pytest.raises(ValueError):
        table.nth(0)
    with pytest.raises(TableTooSmallError):
        table.nth(5)
    with pytest.raises(ValueError):
        table.rank_of(9)
    with pytest.raises(TableTooSmallError):
        table.rank_of(11)


def test_prime_factors_basics(primes_small):
    assert prime_factors(1, primes_small) == []
    assert prime_factors(2, primes_small) == [2]
    assert prime_factors(12, primes_small) == [2, 3]
    assert prime_factors(97, primes_small) == [97]
    assert prime_factors(720720, primes_small) == [2, 3, 5, 7, 11, 13]
    assert prime_factors(2**20, primes_small) == [2]


def test_prime_factors_reconstruct(primes_small):
    for n in range(1, 3000):
        factors = prime_factors(n, primes_small)
        assert factors == sorted(set(factors))
        m = n
        for p in factors:
            assert m % p == 0
            while m % p == 0:
                m //= p
        assert m == 1


def test_prime_factors_residual_cofactor():
    table = build_prime_table(1000)
    n = 1009 * 1013
    with pytest.raises(TableTooSmallError) as err:
        prime_factors(n, table)
    assert err.value.residual == n
    # small factors strip first, so the residual is what was left over
    with pytest.raises(TableTooSmallError) as err:
        prime_factors(6 * 1009 * 1013, table)
    assert err.value.residual == 1009 * 1013
    with pytest.raises(ValueError):
        prime_factors(0, table)


def test_prime_limit_for_count(primes_large):
    for count in (1, 2, 5, 6, 10, 100, 1000, 5000):
        limit = prime_limit_for_count(count)
        assert limit <= primes_large.limit
        assert len(build_prime_table(limit)) >= count


@given(st.integers(min_value=0, max_value=10**6))
def test_gcd_zero_convention(b):
    assert gcd(0, b) == b
