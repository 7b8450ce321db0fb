import pytest

from coprimality.acceptance import MOBIUS_TABLE_LIMIT, AcceptanceEnv
from coprimality.sieve import build_mobius_table, build_prime_table


@pytest.fixture(scope="session")
def primes_small():
    return build_prime_table(10**4)


@pytest.fixture(scope="session")
def primes_large():
    return build_prime_table(10**6)


@pytest.fixture(scope="session")
def mobius_3k():
    return build_mobius_table(3000)


@pytest.fixture(scope="session")
def acceptance_env(primes_large):
    return AcceptanceEnv(
        primes=primes_large,
        mobius=build_mobius_table(MOBIUS_TABLE_LIMIT),
    )
