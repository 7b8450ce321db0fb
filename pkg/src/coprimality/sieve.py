"""Prime and Mobius tables plus factorization primitives.

Everything downstream (coprime counting, residue rectangles, congruence
witnesses, cylinder measures) consumes the two tables built here.  Tables are
plain immutable value objects: build once, share freely.

The Mobius sieve runs in O(n log log n): one pass over primes p flips the sign
of every multiple of p and zeroes every multiple of p^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import TableTooSmallError

# Re-exported so callers get one gcd with the convention gcd(0, b) = b, which
# keeps residue arithmetic total on zero residues.
gcd = math.gcd


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit`` with 1-based ranks (rank 1 is 2)."""

    limit: int
    primes: list[int]
    rank: dict[int, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.primes)

    def __contains__(self, n: int) -> bool:
        return n in self.rank

    def nth(self, i: int) -> int:
        """The prime of rank ``i`` (1-based)."""
        if i < 1:
            raise ValueError(f"prime rank must be >= 1, got {i}")
        if i > len(self.primes):
            raise TableTooSmallError(
                f"table up to {self.limit} holds {len(self.primes)} primes; "
                f"rank {i} requested"
            )
        return self.primes[i - 1]

    def rank_of(self, p: int) -> int:
        """Rank of the prime ``p``; raises if p is not prime or out of range."""
        try:
            return self.rank[p]
        except KeyError:
            if p > self.limit:
                raise TableTooSmallError(
                    f"{p} exceeds the table limit {self.limit}"
                ) from None
            raise ValueError(f"{p} is not prime") from None


@dataclass(frozen=True)
class MobiusTable:
    """Mobius function values for 1..limit; index 0 is unused padding."""

    limit: int
    values: list[int]

    def __getitem__(self, k: int) -> int:
        if not 1 <= k <= self.limit:
            raise TableTooSmallError(f"mobius({k}) outside table limit {self.limit}")
        return self.values[k]


def build_prime_table(limit: int) -> PrimeTable:
    if limit < 2:
        raise ValueError(f"prime table limit must be >= 2, got {limit}")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    primes = np.flatnonzero(flags).tolist()
    return PrimeTable(limit=limit, primes=primes, rank={p: i for i, p in enumerate(primes, 1)})


def build_mobius_table(limit: int) -> MobiusTable:
    if limit < 1:
        raise ValueError(f"mobius table limit must be >= 1, got {limit}")
    mu = np.ones(limit + 1, dtype=np.int8)
    composite = np.zeros(limit + 1, dtype=bool)
    for p in range(2, limit + 1):
        if composite[p]:
            continue
        mu[p::p] *= -1
        square = p * p
        if square <= limit:
            composite[square::p] = True
            mu[square::square] = 0
    values = mu.tolist()
    values[0] = 0
    return MobiusTable(limit=limit, values=values)


def prime_factors(n: int, primes: PrimeTable) -> list[int]:
    """Distinct prime factors of n in increasing order; prime_factors(1) = [].

    Trial division by table primes while p^2 <= remaining cofactor.  A leftover
    cofactor above the table limit cannot be certified prime, so it raises
    TableTooSmallError carrying the residual.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out: list[int] = []
    m = n
    for p in primes.primes:
        if p * p > m:
            break
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
    if m > 1:
        if m > primes.limit:
            raise TableTooSmallError(
                f"cofactor {m} of {n} exceeds the prime table limit {primes.limit}",
                residual=m,
            )
        # m <= limit and untouched by every table prime below sqrt(m): prime.
        out.append(m)
    return out


def prime_limit_for_count(count: int) -> int:
    """A sieve limit guaranteed to contain at least ``count`` primes.

    Uses the classical upper bound p_n < n (ln n + ln ln n) for n >= 6 and a
    fixed constant below that.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if count < 6:
        return 13
    x = float(count)
    return int(x * (math.log(x) + math.log(math.log(x)))) + 1
