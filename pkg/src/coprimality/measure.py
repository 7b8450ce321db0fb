"""A finitely additive model of divisibility by finitely many primes.

Points are positive integers; the i-th coordinate of a point is whether the
i-th prime divides it.  A cylinder set pins finitely many coordinates:
``divisible`` ranks must divide, ``not_divisible`` ranks must not.  Its
measure multiplies 1/p over pinned-divisible ranks and (1 - 1/p) over
pinned-nondivisible ranks, matching the natural density of the set.

Unions of cylinders form a field closed under intersection and complement.
normalize rewrites a union as disjoint full cells over the touched
coordinates, so measure is well defined and finitely additive.

For pairs, squaring the model gives the probability that two independent
points share no factor among the first K primes: euler_product(K) =
prod (1 - p^-2), with limit 6/pi^2.  sample_coprime_estimate Monte-Carlos the
same product model with seeded numpy PCG64 draws.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt
from typing import Iterable, NamedTuple

import numpy as np

from .errors import NormalizationLimitError
from .sieve import PrimeTable

DEFAULT_NORMALIZE_INDEX_CAP = 24

# Monte Carlo provenance, echoed by the command line interface.
SAMPLER_RNG = "numpy default_rng (PCG64)"
SAMPLER_DRAW_ORDER = (
    "primes outer (ascending rank), coordinate x then y per prime, "
    "samples vectorized within each draw"
)


@dataclass(frozen=True)
class CylinderSet:
    """Coordinates pinned by prime rank; unconstrained ranks stay free.

    CylinderSet.of([1], [2]) is the set of integers divisible by 2 (rank 1)
    and not by 3 (rank 2).  Both sets empty means the whole space.
    """

    divisible: frozenset[int] = field(default_factory=frozenset)
    not_divisible: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "divisible", frozenset(self.divisible))
        object.__setattr__(self, "not_divisible", frozenset(self.not_divisible))
        for i in self.divisible | self.not_divisible:
            if not isinstance(i, int) or i < 1:
                raise ValueError(f"prime ranks must be integers >= 1, got {i!r}")
        overlap = self.divisible & self.not_divisible
        if overlap:
            raise ValueError(
                f"ranks {sorted(overlap)} pinned both divisible and not divisible"
            )

    @classmethod
    def of(cls, divisible: Iterable[int] = (), not_divisible: Iterable[int] = ()) -> "CylinderSet":
        return cls(frozenset(divisible), frozenset(not_divisible))

    @property
    def support(self) -> frozenset[int]:
        """All ranks this cylinder pins."""
        return self.divisible | self.not_divisible


@dataclass(frozen=True)
class SetExpression:
    """A finite union of cylinders.  ``normalized`` marks the disjoint-cell
    form produced by normalize (every term pins the same ranks)."""

    terms: tuple[CylinderSet, ...]
    normalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    @property
    def support(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for t in self.terms:
            out |= t.support
        return out


EMPTY = SetExpression(terms=(), normalized=True)
EVERYTHING = SetExpression(terms=(CylinderSet(),), normalized=True)


def cylinder_measure(c: CylinderSet, primes: PrimeTable) -> Fraction:
    """prod 1/p over divisible ranks times prod (1 - 1/p) over the rest."""
    out = Fraction(1)
    for i in sorted(c.divisible):
        out *= Fraction(1, primes.nth(i))
    for i in sorted(c.not_divisible):
        out *= 1 - Fraction(1, primes.nth(i))
    return out


def intersect(a: CylinderSet, b: CylinderSet) -> SetExpression:
    """Intersection of two cylinders: one merged cylinder, or empty when a
    rank is pinned oppositely."""
    if (a.divisible & b.not_divisible) or (b.divisible & a.not_divisible):
        return EMPTY
    merged = CylinderSet(
        a.divisible | b.divisible, a.not_divisible | b.not_divisible
    )
    return SetExpression(terms=(merged,), normalized=True)


def complement(c: CylinderSet) -> SetExpression:
    """Complement of a cylinder as a disjoint union of cells over its support.

    A point avoids the cylinder exactly when its divisibility pattern on the
    support differs from the pinned one, so every other full pattern is a cell
    of the complement.  The whole space has empty complement.
    """
    support = sorted(c.support)
    if not support:
        return EMPTY
    cells = []
    for bits in range(1 << len(support)):
        chosen = frozenset(
            r for pos, r in enumerate(support) if bits >> pos & 1
        )
        if chosen == c.divisible:
            continue
        cells.append(CylinderSet(chosen, frozenset(support) - chosen))
    return SetExpression(terms=tuple(cells), normalized=True)


def _cell_sort_key(c: CylinderSet):
    return tuple(sorted(c.divisible))


def normalize(
    e: SetExpression, index_cap: int = DEFAULT_NORMALIZE_INDEX_CAP
) -> SetExpression:
    """Rewrite a union of cylinders as disjoint cells over its full support.

    Every term expands over the support ranks it leaves free; duplicate cells
    collapse, which is exactly where overlapping terms stop double counting.
    Supports wider than ``index_cap`` ranks raise NormalizationLimitError
    (the cell count is exponential in the support size).
    """
    support = sorted(e.support)
    if len(support) > index_cap:
        raise NormalizationLimitError(
            f"normalization spans {len(support)} prime ranks, cap is {index_cap}"
        )
    if not e.terms:
        return EMPTY
    support_set = frozenset(support)
    cells: set[frozenset[int]] = set()
    for term in e.terms:
        free = sorted(support_set - term.support)
        for bits in range(1 << len(free)):
            cells.add(term.divisible | {
                r for pos, r in enumerate(free) if bits >> pos & 1
            })
    terms = tuple(
        CylinderSet(chosen, support_set - chosen)
        for chosen in sorted(cells, key=lambda s: tuple(sorted(s)))
    )
    return SetExpression(terms=terms, normalized=True)


def measure(
    e: SetExpression,
    primes: PrimeTable,
    index_cap: int = DEFAULT_NORMALIZE_INDEX_CAP,
) -> Fraction:
    """Measure of a union of cylinders: normalize, then add cell measures."""
    normal = e if e.normalized else normalize(e, index_cap=index_cap)
    return sum(
        (cylinder_measure(t, primes) for t in normal.terms), start=Fraction(0)
    )


def contains(c: CylinderSet, n: int, primes: PrimeTable) -> bool:
    """Whether the integer n satisfies every pinned coordinate of c."""
    if n < 1:
        raise ValueError(f"points are positive integers, got {n}")
    return all(n % primes.nth(i) == 0 for i in c.divisible) and all(
        n % primes.nth(i) != 0 for i in c.not_divisible
    )


def expression_contains(e: SetExpression, n: int, primes: PrimeTable) -> bool:
    return any(contains(t, n, primes) for t in e.terms)


def euler_product(prime_count: int, primes: PrimeTable) -> Fraction:
    """prod_{i<=prime_count} (1 - p_i^-2): the chance two independent points
    of the product model share no factor among the first prime_count primes.
    Decreasing, with limit 6/pi^2."""
    if prime_count < 1:
        raise ValueError(f"prime count must be >= 1, got {prime_count}")
    out = Fraction(1)
    for i in range(1, prime_count + 1):
        p = primes.nth(i)
        out *= 1 - Fraction(1, p * p)
    return out


class SampleEstimate(NamedTuple):
    estimate: float
    standard_error: float


def sample_coprime_estimate(
    prime_count: int, samples: int, seed: int, primes: PrimeTable
) -> SampleEstimate:
    """Monte Carlo estimate of euler_product(prime_count) from the product
    model: draw divisibility indicators for two points and count the samples
    sharing no prime among the first prime_count.

    Identical (prime_count, samples, seed) triples reproduce identical
    estimates; the draw order is fixed as documented in SAMPLER_DRAW_ORDER.
    The standard error is the binomial sqrt(f(1-f)/samples).
    """
    if prime_count < 1:
        raise ValueError(f"prime count must be >= 1, got {prime_count}")
    if samples < 1:
        raise ValueError(f"sample count must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    shares_factor = np.zeros(samples, dtype=bool)
    for i in range(1, prime_count + 1):
        threshold = 1.0 / primes.nth(i)
        x_divisible = rng.random(samples) < threshold
        y_divisible = rng.random(samples) < threshold
        shares_factor |= x_divisible & y_divisible
    fraction_coprime = 1.0 - (int(shares_factor.sum()) / samples)
    return SampleEstimate(
        estimate=fraction_coprime,
        standard_error=sqrt(fraction_coprime * (1.0 - fraction_coprime) / samples),
    )
