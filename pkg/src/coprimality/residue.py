"""Residue rectangles, coprime witnesses inside them, and the residue bound.

A residue rectangle is a product of two arithmetic progressions,
{x : x == j1 (mod k1)} x {y : y == j2 (mod k2)}.  It contains a coprime pair
exactly when gcd(j1, j2, k1, k2) = 1; rect_coprime_search exhibits one by
bounded enumeration, construct_coprime_in_rect by a constructive recipe.

Counting the rectangles that meet the coprime set at moduli (t1, t2) and
dividing by t1 t2 gives an upper bound on the coprime density; its closed form
is prod (1 - p^-2) over primes dividing both moduli, which along primorial
moduli decreases to 6/pi^2.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

from .crt import CongruenceSystem, crt_solve
from .errors import TableTooSmallError
from .sieve import PrimeTable, gcd, prime_factors

# Above this many candidate cells the search walks diagonals lazily instead of
# materializing the whole gcd grid.
_GRID_CELL_CAP = 1 << 22

# Search window (as a multiple of k1*k2 per axis) for the constructive
# fallback.  The recipe's own magnitude bound keeps witnesses well inside it.
_FALLBACK_SEARCH_CAP = 64

DEFAULT_SEARCH_CAP = 8


@dataclass(frozen=True)
class ResidueRect:
    """Residues j1 mod k1 on the x axis, j2 mod k2 on the y axis."""

    j1: int
    k1: int
    j2: int
    k2: int

    def __post_init__(self):
        for j, k, axis in ((self.j1, self.k1, "1"), (self.j2, self.k2, "2")):
            if k < 1:
                raise ValueError(f"modulus k{axis} must be >= 1, got {k}")
            if not 0 <= j < k:
                raise ValueError(
                    f"residue j{axis} must satisfy 0 <= j < k{axis}, got {j} mod {k}"
                )


@dataclass(frozen=True)
class RectWitness:
    """A coprime pair found in a rectangle, tagged with how it was produced
    (``via`` is "construction" or "search-fallback").  Unpacks like a pair."""

    x: int
    y: int
    via: str

    def __iter__(self):
        return iter((self.x, self.y))


def rect_nonempty_criterion(rect: ResidueRect) -> bool:
    """True iff the rectangle contains a coprime pair: gcd of both residues
    and both moduli is 1."""
    return gcd(rect.j1, rect.j2, rect.k1, rect.k2) == 1


def _axis_points(j: int, k: int, limit: int) -> range:
    """Members of the class j mod k in [1, limit], ascending."""
    start = j if j >= 1 else k
    return range(start, limit + 1, k)


def rect_coprime_search(
    rect: ResidueRect, cap: int = DEFAULT_SEARCH_CAP
) -> tuple[int, int] | None:
    """Smallest coprime pair in the rectangle with x, y <= cap * k1 * k2,
    ordered by (x + y, x); None if the window holds none.

    Small windows are scanned as one numpy gcd grid; large windows walk the
    grid points in (x + y, x) order with a heap and stop at the first hit,
    which keeps the nonempty-rectangle case cheap even at big moduli.
    """
    if cap < 1:
        raise ValueError(f"search cap must be >= 1, got {cap}")
    limit = cap * rect.k1 * rect.k2
    xs = _axis_points(rect.j1, rect.k1, limit)
    ys = _axis_points(rect.j2, rect.k2, limit)
    if not xs or not ys:
        return None
    if len(xs) * len(ys) <= _GRID_CELL_CAP:
        xv = np.fromiter(xs, dtype=np.int64)
        yv = np.fromiter(ys, dtype=np.int64)
        coprime = np.gcd.outer(xv, yv) == 1
        if not coprime.any():
            return None
        xi, yi = np.nonzero(coprime)
        x_hits = xv[xi]
        y_hits = yv[yi]
        # shift the sum into the high part so one argmin realizes (x+y, x)
        best = int(np.argmin((x_hits + y_hits) * (limit + 1) + x_hits))
        return int(x_hits[best]), int(y_hits[best])
    # Lazy frontier walk: order cells (a, b) |-> (xs[a], ys[b]) by key
    # (x + y, x).  Pushing (a+1, b) always and (a, b+1) only from the first
    # column visits every cell exactly once.
    heap = [(xs[0] + ys[0], xs[0], 0, 0)]
    while heap:
        _, x, a, b = heapq.heappop(heap)
        y = ys[b]
        if gcd(x, y) == 1:
            return x, y
        if a + 1 < len(xs):
            heapq.heappush(heap, (xs[a + 1] + y, xs[a + 1], a + 1, b))
        if a == 0 and b + 1 < len(ys):
            heapq.heappush(heap, (x + ys[b + 1], x, 0, b + 1))
    return None


def lemma_shift_witness(x: int, y: int, n: int, primes: PrimeTable) -> int:
    """A shift a with gcd(a x + y, n) = 1, given gcd(x, y) = 1.

    Each distinct prime f of n pins a residue for a:
      f | x   -> a == 0 (mod f)   (then a x + y == y, and f cannot divide y),
      f | y   -> a == 1 (mod f)   (then a x + y == x, and f cannot divide x),
      f | neither -> a == 0 (mod f)   (again a x + y == y).
    CRT glues the residues.  The output is verified; if verification fails the
    smallest working shift is found by scanning, so callers can trust the
    postcondition unconditionally.
    """
    if x < 1 or y < 1:
        raise ValueError(f"x and y must be >= 1, got ({x}, {y})")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if gcd(x, y) != 1:
        raise ValueError(f"gcd({x}, {y}) = {gcd(x, y)}, need coprime x, y")
    factors = prime_factors(n, primes)
    if not factors:
        return 0
    a = crt_solve(CongruenceSystem(
        (1 if y % f == 0 else 0, f) for f in factors
    ))
    if gcd(a * x + y, n) == 1:
        return a
    for a in range(n + 1):  # unreachable fallback, kept for honesty
        if gcd(a * x + y, n) == 1:
            return a
    raise RuntimeError(
        f"no shift a <= {n} satisfies gcd(a*{x}+{y}, {n}) = 1; "
        "this contradicts gcd(x, y) = 1 and is a bug"
    )


def construct_coprime_in_rect(rect: ResidueRect, primes: PrimeTable) -> RectWitness:
    """A coprime pair in the rectangle, built constructively.

    Uses class representatives in [1, k] (the zero residue enters at k).
    Writing j_i = g_i s_i and k_i = g_i r_i with g_i = gcd(j_i, k_i):

      1. pick a1 with gcd(a1 r1 + s1, g2) = 1, so x = a1 k1 + j1 shares no
         factor with g2 beyond what s1, r1 already exclude;
      2. pick a2 with gcd(a2 r2 + s2, g1 (a1 r1 + s1)) = 1, killing every
         common factor x and y could still share.

    The result is verified; any failure (including a step-2 factorization
    outgrowing the prime table) falls back to the bounded search, and the
    returned ``via`` names the path taken.
    """
    if not rect_nonempty_criterion(rect):
        raise ValueError(
            f"rectangle ({rect.j1} mod {rect.k1}) x ({rect.j2} mod {rect.k2}) "
            "contains no coprime pair: gcd(j1, j2, k1, k2) > 1"
        )
    j1 = rect.j1 or rect.k1
    j2 = rect.j2 or rect.k2
    k1, k2 = rect.k1, rect.k2
    g1, g2 = gcd(j1, k1), gcd(j2, k2)
    r1, s1 = k1 // g1, j1 // g1
    r2, s2 = k2 // g2, j2 // g2
    via = "construction"
    try:
        a1 = lemma_shift_witness(r1, s1, g2, primes)
        inner = a1 * r1 + s1
        a2 = lemma_shift_witness(r2, s2, g1 * inner, primes)
        x, y = a1 * k1 + j1, a2 * k2 + j2
        if gcd(x, y) == 1 and x % k1 == rect.j1 and y % k2 == rect.j2:
            return RectWitness(x=x, y=y, via=via)
        via = "search-fallback"
    except TableTooSmallError:
        via = "search-fallback"
    found = rect_coprime_search(rect, cap=_FALLBACK_SEARCH_CAP)
    if found is None:
        raise RuntimeError(
            f"rectangle ({rect.j1} mod {rect.k1}) x ({rect.j2} mod {rect.k2}) "
            "passes the gcd criterion but the fallback window holds no "
            "coprime pair; this is a bug"
        )
    return RectWitness(x=found[0], y=found[1], via=via)


@dataclass(frozen=True)
class ResidueBoundReport:
    """Count of residue rectangles meeting the coprime set at moduli (t1, t2),
    with the exact ratio and its verified closed form."""

    t1: int
    t2: int
    nonempty: int
    ratio: Fraction
    common_primes: tuple[int, ...]
    closed_form: Fraction


def r_count(t1: int, t2: int, primes: PrimeTable) -> ResidueBoundReport:
    """Count pairs of residue classes (j1 mod t1, j2 mod t2) whose rectangle
    meets the coprime set, i.e. gcd(j1, j2, t1, t2) = 1 over 0 <= j_i < t_i.

    The ratio nonempty/(t1 t2) is checked against the closed form
    prod_{p | gcd(t1, t2)} (1 - p^-2) before the report is returned.
    """
    if t1 < 1 or t2 < 1:
        raise ValueError(f"moduli must be >= 1, got ({t1}, {t2})")
    # gcd(j, t) for all residues; gcd(0, t) = t keeps the zero class right.
    g1 = np.gcd(np.arange(t1, dtype=np.int64), t1)
    g2 = np.gcd(np.arange(t2, dtype=np.int64), t2)
    block = max(1, _GRID_CELL_CAP // max(t2, 1))
    nonempty = 0
    for start in range(0, t1, block):
        nonempty += int(np.count_nonzero(
            np.gcd.outer(g1[start : start + block], g2) == 1
        ))
    ratio = Fraction(nonempty, t1 * t2)
    common = tuple(prime_factors(gcd(t1, t2), primes))
    closed = prod(
        (1 - Fraction(1, p * p) for p in common), start=Fraction(1)
    )
    if ratio != closed:
        raise RuntimeError(
            f"nonempty-rectangle ratio {ratio} at moduli ({t1}, {t2}) "
            f"disagrees with the closed form {closed}; this is a bug"
        )
    return ResidueBoundReport(
        t1=t1, t2=t2, nonempty=nonempty, ratio=ratio,
        common_primes=common, closed_form=closed,
    )


def residue_upper_bound(prime_count: int, primes: PrimeTable) -> Fraction:
    """prod_{i<=prime_count} (1 - p_i^-2): the residue-class upper bound on
    the coprime density at the primorial modulus of the first prime_count
    primes.  Decreasing in prime_count, with limit 6/pi^2."""
    if prime_count < 1:
        raise ValueError(f"prime count must be >= 1, got {prime_count}")
    out = Fraction(1)
    for i in range(1, prime_count + 1):
        p = primes.nth(i)
        out *= 1 - Fraction(1, p * p)
    return out
