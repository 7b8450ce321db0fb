"""Simultaneous congruences and shift-invariance witnesses.

crt_solve finds the least nonnegative solution of a system with pairwise
coprime moduli.  shift_witness uses it to defeat any finite set of shifts
A = {(a_i, b_i)}: assign the i-th prime p_i to the i-th shift and solve

        a == -a_i (mod p_i),        b == -b_i (mod p_i),

so every shifted pair (a + a_i, b + b_i) is divisible by its p_i and hence
not coprime.  The primes double as divisibility certificates that
verify_shift_witness checks without redoing any CRT work.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .errors import NonCoprimeModuliError, TableTooSmallError, UnsolvableCongruenceError
from .sieve import PrimeTable, gcd


@dataclass(frozen=True)
class CongruenceSystem:
    """Constraints x == r (mod m), stored as (residue, modulus) pairs."""

    constraints: tuple[tuple[int, int], ...]

    def __init__(self, constraints: Iterable[tuple[int, int]]):
        object.__setattr__(self, "constraints", tuple((int(r), int(m)) for r, m in constraints))
        for r, m in self.constraints:
            if m < 1:
                raise ValueError(f"modulus must be >= 1, got {m}")
            if not 0 <= r < m:
                raise ValueError(f"residue {r} not reduced modulo {m}")

    def __len__(self) -> int:
        return len(self.constraints)


def crt_solve(system: CongruenceSystem) -> int:
    """Least nonnegative x satisfying every congruence.

    Moduli must be pairwise coprime.  A shared factor raises
    UnsolvableCongruenceError when the residues disagree on it and
    NonCoprimeModuliError when they agree (the system is solvable but must be
    reduced by the caller first; silently merging would hide modeling bugs).
    """
    cons = system.constraints
    if not cons:
        raise ValueError("at least one congruence is required")
    for i in range(len(cons)):
        ri, mi = cons[i]
        for j in range(i + 1, len(cons)):
            rj, mj = cons[j]
            g = gcd(mi, mj)
            if g == 1:
                continue
            if ri % g != rj % g:
                raise UnsolvableCongruenceError(
                    f"x == {ri} (mod {mi}) and x == {rj} (mod {mj}) "
                    f"disagree modulo {g}"
                )
            raise NonCoprimeModuliError(
                f"moduli {mi} and {mj} share the factor {g}; "
                "reduce the system to pairwise coprime moduli"
            )
    x, modulus = 0, 1
    for r, m in cons:
        # Fold in x == r (mod m): x stays fixed mod `modulus`, so adjust by a
        # multiple of `modulus` chosen mod m.
        t = (r - x) * pow(modulus % m, -1, m) % m
        x += modulus * t
        modulus *= m
    return x


@dataclass(frozen=True)
class ShiftWitnessReport:
    """A point (a, b) no shift from ``shift_set`` makes coprime.

    ``certificates[i]`` divides both a + shift_set[i][0] and
    b + shift_set[i][1]; here they are exactly the assigned primes.
    """

    shift_set: tuple[tuple[int, int], ...]
    assigned_primes: tuple[int, ...]
    witness: tuple[int, int]
    certificates: tuple[int, ...]


def shift_witness(
    shift_set: Sequence[tuple[int, int]], primes: PrimeTable
) -> ShiftWitnessReport:
    """Build the CRT point defeating every shift in ``shift_set``.

    Coordinates are taken least-nonnegative and then lifted by the prime
    product when zero, so the witness lands in the positive quadrant:
    1 <= a, b <= prod(p_i), the upper end hit only by lifted zeros.
    """
    shifts = [(int(a), int(b)) for a, b in shift_set]
    if not shifts:
        raise ValueError("shift set must be nonempty")
    for a, b in shifts:
        if a < 0 or b < 0:
            raise ValueError(f"shift components must be >= 0, got ({a}, {b})")
    if len(primes) < len(shifts):
        raise TableTooSmallError(
            f"need {len(shifts)} primes, table holds {len(primes)}"
        )
    assigned = tuple(primes.primes[: len(shifts)])
    a = crt_solve(CongruenceSystem(
        ((-ai) % p, p) for (ai, _), p in zip(shifts, assigned)
    ))
    b = crt_solve(CongruenceSystem(
        ((-bi) % p, p) for (_, bi), p in zip(shifts, assigned)
    ))
    lift = prod(assigned)
    return ShiftWitnessReport(
        shift_set=tuple(shifts),
        assigned_primes=assigned,
        witness=(a or lift, b or lift),
        certificates=assigned,
    )


def verify_shift_witness(report: ShiftWitnessReport) -> bool:
    """Check a report independently: certificate divisibility plus the
    non-coprimality of every shifted pair.  Structural damage (wrong lengths,
    repeated primes, unit certificates) fails rather than raises."""
    shifts = report.shift_set
    a, b = report.witness
    if a < 1 or b < 1:
        return False
    if len(report.certificates) != len(shifts):
        return False
    if len(report.assigned_primes) != len(set(report.assigned_primes)):
        return False
    for (ai, bi), d in zip(shifts, report.certificates):
        if d <= 1 or (a + ai) % d or (b + bi) % d:
            return False
        if gcd(a + ai, b + bi) == 1:
            return False
    return True
