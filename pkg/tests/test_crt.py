import random
from math import prod

import pytest

from coprimality.crt import (
    CongruenceSystem,
    ShiftWitnessReport,
    crt_solve,
    shift_witness,
    verify_shift_witness,
)
from coprimality.errors import (
    NonCoprimeModuliError,
    TableTooSmallError,
    UnsolvableCongruenceError,
)
from coprimality.sieve import build_prime_table, gcd


def test_crt_known_solutions():
    assert crt_solve(CongruenceSystem([(0, 2), (1, 3)])) == 4
    assert crt_solve(CongruenceSystem([(1, 2), (2, 3), (3, 5)])) == 23
    assert crt_solve(CongruenceSystem([(3, 7)])) == 3
    assert crt_solve(CongruenceSystem([(0, 1)])) == 0
    assert crt_solve(CongruenceSystem([(0, 1), (2, 5)])) == 2


def test_crt_validation():
    with pytest.raises(ValueError):
        CongruenceSystem([(2, 2)])
    with pytest.raises(ValueError):
        CongruenceSystem([(0, 0)])
    with pytest.raises(ValueError):
        crt_solve(CongruenceSystem([]))


def test_crt_rejects_shared_factors():
    with pytest.raises(NonCoprimeModuliError):
        crt_solve(CongruenceSystem([(1, 4), (1, 6)]))
    with pytest.raises(UnsolvableCongruenceError):
        crt_solve(CongruenceSystem([(1, 4), (0, 6)]))


def test_crt_against_scan():
    rng = random.Random(41)
    primes = [2, 3, 5, 7, 11, 13]
    for _ in range(500):
        rng.shuffle(primes)
        moduli = []
        product = 1
        for p in primes[: rng.randint(1, 3)]:
            m = p ** rng.randint(1, 3)
            if product * m > 10**4:
                continue
            product *= m
            moduli.append(m)
        if not moduli:
            moduli, product = [2], 2
        system = CongruenceSystem([(rng.randrange(m), m) for m in moduli])
        got = crt_solve(system)
        expected = next(
            x for x in range(product)
            if all(x % m == r for r, m in system.constraints)
        )
        assert got == expected


def test_shift_witness_single_pair(primes_small):
    report = shift_witness([(1, 1)], primes_small)
    assert report.assigned_primes == (2,)
    assert report.witness == (1, 1)
    assert report.certificates == (2,)
    assert verify_shift_witness(report)


def test_shift_witness_zero_shift_lifts(primes_small):
    report = shift_witness([(0, 0)], primes_small)
    assert report.witness == (2, 2)
    assert verify_shift_witness(report)


def test_shift_witness_two_pairs(primes_small):
    report = shift_witness([(1, 2), (3, 4)], primes_small)
    assert report.assigned_primes == (2, 3)
    assert report.witness == (3, 2)
    a, b = report.witness
    for (ai, bi), p in zip(report.shift_set, report.assigned_primes):
        assert (a + ai) % p == 0
        assert (b + bi) % p == 0
    assert verify_shift_witness(report)


def test_shift_witness_magnitude(primes_small):
    rng = random.Random(43)
    for _ in range(300):
        shifts = [
            (rng.randint(0, 100), rng.randint(0, 100))
            for _ in range(rng.randint(1, 8))
        ]
        report = shift_witness(shifts, primes_small)
        bound = prod(report.assigned_primes)
        a, b = report.witness
        assert 1 <= a <= bound
        assert 1 <= b <= bound
        assert verify_shift_witness(report)
        for (ai, bi) in shifts:
            assert gcd(a + ai, b + bi) > 1


def test_shift_witness_validation(primes_small):
    with pytest.raises(ValueError):
        shift_witness([], primes_small)
    with pytest.raises(ValueError):
        shift_witness([(-1, 2)], primes_small)
    tiny = build_prime_table(2)
    with pytest.raises(TableTooSmallError):
        shift_witness([(1, 2), (3, 4)], tiny)


def test_verify_rejects_tampering(primes_small):
    good = shift_witness([(1, 1)], primes_small)
    bad_witness = ShiftWitnessReport(
        shift_set=good.shift_set,
        assigned_primes=good.assigned_primes,
        witness=(1, 2),
        certificates=good.certificates,
    )
    assert not verify_shift_witness(bad_witness)
    missing_certs = ShiftWitnessReport(
        shift_set=good.shift_set,
        assigned_primes=good.assigned_primes,
        witness=good.witness,
        certificates=(),
    )
    assert not verify_shift_witness(missing_certs)
    unit_cert = ShiftWitnessReport(
        shift_set=good.shift_set,
        assigned_primes=good.assigned_primes,
        witness=good.witness,
        certificates=(1,),
    )
    assert not verify_shift_witness(unit_cert)
    repeated_primes = ShiftWitnessReport(
        shift_set=((1, 1), (3, 3)),
        assigned_primes=(2, 2),
        witness=(1, 1),
        certificates=(2, 2),
    )
    assert not verify_shift_witness(repeated_primes)
    nonpositive = ShiftWitnessReport(
        shift_set=good.shift_set,
        assigned_primes=good.assigned_primes,
        witness=(0, 0),
        certificates=good.certificates,
    )
    assert not verify_shift_witness(nonpositive)
