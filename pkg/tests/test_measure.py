import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coprimality.counting import COPRIME_DENSITY
from coprimality.errors import NormalizationLimitError, TableTooSmallError
from coprimality.measure import (
    EMPTY,
    CylinderSet,
    SetExpression,
    complement,
    contains,
    cylinder_measure,
    euler_product,
    expression_contains,
    intersect,
    measure,
    normalize,
    sample_coprime_estimate,
)

from coprimality.sieve import build_prime_table

PRIMES100 = build_prime_table(100)

ranks = st.frozensets(st.integers(min_value=1, max_value=6), max_size=4)


@st.composite
def cylinders(draw):
    divisible = draw(ranks)
    not_divisible = draw(ranks.map(lambda s: s - divisible))
    return CylinderSet(divisible, not_divisible)


def test_cylinder_validation():
    with pytest.raises(ValueError):
        CylinderSet(frozenset({1}), frozenset({1}))
    with pytest.raises(ValueError):
        CylinderSet(frozenset({0}), frozenset())
    CylinderSet.of([1, 2], [3])  # fine


def test_cylinder_measure_values(primes_small):
    assert cylinder_measure(CylinderSet.of([1]), primes_small) == Fraction(1, 2)
    assert cylinder_measure(CylinderSet(), primes_small) == 1
    assert cylinder_measure(CylinderSet.of([1], [2]), primes_small) == Fraction(1, 3)
    assert cylinder_measure(CylinderSet.of([1, 2]), primes_small) == Fraction(1, 6)


def test_cylinder_measure_table_too_small():
    tiny = build_prime_table(10)  # four primes
    with pytest.raises(TableTooSmallError):
        cylinder_measure(CylinderSet.of([5]), tiny)


def test_intersect():
    a = CylinderSet.of([1])
    b = CylinderSet.of([], [1])
    assert intersect(a, b) is EMPTY
    merged = intersect(CylinderSet.of([1]), CylinderSet.of([2]))
    assert merged.terms == (CylinderSet.of([1, 2]),)
    c = CylinderSet.of([3], [4])
    assert intersect(CylinderSet(), c).terms == (c,)


def test_complement_small(primes_small):
    odd = complement(CylinderSet.of([1]))
    assert odd.terms == (CylinderSet.of([], [1]),)
    assert complement(CylinderSet()).terms == ()
    three_cells = complement(CylinderSet.of([1], [2]))
    assert len(three_cells.terms) == 3
    assert measure(three_cells, primes_small) == Fraction(2, 3)


def test_normalize_examples(primes_small):
    partition = SetExpression((CylinderSet.of([1]), CylinderSet.of([], [1])))
    normal = normalize(partition)
    assert normal.normalized
    assert len(normal.terms) == 2
    assert measure(normal, primes_small) == 1

    duplicate = SetExpression((CylinderSet.of([1]), CylinderSet.of([1])))
    assert len(normalize(duplicate).terms) == 1

    union = SetExpression((CylinderSet.of([1]), CylinderSet.of([2])))
    cells = normalize(union)
    assert len(cells.terms) == 3
    # 1/2 + 1/3 - 1/6 by inclusion-exclusion with p_1 = 2, p_2 = 3
    assert measure(cells, primes_small) == Fraction(2, 3)


def test_normalize_index_cap():
    wide = SetExpression(tuple(CylinderSet.of([i]) for i in range(1, 26)))
    with pytest.raises(NormalizationLimitError):
        normalize(wide)
    narrower = SetExpression(tuple(CylinderSet.of([i]) for i in range(1, 11)))
    assert len(normalize(narrower).terms) == 2**10 - 1
    with pytest.raises(NormalizationLimitError):
        normalize(narrower, index_cap=5)


def test_measure_basics(primes_small):
    assert measure(EMPTY, primes_small) == 0
    assert measure(SetExpression(()), primes_small) == 0
    everything = SetExpression((CylinderSet(),))
    assert measure(everything, primes_small) == 1


def test_contains_examples(primes_small):
    assert contains(CylinderSet.of([1]), 4, primes_small)
    assert not contains(CylinderSet.of([], [1]), 4, primes_small)
    assert contains(CylinderSet.of([1], [2]), 10, primes_small)
    assert not contains(CylinderSet.of([1], [2]), 6, primes_small)
    with pytest.raises(ValueError):
        contains(CylinderSet(), 0, primes_small)


def _random_small_cylinder(rng):
    divisible = frozenset(r for r in range(1, 5) if rng.random() < 0.4)
    not_divisible = frozenset(
        r for r in range(1, 5) if r not in divisible and rng.random() < 0.3
    )
    return CylinderSet(divisible, not_divisible)


def test_contains_respects_field_ops(primes_small):
    rng = random.Random(47)
    for _ in range(60):
        a = _random_small_cylinder(rng)
        b = _random_small_cylinder(rng)
        both = intersect(a, b)
        comp = complement(a)
        for n in range(1, 400):
            in_a = contains(a, n, primes_small)
            in_b = contains(b, n, primes_small)
            assert expression_contains(both, n, primes_small) == (in_a and in_b)
            assert expression_contains(comp, n, primes_small) == (not in_a)


@settings(deadline=None, max_examples=80)
@given(cylinders())
def test_complement_measure_identity(c):
    primes = PRIMES100
    assert cylinder_measure(c, primes) + measure(complement(c), primes) == 1


@settings(deadline=None, max_examples=80)
@given(st.lists(cylinders(), min_size=1, max_size=4))
def test_normalize_preserves_membership(terms):
    primes = PRIMES100
    expr = SetExpression(tuple(terms))
    normal = normalize(expr)
    assert normal.normalized
    for n in range(1, 250):
        assert expression_contains(expr, n, primes) == expression_contains(
            normal, n, primes
        )


@settings(deadline=None, max_examples=80)
@given(cylinders(), cylinders())
def test_modularity(a, b):
    primes = PRIMES100
    union = SetExpression((a, b))
    lhs = cylinder_measure(a, primes) + cylinder_measure(b, primes)
    rhs = measure(union, primes) + measure(intersect(a, b), primes)
    assert lhs == rhs


@settings(deadline=None, max_examples=100)
@given(cylinders())
def test_measure_in_unit_interval(c):
    primes = PRIMES100
    value = cylinder_measure(c, primes)
    assert 0 <= value <= 1


def test_euler_product_values(primes_small):
    assert euler_product(1, primes_small) == Fraction(3, 4)
    assert euler_product(2, primes_small) == Fraction(2, 3)
    assert euler_product(4, primes_small) == Fraction(768, 1225)
    assert abs(euler_product(25, primes_small) - Fraction("0.6079271")) < Fraction(2, 1000)
    with pytest.raises(ValueError):
        euler_product(0, primes_small)


def test_euler_product_decreasing_above_constant(primes_small):
    values = [euler_product(k, primes_small) for k in range(1, 60)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(v > COPRIME_DENSITY for v in values)


def test_sampler_deterministic(primes_small):
    first = sample_coprime_estimate(25, 10**5, 42, primes_small)
    second = sample_coprime_estimate(25, 10**5, 42, primes_small)
    assert first == second
    assert first.estimate == pytest.approx(0.60793, abs=1e-9)
    assert first.standard_error == pytest.approx(0.0015438624132350655, abs=1e-12)


def test_sampler_single_prime(primes_small):
    est = sample_coprime_estimate(1, 2 * 10**5, 42, primes_small)
    assert abs(est.estimate - 0.75) <= 4 * est.standard_error


def test_sampler_validation(primes_small):
    with pytest.raises(ValueError):
        sample_coprime_estimate(0, 10, 1, primes_small)
    with pytest.raises(ValueError):
        sample_coprime_estimate(2, 0, 1, primes_small)
