import random
from math import comb

import pytest

from diffdim.lattice import count_excluded, dimension_polynomial, exponent_set, minimize


def test_minimize_examples():
    assert minimize(exponent_set(2, [(1, 0), (2, 0)])).sorted_elements() == [(1, 0)]
    assert minimize(exponent_set(2, [])).sorted_elements() == []
    assert minimize(exponent_set(2, [(1, 2), (2, 1)])).sorted_elements() == [(1, 2), (2, 1)]


def test_count_excluded_examples():
    assert count_excluded(exponent_set(2, []), 3) == comb(5, 2)
    assert count_excluded(exponent_set(3, [(0, 0, 0)]), 4) == 0
    assert count_excluded(exponent_set(2, [(1, 1)]), 4) == 9


def test_dimension_polynomial_examples():
    poly, _ = dimension_polynomial(exponent_set(2, [(1, 0), (0, 1)]))
    assert poly.std_coeffs == (1,)
    poly, _ = dimension_polynomial(exponent_set(3, []))
    assert poly.std_coeffs == (1, 0, 0, 0)
    poly, s0 = dimension_polynomial(exponent_set(2, [(1, 1)]))
    assert poly.std_coeffs == (2, -1)
    assert all(poly.evaluate(s) == count_excluded(exponent_set(2, [(1, 1)]), s) for s in range(s0, s0 + 5))


def test_negative_s_rejected():
    with pytest.raises(ValueError):
        count_excluded(exponent_set(2, [(1, 1)]), -1)


def test_oracle_equivalence_random():
    rng = random.Random(2024)
    for _ in range(60):
        m = rng.randint(1, 4)
        k = rng.randint(1, 6)
        E = exponent_set(m, [tuple(rng.randint(0, 5) for _ in range(m)) for _ in range(k)])
        poly, s0 = dimension_polynomial(E)
        for s in range(s0, s0 + 4):
            assert poly.evaluate(s) == count_excluded(E, s)


def test_minimization_invariance():
    rng = random.Random(5)
    for _ in range(30):
        m = rng.randint(1, 3)
        E = exponent_set(m, [tuple(rng.randint(0, 4) for _ in range(m)) for _ in range(5)])
        assert dimension_polynomial(E) == dimension_polynomial(minimize(E))


def test_monotonicity_under_inclusion():
    rng = random.Random(6)
    for _ in range(20):
        m = rng.randint(1, 3)
        vectors = [tuple(rng.randint(0, 4) for _ in range(m)) for _ in range(4)]
        E = exponent_set(m, vectors[:2])
        F = exponent_set(m, vectors)
        for s in range(0, 6):
            assert count_excluded(E, s) >= count_excluded(F, s)


def test_degree_bound():
    rng = random.Random(9)
    empty, _ = dimension_polynomial(exponent_set(3, []))
    assert empty.degree == 3
    for _ in range(20):
        m = rng.randint(1, 3)
        E = exponent_set(m, [tuple(rng.randint(0, 3) for _ in range(m)) for _ in range(3)])
        poly, _ = dimension_polynomial(E)
        assert poly.degree < m  # nonempty E always cuts the top simplex
