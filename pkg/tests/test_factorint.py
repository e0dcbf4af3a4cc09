import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from powerfree.factorint import (factorize, integer_nth_root,
                                 is_perfect_kth_power, is_prime,
                                 prime_factors)

# strong pseudoprimes and Carmichael numbers that defeat weak tests
HARD_COMPOSITES = [
    341, 561, 1105, 1729, 2465, 2821, 6601, 8911, 25326001,
    3215031751, 3825123056546413051,
]


def test_is_prime_matches_sympy_range():
    for n in range(1, 20000):
        assert is_prime(n) == sympy.isprime(n), n


def test_is_prime_hard_composites():
    for n in HARD_COMPOSITES:
        assert not is_prime(n), n


def test_is_prime_large_primes():
    for p in [2 ** 61 - 1, 4611686018427387847, 67280421310721]:
        assert is_prime(p)


def test_factorize_matches_sympy_range():
    for n in range(1, 5000):
        assert factorize(n) == sympy.factorint(n), n


def test_factorize_random_64bit():
    rng = random.Random(12345)
    for _ in range(40):
        n = rng.randrange(2, 2 ** 62)
        assert factorize(n) == sympy.factorint(n), n


def test_factorize_adversarial_shapes():
    cases = [
        2 ** 60,
        3 ** 37,
        (2 ** 31 - 1) ** 2,
        1000003 * 1000033,
        6700417 * 672804213107,
        2 * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29 * 31 * 37,
    ]
    for n in cases:
        f = factorize(n)
        prod = 1
        for p, e in f.items():
            assert sympy.isprime(p)
            prod *= p ** e
        assert prod == n


def test_prime_factors_sorted_distinct():
    assert prime_factors(360) == (2, 3, 5)
    assert prime_factors(1) == ()


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)


def test_integer_nth_root_exact_cases():
    assert integer_nth_root(0, 3) == 0
    assert integer_nth_root(1, 7) == 1
    assert integer_nth_root(8, 3) == 2
    assert integer_nth_root(7, 3) == 1
    assert integer_nth_root(10 ** 36, 6) == 10 ** 6
    big = 10 ** 30
    assert integer_nth_root(big ** 5 - 1, 5) == big - 1


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 128),
       st.integers(min_value=1, max_value=12))
def test_integer_nth_root_defining_property(n, k):
    r = integer_nth_root(n, k)
    assert r ** k <= n < (r + 1) ** k


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 40),
       st.integers(min_value=2, max_value=8))
def test_is_perfect_kth_power_agrees_with_root(n, k):
    r = integer_nth_root(n, k)
    assert is_perfect_kth_power(n, k) == (r ** k == n)


def test_perfect_power_boundary_values():
    for r in [2, 3, 10, 2 ** 21]:
        for k in (2, 3, 4):
            assert is_perfect_kth_power(r ** k, k)
            assert not is_perfect_kth_power(r ** k + 1, k)
            assert not is_perfect_kth_power(r ** k - 1, k)
