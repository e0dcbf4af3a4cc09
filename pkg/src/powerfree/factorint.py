"""Deterministic integer factorization for cofactor-scale inputs.

Miller-Rabin with the fixed witness set {2, 3, 5, ..., 37} is a proven
primality test below 3.317e24, far above anything this package factors.
Composites are split with Brent's cycle variant of the rho method using a
fixed starting point and a fixed increment sequence, so results never
depend on a random source. Trial division by a small prime table runs
first so rho only ever sees hard cofactors.
"""
from __future__ import annotations

import math
from functools import lru_cache

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_PROVEN_BELOW = 3_317_044_064_679_887_385_961_981

_SMALL_PRIMES: tuple[int, ...] = tuple(
    p for p in range(2, 1000)
    if all(p % q for q in range(2, math.isqrt(p) + 1))
)


def is_prime(n: int) -> bool:
    """Deterministic for n < 3.317e24; raises beyond that range."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:12]:
        if n % p == 0:
            return n == p
    if n >= _MR_PROVEN_BELOW:
        raise ValueError(f"primality of {n} is outside the proven witness range")
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int) -> int:
    """A nontrivial factor of odd composite n, deterministically."""
    if n % 2 == 0:
        return 2
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"rho failed to split {n}")  # unreachable in practice


def factorize(n: int) -> dict[int, int]:
    """Full prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _brent(m)
        stack.append(d)
        stack.append(m // d)
    return out


@lru_cache(maxsize=4096)
def prime_factors(n: int) -> tuple[int, ...]:
    """Sorted distinct primes dividing n (n >= 1)."""
    return tuple(sorted(factorize(n)))


def integer_nth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, by Newton steps on exact ints."""
    if n < 0 or k < 1:
        raise ValueError("integer_nth_root needs n >= 0, k >= 1")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)  # >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    return x


def is_perfect_kth_power(n: int, k: int) -> bool:
    """True when n = r^k for some integer r >= 0 (n >= 0, k >= 2)."""
    if n < 0:
        return False
    r = integer_nth_root(n, k)
    return r ** k == n
