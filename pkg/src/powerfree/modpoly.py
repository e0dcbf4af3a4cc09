"""Polynomial arithmetic over prime fields, per-prime and batched.

Coefficient lists are ascending. The per-prime routines work on plain
Python ints (degrees here are tiny, 1 through 5). The batched routines
run one Frobenius ladder x^p mod f across a whole numpy vector of primes
at once, which is what makes root counting to p ~ 10^6 affordable: the
ladder is ~2 log2(p) small fixed-shape convolutions on int64 vectors.

Intermediate products stay below 2^63: coefficients are reduced below p
after every convolution and p is capped at 2^31 in the batch path.
"""
from __future__ import annotations

import math

import numpy as np

_BATCH_PRIME_CAP = 1 << 31


# ---------------------------------------------------------------- per-prime

def poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod_p(coeffs, p: int) -> list[int]:
    return poly_trim([c % p for c in coeffs])


def poly_deg(a) -> int:
    return len(a) - 1


def poly_monic(a: list[int], p: int) -> list[int]:
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """a mod b over F_p; b nonzero."""
    a = a[:]
    db = poly_deg(b)
    inv = pow(b[-1], p - 2, p)
    while poly_deg(a) >= db:
        da = poly_deg(a)
        c = a[-1] * inv % p
        if c:
            for j in range(db + 1):
                a[da - db + j] = (a[da - db + j] - c * b[j]) % p
        a.pop()
        poly_trim(a)
    return a


def poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd over F_p (either argument may be [])."""
    a, b = poly_mod_p(a, p), poly_mod_p(b, p)
    while b:
        a, b = b, poly_rem(a, b, p)
    return poly_monic(a, p) if a else []


def poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    """a*b mod (f, p); f monic."""
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return poly_rem(poly_trim(out), f, p)


def poly_powmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = poly_rem(poly_mod_p(base, p), f, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def sqrt_mod_p(a: int, p: int) -> int | None:
    """A square root of a mod odd prime p, or None when a is not a square.

    Tonelli-Shanks with the deterministic least non-residue as generator.
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        r = r * b % p
    return r


def split_linear_roots(g: list[int], p: int) -> list[int]:
    """Roots of g over F_p, where g is a nonzero product of distinct linear
    factors (as any divisor of x^p - x is). Deterministic shift sequence."""
    g = poly_monic(poly_mod_p(g, p), p)
    d = poly_deg(g)
    if d <= 0:
        return []
    if d == 1:
        return [(-g[0]) % p]
    if d == 2:
        b, c = g[1], g[0]
        disc = (b * b - 4 * c) % p
        s = sqrt_mod_p(disc, p)
        if s is None:  # cannot happen for split input; defensive
            raise ArithmeticError(f"expected split quadratic mod {p}")
        inv2 = pow(2, p - 2, p)
        return sorted({(-b + s) * inv2 % p, (-b - s) * inv2 % p})
    # degree >= 3: equal-degree splitting by quadratic-residue classes of
    # shifted roots; the shift a walks 0, 1, 2, ... so runs are reproducible
    half = (p - 1) // 2
    for a in range(p):
        w = poly_gcd([a, 1], g, p)
        if poly_deg(w) == 1:
            root = (-w[0]) % p
            rest = _poly_quotient_exact(g, w, p)
            return sorted([root] + split_linear_roots(rest, p))
        h = poly_powmod([a, 1], half, g, p)
        h = poly_trim([(h[0] - 1) % p] + h[1:] if h else [(-1) % p])
        w = poly_gcd(h, g, p)
        if 0 < poly_deg(w) < d:
            rest = _poly_quotient_exact(g, w, p)
            return sorted(split_linear_roots(w, p) + split_linear_roots(rest, p))
    raise ArithmeticError(f"splitting stalled mod {p}")  # unreachable for split g


def _poly_quotient_exact(a: list[int], b: list[int], p: int) -> list[int]:
    """a / b over F_p when b | a exactly."""
    a = a[:]
    db = poly_deg(b)
    inv = pow(b[-1], p - 2, p)
    q = [0] * (poly_deg(a) - db + 1)
    while poly_deg(a) >= db:
        da = poly_deg(a)
        c = a[-1] * inv % p
        q[da - db] = c
        for j in range(db + 1):
            a[da - db + j] = (a[da - db + j] - c * b[j]) % p
        poly_trim(a)
    return q


def count_roots_prime(coeffs, p: int) -> int:
    """Number of distinct roots of f over F_p as deg gcd(x^p - x, f).

    Needs p not dividing the leading coefficient; f nonzero mod p.
    """
    f = poly_mod_p(coeffs, p)
    if not f:
        raise ValueError(f"polynomial vanishes mod {p}")
    if poly_deg(f) == 0:
        return 0
    f = poly_monic(f, p)
    xp = poly_powmod([0, 1], p, f, p)
    h = xp[:]
    while len(h) < 2:
        h.append(0)
    h[1] = (h[1] - 1) % p
    g = poly_gcd(poly_trim(h), f, p)
    return max(poly_deg(g), 0)


def roots_prime_gcd(coeffs, p: int) -> list[int]:
    """Distinct roots of f over F_p by gcd with x^p - x, then splitting."""
    f = poly_mod_p(coeffs, p)
    if not f:
        return list(range(p))
    if poly_deg(f) == 0:
        return []
    f = poly_monic(f, p)
    xp = poly_powmod([0, 1], p, f, p)
    h = xp[:]
    while len(h) < 2:
        h.append(0)
    h[1] = (h[1] - 1) % p
    g = poly_gcd(poly_trim(h), f, p)
    if poly_deg(g) <= 0:
        return []
    return split_linear_roots(g, p)


# ------------------------------------------------------------------- batched

def _pow_vec(base: np.ndarray, expo: np.ndarray, mod: np.ndarray) -> np.ndarray:
    """Elementwise base**expo % mod for int64 vectors (binary ladder)."""
    result = np.ones_like(mod)
    b = base % mod
    e = expo.copy()
    while e.max() > 0:
        odd = (e & 1) == 1
        result[odd] = result[odd] * b[odd] % mod[odd]
        e >>= 1
        b = b * b % mod
    return result


def batch_split_part(coeffs, primes: np.ndarray, want_gcds: bool = True):
    """For each prime p (vector), the monic product of the distinct linear
    factors of f mod p, i.e. gcd(x^p - x, f).

    Returns (counts, gcds): counts[i] is the number of distinct roots of f
    mod primes[i]; gcds[i] is the ascending coefficient list of the gcd
    (present only when counts[i] > 0 and want_gcds, else None).

    Requires every p to exceed max(3, |lc|'s prime divisors): callers route
    tiny primes and divisors of the leading coefficient to the scan path.
    """
    primes = np.asarray(primes, dtype=np.int64)
    if len(primes) == 0:
        return np.zeros(0, dtype=np.int64), []
    if int(primes.max()) >= _BATCH_PRIME_CAP:
        raise ValueError("batch path caps primes at 2^31")
    d = len(coeffs) - 1
    P = primes
    n = len(P)
    cols = [_big_mod(int(c), P) for c in coeffs]
    ilc = _pow_vec(cols[d], P - 2, P)
    F = [cols[j] * ilc % P for j in range(d)]  # monic lower coefficients

    def mul(A, B):
        T = [np.zeros(n, dtype=np.int64) for _ in range(2 * d - 1)]
        for i in range(d):
            Ai = A[i]
            for j in range(d):
                T[i + j] = (T[i + j] + Ai * B[j]) % P
        for s in range(2 * d - 2, d - 1, -1):
            t = T[s]
            for j in range(d):
                T[s - d + j] = (T[s - d + j] - t * F[j]) % P
        return T[:d]

    def mul_by_x(A):
        S = [np.zeros(n, dtype=np.int64)] + A[:]
        t = S[d]
        return [(S[j] - t * F[j]) % P for j in range(d)]

    R = [np.zeros(n, dtype=np.int64) for _ in range(d)]
    R[0][:] = 1
    maxb = int(P.max()).bit_length()
    for i in range(maxb - 1, -1, -1):
        R = mul(R, R)
        bit = ((P >> i) & 1) == 1
        Rx = mul_by_x(R)
        for j in range(d):
            R[j] = np.where(bit, Rx[j], R[j])
    # h = x^p - x, with x itself reduced mod the monic f (nontrivial for d = 1,
    # where x = -F[0] in the quotient ring)
    if d == 1:
        R[0] = (R[0] + F[0]) % P
    else:
        R[1] = (R[1] - 1) % P

    counts = np.zeros(n, dtype=np.int64)
    gcds: list[list[int] | None] = [None] * n
    hcols = [r.tolist() for r in R]
    fcols = [f.tolist() for f in F]
    plist = P.tolist()
    for i in range(n):
        p = plist[i]
        h = poly_trim([hcols[j][i] for j in range(d)])
        fm = [fcols[j][i] for j in range(d)] + [1]
        g = poly_gcd(h, fm, p)
        dg = poly_deg(g)
        if dg > 0:
            counts[i] = dg
            if want_gcds:
                gcds[i] = g
    return counts, gcds


def _big_mod(c: int, P: np.ndarray) -> np.ndarray:
    """c mod p elementwise, exact for arbitrary-precision c."""
    if -(1 << 62) < c < (1 << 62):
        return np.mod(np.int64(c), P)
    out = np.array([c % int(p) for p in P.tolist()], dtype=np.int64)
    return out
