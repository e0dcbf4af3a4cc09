"""Euler products for the density of k-free polynomial values.

The density of {n : f(n) is k-free} is prod over primes of
(1 - rho_f(p^k) / p^k), with rho_f the local root count. Truncating the
product at P leaves a computable error: for good primes p > P the local
count is at most deg f, so the missing log mass is below
2 deg f / ((k-1) P^(k-1)) once every singular prime is inside the cutoff.
Each constant here therefore comes with certified lower/upper enclosure,
not just a point value.

The named constants (twin squarefree, the quadratic n^2 + 1 density, the
two-quadratic pair density) are written out from their closed prime forms
as an independent route to the same numbers the generic evaluator gives.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import HypothesisViolation
from .local_roots import batch_root_counts, lift_roots, local_root_count
from .poly import IntPolynomial, has_fixed_kth_power, profile
from .sieve import primes_up_to


@dataclass(frozen=True)
class DensityResult:
    """Truncated Euler product with a certified enclosure.

    value is the partial product over p <= P; the full product sits in
    [lower, value] (dropping factors < 1 only decreases it).
    """

    value: float
    lower: float
    upper: float
    P: int
    k: int
    degree: int
    bad_primes: tuple[int, ...]

    @property
    def tail_width(self) -> float:
        return self.upper - self.lower


def density(f: IntPolynomial, k: int, P: int) -> DensityResult:
    """prod_{p <= P} (1 - rho_f(p^k)/p^k) with a rigorous tail bound.

    Preconditions enforced: k >= 2; f squarefree as a polynomial (else the
    product is meaningless and HypothesisViolation is raised); P at least
    the largest singular prime (else ValueError says how far to raise it);
    P^k > 2 deg f so the tail bound's log expansion is valid. A fixed k-th
    power divisor short-circuits to the exact answer 0.
    """
    if k < 2:
        raise ValueError("k >= 2 required")
    prof = profile(f)
    if not prof.is_squarefree_poly:
        raise HypothesisViolation(
            f"{f.text()} has a repeated factor; the k-free density is 0 "
            f"and the local product does not converge to it"
        )
    bad = prof.bad_primes or ()
    if has_fixed_kth_power(f, k) is not None:
        return DensityResult(0.0, 0.0, 0.0, P, k, f.degree, bad)
    if bad and max(bad) > P:
        raise ValueError(
            f"P={P} is below the largest singular prime {max(bad)}; "
            f"the tail bound needs all singular primes inside the cutoff"
        )
    d = f.degree
    if P ** k <= 2 * d:
        raise ValueError(f"P^k must exceed 2*deg={2 * d} for the tail bound")

    primes = primes_up_to(P)
    badset = set(bad)
    good = np.array([p for p in primes.tolist() if p not in badset],
                    dtype=np.int64)
    counts = batch_root_counts(f, good)
    logs = []
    for p, rho in zip(good.tolist(), counts.tolist()):
        if rho:
            logs.append(math.log1p(-rho / p ** k))
    for p in sorted(badset):
        rho = lift_roots(f, p, k).rho
        pk = p ** k
        if rho == pk:
            return DensityResult(0.0, 0.0, 0.0, P, k, d, bad)
        if rho:
            logs.append(math.log1p(-rho / pk))
    value = math.exp(math.fsum(logs))
    # good p > P have rho(p^k) = rho(p) <= d and d/p^k <= 1/2, so
    # -log(1 - x) <= 2x gives tail log mass <= 2d sum_{m>P} m^-k
    tail = 2.0 * d / ((k - 1) * P ** (k - 1))
    return DensityResult(value, value * math.exp(-tail), value, P, k, d, bad)


def twin_constant(P: int) -> DensityResult:
    """prod_{p <= P} (1 - 2/p^2), the density of n with n and n+1 both
    squarefree, with tail enclosure (local count of n(n+1) mod p^2 is 2)."""
    if P < 3:
        raise ValueError("P >= 3 required")
    logs = [math.log1p(-2.0 / p ** 2) for p in primes_up_to(P).tolist()]
    value = math.exp(math.fsum(logs))
    tail = 4.0 / P  # 2 * 2 / ((2-1) * P)
    return DensityResult(value, value * math.exp(-tail), value, P, 2, 2, ())


def estermann_constant(P: int) -> DensityResult:
    """prod_{p <= P, p = 1 mod 4} (1 - 2/p^2): density of squarefree n^2+1.

    Only p = 1 mod 4 contribute (n^2 = -1 needs -1 to be a square; at p = 2
    the value n^2 + 1 is never divisible by 4). Tail: the p > P terms are
    spaced at least 4 apart among integers = 1 mod 4, so the missing log
    mass is under sum_{m > P, m = 1 mod 4} 4/m^2 <= 1/(P-3).
    """
    if P < 5:
        raise ValueError("P >= 5 required")
    logs = [math.log1p(-2.0 / p ** 2)
            for p in primes_up_to(P).tolist() if p % 4 == 1]
    value = math.exp(math.fsum(logs))
    tail = 1.0 / (P - 3)
    return DensityResult(value, value * math.exp(-tail), value, P, 2, 2, (2,))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, by Euler's criterion."""
    if p <= 2 or p % 2 == 0:
        raise ValueError("odd prime required")
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def quadratic_pair_constant(P: int) -> DensityResult:
    """Density of n with (n^2+1)(n^2+2) squarefree, as an explicit product.

    For odd p the factors have 1 + (-1/p) and 1 + (-2/p) roots mod p, never
    shared (their resultant is 1), and every root lifts uniquely since only
    p = 2 is singular for the quartic; so rho(p^2) = 2 + (-1/p) + (-2/p).
    At p = 2 neither n^2+1 nor n^2+2 is ever divisible by 4, contributing a
    factor 1. Tail <= 8/P from rho <= 4 = deg.
    """
    if P < 5:
        raise ValueError("P >= 5 required")
    logs = []
    for p in primes_up_to(P).tolist():
        if p == 2:
            continue
        a = legendre(-1, p) + legendre(-2, p) + 2
        if a:
            logs.append(math.log1p(-a / p ** 2))
    value = math.exp(math.fsum(logs))
    tail = 8.0 / P
    return DensityResult(value, value * math.exp(-tail), value, P, 2, 4, (2,))


def local_factor(f: IntPolynomial, p: int, k: int) -> float:
    """The single Euler factor 1 - rho_f(p^k)/p^k."""
    return 1.0 - local_root_count(f, p, k) / p ** k
