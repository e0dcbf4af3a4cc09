"""Roots and root counts of integer polynomials modulo prime powers.

Two regimes. At a prime p where the reduction of f stays squarefree of
full degree ("good": p does not divide Res(f, f') * lc(f)), every root mod
p lifts uniquely by Newton's method, so the count mod p^k equals the count
mod p. At the finitely many singular primes the lift can branch or die;
those are walked level by level with exact integer arithmetic. Every root
this module hands back has been re-verified by evaluating f exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import modpoly
from .errors import CapacityError
from .factorint import factorize, is_prime
from .poly import IntPolynomial, profile

# crossover between the O(p) residue scan and the O(deg^2 log p) gcd
# split: the scan only wins while p is small, and tiny p must stay on it
# (the equal-degree splitter needs odd p well past the degree)
SCAN_LIMIT = 2048
LIFT_ROOT_CAP = 10 ** 6
_SCAN_HARD_CAP = 1 << 26  # a residue scan beyond this would stall


@dataclass(frozen=True)
class LocalRootData:
    """Distinct roots of f modulo p^k.

    roots is None when the count exceeded the requested cap and only rho
    was kept. is_bad records whether p is singular for f.
    """

    p: int
    k: int
    rho: int
    roots: tuple[int, ...] | None
    is_bad: bool

    @property
    def modulus(self) -> int:
        return self.p ** self.k


def is_bad_prime(f: IntPolynomial, p: int) -> bool:
    prof = profile(f)
    if not prof.is_squarefree_poly:
        return True
    return (prof.resultant_with_derivative * prof.leading) % p == 0


def _certify(f: IntPolynomial, m: int, roots) -> None:
    for r in roots:
        if f(r) % m != 0:
            raise AssertionError(f"uncertified root {r} mod {m} for {f.text()}")


def _scan_roots(f: IntPolynomial, p: int) -> tuple[int, ...]:
    """All roots mod p by evaluating every residue (vectorized, lazy
    reduction: two Horner steps keep values below p^3 < 2^63 for p <= 2e6)."""
    if p > _SCAN_HARD_CAP:
        raise CapacityError(f"residue scan at p={p} is out of range")
    n = np.arange(p, dtype=np.int64)
    cs = [c % p for c in f.coeffs]
    acc = np.full(p, cs[-1], dtype=np.int64)
    pending = 0
    for c in reversed(cs[:-1]):
        acc = acc * n + c
        pending += 1
        if pending == 2:
            acc %= p
            pending = 0
    if pending:
        acc %= p
    return tuple(int(r) for r in np.nonzero(acc == 0)[0])


def roots_mod_p(f: IntPolynomial, p: int, scan_limit: int = SCAN_LIMIT) -> tuple[int, ...]:
    """Sorted distinct roots of f mod p.

    Small p (up to scan_limit) uses a full residue scan. Larger p splits
    the linear part of f mod p: gcd(x^p - x, f) collects the roots as a
    product of linear factors, and deterministic equal-degree splitting
    extracts them. Either way each root is re-checked by exact evaluation.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if all(c % p == 0 for c in f.coeffs):
        # f vanishes identically mod p; every residue is a root
        if p > _SCAN_HARD_CAP:
            raise CapacityError(f"f is 0 mod {p}: root set too large to list")
        return tuple(range(p))
    if p <= scan_limit:
        roots = _scan_roots(f, p)
    else:
        roots = tuple(sorted(modpoly.roots_prime_gcd(list(f.coeffs), p)))
    _certify(f, p, roots)
    return roots


def count_roots_mod_p(f: IntPolynomial, p: int) -> int:
    """Number of distinct roots of f mod p, via deg gcd(x^p - x, f mod p).

    When p divides the leading coefficient the degree drops; the count is
    then taken by residue scan.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if all(c % p == 0 for c in f.coeffs):
        return p
    if f.leading % p == 0 or p <= 13:
        return len(roots_mod_p(f, p))
    return modpoly.count_roots_prime(list(f.coeffs), p)


def lift_roots(f: IntPolynomial, p: int, k: int, cap: int = LIFT_ROOT_CAP) -> LocalRootData:
    """Roots of f mod p^k by Hensel lifting.

    Good primes lift each root mod p uniquely (simple Newton step per
    level, using the inverse of f'(root) mod p). Singular primes branch:
    with f(r) = c0 * p^j + O(p^(j+1)) along r fixed mod p^j, the children
    mod p^(j+1) solve c0 + t f'(r) = 0 (mod p), giving one child, none, or
    p of them. Root lists longer than cap are counted but elided.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if k < 1:
        raise ValueError("k >= 1 required")
    bad = is_bad_prime(f, p)
    base = roots_mod_p(f, p)
    if k == 1:
        return LocalRootData(p, 1, len(base), base, bad)

    m = p ** k
    if not bad:
        der = f.derivative()
        lifted = []
        for r0 in base:
            inv = pow(der(r0) % p, p - 2, p)
            r, pj = r0, p
            for _ in range(k - 1):
                t = (-(f(r) // pj) * inv) % p
                r += t * pj
                pj *= p
            lifted.append(r)
        roots = tuple(sorted(lifted))
        _certify(f, m, roots)
        if len(roots) > cap:
            return LocalRootData(p, k, len(roots), None, bad)
        return LocalRootData(p, k, len(roots), roots, bad)

    der = f.derivative()
    level = list(base)
    pj = p
    for _ in range(k - 1):
        nxt = []
        for r in level:
            c0 = (f(r) // pj) % p
            c1 = der(r) % p
            if c1 != 0:
                t = (-c0 * pow(c1, p - 2, p)) % p
                nxt.append(r + t * pj)
            elif c0 == 0:
                nxt.extend(r + t * pj for t in range(p))
            # c1 == 0 and c0 != 0: no lift from this branch
        level = nxt
        pj *= p
        if len(level) > 8 * cap:
            raise CapacityError(
                f"lift of {f.text()} at p={p} exceeded {8 * cap} residues"
            )
    rho = len(level)
    if rho > cap:
        return LocalRootData(p, k, rho, None, bad)
    roots = tuple(sorted(level))
    _certify(f, m, roots)
    return LocalRootData(p, k, rho, roots, bad)


def local_root_count(f: IntPolynomial, p: int, k: int) -> int:
    """rho_f(p^k): distinct roots of f mod p^k.

    At good primes this is the count mod p for every k >= 1; singular
    primes go through the full lift.
    """
    if k == 1:
        return count_roots_mod_p(f, p)
    if not is_bad_prime(f, p):
        return count_roots_mod_p(f, p)
    return lift_roots(f, p, k).rho


def local_root_count_squarefree(f: IntPolynomial, d: int, k: int = 1) -> int:
    """rho_f(d^k) for squarefree d >= 1, by multiplicativity (CRT).

    Rejects d with a repeated prime factor: the multiplicative splitting
    rho(ab) = rho(a) rho(b) needs gcd(a, b) = 1, which squarefree d
    guarantees across its prime powers.
    """
    if d < 1:
        raise ValueError("d >= 1 required")
    if d == 1:
        return 1
    fac = factorize(d)
    if any(e > 1 for e in fac.values()):
        raise ValueError(f"d={d} is not squarefree")
    out = 1
    for p in fac:
        out *= local_root_count(f, p, k)
        if out == 0:
            return 0
    return out


_BATCH_MIN_PRIME = 50


def batch_root_counts(f: IntPolynomial, primes: np.ndarray) -> np.ndarray:
    """rho_f(p) for every p in primes (sorted ascending), vectorized.

    Primes that are tiny, singular, or divide lc(f) are handled one at a
    time; the rest go through the batched Frobenius ladder.
    """
    primes = np.asarray(primes, dtype=np.int64)
    out = np.zeros(len(primes), dtype=np.int64)
    prof = profile(f)
    if not prof.is_squarefree_poly:
        raise ValueError("repeated factor: counts are not well defined per prime")
    special = abs(prof.resultant_with_derivative * prof.leading)
    slow = (primes <= _BATCH_MIN_PRIME)
    if special > 1:
        for q in factorize(special):
            slow |= primes == q
    idx_slow = np.nonzero(slow)[0]
    for i in idx_slow.tolist():
        out[i] = count_roots_mod_p(f, int(primes[i]))
    idx_fast = np.nonzero(~slow)[0]
    if len(idx_fast):
        counts, _ = modpoly.batch_split_part(
            list(f.coeffs), primes[idx_fast], want_gcds=False
        )
        out[idx_fast] = counts
    return out


def batch_roots(f: IntPolynomial, primes: np.ndarray,
                scan_below: int = 10 ** 4) -> dict[int, np.ndarray]:
    """Root lists mod p for many primes at once: {p: sorted int64 array}.

    Primes up to scan_below (and any singular or lc-dividing stragglers)
    are scanned; the rest get their linear split part from one batched
    Frobenius pass, then per-prime equal-degree splitting extracts the
    roots. All roots are re-verified exactly. Primes with no roots are
    omitted from the dict.
    """
    primes = np.asarray(primes, dtype=np.int64)
    prof = profile(f)
    special = abs(prof.leading * prof.content)
    out: dict[int, np.ndarray] = {}
    slow = primes <= max(scan_below, _BATCH_MIN_PRIME)
    if special > 1:
        for q in factorize(special):
            slow |= primes == q
    for p in primes[slow].tolist():
        rs = roots_mod_p(f, p)
        if rs:
            out[p] = np.asarray(rs, dtype=np.int64)
    fast = primes[~slow]
    if len(fast):
        counts, gcds = modpoly.batch_split_part(list(f.coeffs), fast, want_gcds=True)
        for j in np.nonzero(counts > 0)[0].tolist():
            p = int(fast[j])
            rs = sorted(modpoly.split_linear_roots(gcds[j], p))
            if len(rs) != counts[j]:
                raise AssertionError(f"split at p={p} lost roots")
            for r in rs:
                if f(r) % p != 0:
                    raise AssertionError(f"uncertified batch root {r} mod {p}")
            out[p] = np.asarray(rs, dtype=np.int64)
    return out
