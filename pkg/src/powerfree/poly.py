"""Exact integer polynomials and the profile data the sieves need.

Coefficients are ascending (coeffs[i] multiplies x^i) and arbitrary
precision throughout; nothing here rounds. The profile of a polynomial
collects what the rest of the package keys on: whether f has a repeated
factor (resultant of f and f' vanishes), the primes where reduction mod p
is singular, the fixed divisor gcd(f(0), ..., f(d)), and an irreducibility
tier that is advisory only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import modpoly
from .errors import CapacityError
from .factorint import factorize, prime_factors

_INT64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class IntPolynomial:
    """Nonzero polynomial with integer coefficients, ascending order."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] == 0:
            raise ValueError("zero polynomial or unstripped leading zeros")
        if any(not isinstance(c, int) for c in self.coeffs):
            raise TypeError("coefficients must be ints")

    @classmethod
    def from_coeffs(cls, seq) -> "IntPolynomial":
        cs = [int(c) for c in seq]
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            raise ValueError("zero polynomial is not supported")
        return cls(tuple(cs))

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Parse ascending comma-separated coefficients, e.g. "1,0,1".

        Constant polynomials are rejected here: the sieves and densities all
        need degree >= 1, and a bare constant in a CLI flag is almost always
        a typo.
        """
        try:
            parts = [int(t.strip()) for t in text.split(",")]
        except ValueError as e:
            raise ValueError(f"bad polynomial text {text!r}: {e}") from None
        f = cls.from_coeffs(parts)
        if f.degree == 0:
            raise ValueError(f"polynomial {text!r} has degree 0")
        return f

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    @property
    def content(self) -> int:
        return math.gcd(*self.coeffs) if len(self.coeffs) > 1 else abs(self.coeffs[0])

    def __call__(self, n: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial.from_coeffs(out)

    def derivative(self) -> "IntPolynomial":
        if self.degree == 0:
            raise ValueError("derivative of a constant is the zero polynomial")
        return IntPolynomial.from_coeffs(
            [i * c for i, c in enumerate(self.coeffs)][1:]
        )

    def text(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def pretty(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            else:
                xs = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    terms.append(xs)
                elif c == -1:
                    terms.append(f"-{xs}")
                else:
                    terms.append(f"{c}{xs}")
        return " + ".join(terms).replace("+ -", "- ")


def coefficient_bound(f: IntPolynomial, m: int) -> int:
    """An upper bound for |f(n)| over |n| <= m (sum of |c_i| m^i)."""
    m = max(1, abs(int(m)))
    return sum(abs(c) * m ** i for i, c in enumerate(f.coeffs))


def max_abs_value(f: IntPolynomial, N: int) -> int:
    """Exact max of |f(n)| over integers 1 <= n <= N.

    Between real critical points |f| is monotone, so the integer max sits at
    an endpoint or next to a critical point; candidates come from the float
    roots of f' with a +-2 safety window, then get evaluated exactly.
    """
    if N < 1:
        raise ValueError("N >= 1 required")
    cands = {1, N}
    if f.degree >= 2:
        der = f.derivative()
        rts = np.roots([float(c) for c in reversed(der.coeffs)])
        for z in rts:
            if abs(z.imag) <= 1e-6 * (1.0 + abs(z.real)):
                base = math.floor(z.real)
                for t in range(base - 2, base + 3):
                    if 1 <= t <= N:
                        cands.add(t)
    return max(abs(f(t)) for t in cands)


def evaluate_range(f: IntPolynomial, start: int, stop: int) -> np.ndarray:
    """f(n) for n in [start, stop): int64 when a coefficient bound certifies
    no overflow, else an exact object array."""
    if stop <= start:
        return np.zeros(0, dtype=np.int64)
    m = max(abs(start), abs(stop - 1))
    if coefficient_bound(f, m) <= _INT64_MAX:
        n = np.arange(start, stop, dtype=np.int64)
        acc = np.full(stop - start, f.coeffs[-1], dtype=np.int64)
        for c in reversed(f.coeffs[:-1]):
            acc = acc * n + c
        return acc
    n = np.arange(start, stop, dtype=object)
    acc = np.full(stop - start, f.coeffs[-1], dtype=object)
    for c in reversed(f.coeffs[:-1]):
        acc = acc * n + c
    return acc


def fixed_divisor(f: IntPolynomial) -> int:
    """gcd(f(0), f(1), ..., f(d)): divides f(n) for every integer n, and by
    the finite-difference argument equals the gcd over all of them."""
    g = 0
    for t in range(f.degree + 1):
        g = math.gcd(g, f(t))
        if g == 1:
            return 1
    return g


def has_fixed_kth_power(f: IntPolynomial, k: int) -> int | None:
    """Smallest prime p with p^k dividing the fixed divisor, or None."""
    if k < 1:
        raise ValueError("k >= 1 required")
    g = fixed_divisor(f)
    if g <= 1:
        return None
    for p, e in sorted(factorize(g).items()):
        if e >= k:
            return p
    return None


def _pseudo_rem(A: list[int], B: list[int]) -> list[int]:
    """prem(A, B) = lc(B)^(deg A - deg B + 1) * A mod B, exact over Z."""
    a, b = len(A) - 1, len(B) - 1
    c = B[-1]
    R = A[:]
    e = a - b + 1
    while R and len(R) - 1 >= b:
        dR = len(R) - 1
        lead = R[-1]
        newR = [c * x for x in R[:-1]]
        for j in range(b):
            newR[dR - b + j] -= lead * B[j]
        while newR and newR[-1] == 0:
            newR.pop()
        R = newR
        e -= 1
    if e > 0:
        R = [c ** e * x for x in R]
    return R


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g), exact, by the subresultant pseudo-remainder sequence.

    Standard sign convention: Res(f, g) = lc(f)^deg(g) * prod g(alpha) over
    the roots alpha of f (with multiplicity).
    """
    A = list(f.coeffs)
    B = list(g.coeffs)
    if len(A) - 1 < len(B) - 1:
        sgn = -1 if ((len(A) - 1) * (len(B) - 1)) % 2 else 1
        return sgn * resultant(g, f)
    acc = Fraction(1)
    gg, hh = 1, 1  # subresultant coefficient controls
    while True:
        a, b = len(A) - 1, len(B) - 1
        c = B[-1]
        if b == 0:
            return int(acc * Fraction(c) ** a)
        R = _pseudo_rem(A, B)
        if not R:
            return 0
        r = len(R) - 1
        delta = a - b
        # Res(A, B) = (-1)^(ab) c^(a - r) Res(B, R_true), and the pseudo
        # remainder is c^(delta+1) R_true; scaling the second argument of a
        # resultant by t multiplies it by t^deg(first).
        if (a * b) % 2:
            acc = -acc
        acc *= Fraction(c) ** (a - r)
        acc /= Fraction(c ** (delta + 1)) ** b
        # subresultant division keeps coefficients small; compensate the
        # same way (R / t scales Res(B, .) by t^-b)
        div = gg * hh ** delta
        if div != 1:
            R = [x // div for x in R]
            acc *= Fraction(div) ** b
        gg = c
        hh = hh if delta == 0 else _exact_pow_quotient(c, delta, hh)
        A, B = B, R


def _exact_pow_quotient(g: int, delta: int, h: int) -> int:
    """h_(i+1) = g^delta / h^(delta-1), an exact integer by subresultant theory."""
    num = g ** delta
    den = h ** (delta - 1)
    assert den != 0 and num % den == 0
    return num // den


def resultant_with_derivative(f: IntPolynomial) -> int:
    """Res(f, f'); zero exactly when f has a repeated factor."""
    if f.degree == 0:
        raise ValueError("degree >= 1 required")
    if f.degree == 1:
        return f.leading  # Res(ax+b, a) = a
    return resultant(f, f.derivative())


def is_squarefree_poly(f: IntPolynomial) -> bool:
    return resultant_with_derivative(f) != 0


def bad_prime_product(f: IntPolynomial) -> int:
    """Res(f, f') * lc(f): p is singular for f exactly when p divides this."""
    return resultant_with_derivative(f) * f.leading


def bad_primes(f: IntPolynomial) -> tuple[int, ...]:
    """Sorted primes where reduction of f mod p is singular (repeated root
    or dropped degree). Needs a squarefree f, else every prime qualifies."""
    prod = bad_prime_product(f)
    if prod == 0:
        raise ValueError("repeated factor: every prime is singular")
    return prime_factors(abs(prod))


def rational_roots(f: IntPolynomial) -> list[Fraction]:
    """All rational roots, in lowest terms, by the rational root theorem
    with exact integer verification."""
    cs = f.coeffs
    roots: list[Fraction] = []
    low = 0
    while cs[low] == 0:
        low += 1
    if low > 0:
        roots.append(Fraction(0))
    a0 = abs(cs[low])
    ad = abs(cs[-1])
    d = f.degree

    def divisors(n: int) -> list[int]:
        ds = [1]
        for p, e in factorize(n).items():
            ds = [x * p ** j for x in ds for j in range(e + 1)]
        return ds

    for num in divisors(a0):
        for den in divisors(ad):
            if math.gcd(num, den) != 1:
                continue
            for s in (1, -1):
                # f(s*num/den) = 0 iff sum c_i (s num)^i den^(d-i) = 0
                tot = sum(c * (s * num) ** i * den ** (d - i) for i, c in enumerate(cs))
                if tot == 0:
                    roots.append(Fraction(s * num, den))
    return sorted(set(roots))


_IRRED_PRIME_SCAN = 100


def irreducibility_check(f: IntPolynomial) -> str:
    """Advisory tier: "proved", "refuted", or "unverified".

    Degree 1 is proved. Degrees 2 and 3 are irreducible over Q exactly when
    they have no rational root. For degree >= 4 a repeated factor or a
    rational root refutes; otherwise the check looks for a prime p < 100,
    nonsingular for f, with f mod p irreducible (no factor of degree <=
    d/2, detected through gcd(x^(p^i) - x, f) being trivial for i <= d/2),
    which proves irreducibility of the primitive part; failing all that the
    answer is "unverified". Reducible polynomials without rational roots,
    e.g. products of two irreducible quadratics, land in "unverified".
    """
    if f.degree == 0:
        raise ValueError("degree >= 1 required")
    pp = f  # irreducibility over Q ignores content
    if pp.content > 1:
        pp = IntPolynomial.from_coeffs([c // pp.content for c in pp.coeffs])
    d = pp.degree
    if d == 1:
        return "proved"
    if not is_squarefree_poly(pp):
        return "refuted"
    has_root = bool(rational_roots(pp))
    if d <= 3:
        return "refuted" if has_root else "proved"
    if has_root:
        return "refuted"
    bad = set(bad_primes(pp))
    from .sieve import primes_up_to  # local import avoids a cycle at load

    for p in primes_up_to(_IRRED_PRIME_SCAN).tolist():
        if p in bad:
            continue
        if _irreducible_mod_p(pp, p):
            return "proved"
    return "unverified"


def _irreducible_mod_p(f: IntPolynomial, p: int) -> bool:
    """f mod p irreducible, for p nonsingular (so f mod p is squarefree of
    full degree): no irreducible factor of degree <= d/2 may exist."""
    d = f.degree
    fm = modpoly.poly_monic(modpoly.poly_mod_p(f.coeffs, p), p)
    t = [0, 1]  # x
    for _ in range(d // 2):
        t = modpoly.poly_powmod(t, p, fm, p)  # x^(p^i)
        h = t[:]
        while len(h) < 2:
            h.append(0)
        h[1] = (h[1] - 1) % p
        g = modpoly.poly_gcd(modpoly.poly_trim(h), fm, p)
        if modpoly.poly_deg(g) > 0:
            return False
    return True


@dataclass(frozen=True)
class PolyProfile:
    """Hypothesis data for one polynomial, computed once and cached."""

    poly: IntPolynomial
    degree: int
    leading: int
    content: int
    fixed_divisor: int
    resultant_with_derivative: int
    is_squarefree_poly: bool
    bad_primes: tuple[int, ...] | None  # None when not squarefree
    irreducibility: str


@lru_cache(maxsize=256)
def profile(f: IntPolynomial) -> PolyProfile:
    res = resultant_with_derivative(f)
    sf = res != 0
    return PolyProfile(
        poly=f,
        degree=f.degree,
        leading=f.leading,
        content=f.content,
        fixed_divisor=fixed_divisor(f),
        resultant_with_derivative=res,
        is_squarefree_poly=sf,
        bad_primes=prime_factors(abs(res * f.leading)) if sf else None,
        irreducibility=irreducibility_check(f),
    )


def parse_poly_or_product(text: str) -> tuple[IntPolynomial, ...]:
    """Parse "1,0,1" as one factor or "1,0,1*2,0,1" as a factored product."""
    return tuple(IntPolynomial.parse(part) for part in text.split("*"))
