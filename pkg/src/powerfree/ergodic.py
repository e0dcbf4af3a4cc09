"""Averages of g(T^(Omega(a(n))) x) over sieved index sets.

The pipeline: an argument map a(n) (identity, arithmetic progression, or a
Beatty sequence floor(alpha n + beta)), a condition selecting which n count
(all, k-free values of a polynomial, twin squarefree pairs, a product
mask, or an arbitrary precomputed mask), then a histogram of Omega(a(n))
over the selected n. Any orbit average collapses to a dot product against
that histogram, so convergence studies across many checkpoints reuse one
pass of sieve work.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kfree
from .density import density, twin_constant
from .dynamics import OrbitTable
from .poly import IntPolynomial
from .sieve import DEFAULT_SEGMENT, build_tables


# ---------------------------------------------------------------- maps

@dataclass(frozen=True)
class IdentityMap:
    def map_values(self, n: np.ndarray) -> np.ndarray:
        return n

    def max_argument(self, N: int) -> int:
        return N

    def label(self) -> str:
        return "identity"


@dataclass(frozen=True)
class ProgressionMap:
    """n -> m n + r with m >= 1, r >= 0."""

    m: int
    r: int

    def __post_init__(self):
        if self.m < 1 or self.r < 0:
            raise ValueError("m >= 1 and r >= 0 required")

    def map_values(self, n: np.ndarray) -> np.ndarray:
        return self.m * n + self.r

    def max_argument(self, N: int) -> int:
        return self.m * N + self.r

    def label(self) -> str:
        return f"prog:{self.m},{self.r}"


@dataclass(frozen=True)
class BeattyMap:
    """n -> floor(alpha n + beta), requiring alpha > 0 and alpha + beta >= 1
    so every argument is a positive integer.

    Floats are treated as the exact rationals they are. The fast path
    computes alpha*n + beta in double precision; any value within a few ulp
    of an integer is recomputed in exact Fraction arithmetic, so boundary
    cases floor correctly.
    """

    alpha: float | Fraction
    beta: float | Fraction = 0.0

    def __post_init__(self):
        a = Fraction(self.alpha)
        b = Fraction(self.beta)
        if a <= 0 or a + b < 1:
            raise ValueError("alpha > 0 and alpha + beta >= 1 required")

    def map_values(self, n: np.ndarray) -> np.ndarray:
        a, b = float(self.alpha), float(self.beta)
        t = a * n.astype(np.float64) + b
        out = np.floor(t).astype(np.int64)
        sus = np.nonzero(np.abs(t - np.rint(t)) <= 8.0 * np.spacing(np.abs(t) + 1.0))[0]
        if len(sus):
            ae, be = Fraction(self.alpha), Fraction(self.beta)
            for i in sus.tolist():
                out[i] = math.floor(ae * int(n[i]) + be)
        return out

    def max_argument(self, N: int) -> int:
        return math.floor(Fraction(self.alpha) * N + Fraction(self.beta))

    def label(self) -> str:
        return f"beatty:{self.alpha},{self.beta}"


# ---------------------------------------------------------- conditions

class AllIntegers:
    """Every n counts."""

    def mask(self, N: int, *, segment_size: int = DEFAULT_SEGMENT,
             threads: int = 1) -> np.ndarray:
        return np.ones(N, dtype=bool)

    def density(self, P: int, N: int) -> float:
        return 1.0

    def label(self) -> str:
        return "all"


class KfreeValues:
    """n counts when f(n) is k-free; density from the Euler product."""

    def __init__(self, f: IntPolynomial, k: int):
        self.f = f
        self.k = k
        self._cache: dict[tuple[int, int], np.ndarray] = {}

    def mask(self, N: int, *, segment_size: int = DEFAULT_SEGMENT,
             threads: int = 1) -> np.ndarray:
        key = (N, segment_size)
        if key not in self._cache:
            self._cache[key] = kfree.kfree_mask(
                self.f, self.k, N, segment_size=segment_size, threads=threads
            ).bits
        return self._cache[key]

    def density(self, P: int, N: int) -> float:
        return density(self.f, self.k, P).value

    def label(self) -> str:
        return f"kfree:{self.f.text()}:{self.k}"


class TwinSquarefree:
    """n counts when n and n+1 are both squarefree."""

    def __init__(self):
        self._cache: dict[tuple[int, int], np.ndarray] = {}

    def mask(self, N: int, *, segment_size: int = DEFAULT_SEGMENT,
             threads: int = 1) -> np.ndarray:
        key = (N, segment_size)
        if key not in self._cache:
            self._cache[key] = kfree.twin_squarefree_mask(
                N, segment_size=segment_size, threads=threads)
        return self._cache[key]

    def density(self, P: int, N: int) -> float:
        return twin_constant(P).value

    def label(self) -> str:
        return "twinsqfree"


class ProductKfree:
    """n counts when the product of the factors is k-free at n."""

    def __init__(self, factors, k: int):
        self.factors = tuple(factors)
        self.k = k
        self._cache: dict[tuple[int, int], np.ndarray] = {}
        self._expanded = self.factors[0]
        for g in self.factors[1:]:
            self._expanded = self._expanded * g

    def mask(self, N: int, *, segment_size: int = DEFAULT_SEGMENT,
             threads: int = 1) -> np.ndarray:
        key = (N, segment_size)
        if key not in self._cache:
            self._cache[key] = kfree.product_kfree_mask(
                self.factors, self.k, N, segment_size=segment_size,
                threads=threads).bits
        return self._cache[key]

    def density(self, P: int, N: int) -> float:
        return density(self._expanded, self.k, P).value

    def label(self) -> str:
        return "product:" + "*".join(g.text() for g in self.factors) + f":{self.k}"


class MaskCondition:
    """A precomputed indicator; density is its empirical frequency."""

    def __init__(self, bits: np.ndarray, name: str = "mask"):
        self.bits = np.asarray(bits, dtype=bool)
        self.name = name

    def mask(self, N: int, *, segment_size: int = DEFAULT_SEGMENT,
             threads: int = 1) -> np.ndarray:
        if N > len(self.bits):
            raise ValueError(f"mask holds {len(self.bits)} bits, N={N} asked")
        return self.bits[:N]

    def density(self, P: int, N: int) -> float:
        if N > len(self.bits):
            raise ValueError(f"mask holds {len(self.bits)} bits, N={N} asked")
        return float(self.bits[:N].sum()) / N

    def label(self) -> str:
        return self.name


# ---------------------------------------------------------- histograms

@dataclass(frozen=True)
class OmegaHistogram:
    """counts[j] = #{selected n <= N : Omega(a(n)) = j}."""

    counts: np.ndarray
    N: int
    selected: int

    @property
    def j_max(self) -> int:
        return len(self.counts) - 1


def default_j_max(max_arg: int) -> int:
    """Omega(m) <= log2(m), so 1 + floor(log2(max arg)) always suffices."""
    return 1 + int(math.log2(max(2, max_arg)))


def omega_histogram(N: int, condition=None, argmap=None, *,
                    threads: int = 1, segment_size: int = DEFAULT_SEGMENT,
                    j_max: int | None = None, tables=None) -> OmegaHistogram:
    """Histogram of Omega over mapped arguments of the selected n <= N."""
    if N < 1:
        raise ValueError("N >= 1 required")
    condition = condition if condition is not None else AllIntegers()
    argmap = argmap if argmap is not None else IdentityMap()
    n = np.arange(1, N + 1, dtype=np.int64)
    args = argmap.map_values(n)
    if args.min() < 1:
        raise ValueError("argument map produced values below 1")
    max_arg = int(args.max())
    if j_max is None:
        j_max = default_j_max(max_arg)
    if tables is None:
        tables = build_tables(1, max_arg + 1, segment_size=segment_size,
                              threads=threads)
    if tables.lo > 1 or tables.hi <= max_arg:
        raise ValueError("tables do not cover the argument range")
    sel = condition.mask(N, segment_size=segment_size, threads=threads)
    om = tables.omega[args - tables.lo][sel]
    counts = np.bincount(om, minlength=j_max + 1).astype(np.int64)
    if len(counts) > j_max + 1:
        raise ValueError(f"j_max={j_max} too small: saw Omega={len(counts) - 1}")
    return OmegaHistogram(counts, N, int(sel.sum()))


def ergodic_average(hist: OmegaHistogram, orbit: OrbitTable) -> float:
    """(1/N) sum over selected n of g(T^(Omega(a(n))) x), as a dot product."""
    if orbit.j_max < hist.j_max and hist.counts[orbit.j_max + 1:].any():
        raise ValueError("orbit table shorter than observed Omega range")
    j = min(orbit.j_max, hist.j_max) + 1
    return float(np.dot(hist.counts[:j].astype(np.float64), orbit.values[:j])) / hist.N


# -------------------------------------------------------- convergence

@dataclass(frozen=True)
class ReportRow:
    N: int
    selected: int
    average: float
    target: float
    residual: float


def convergence_report(system, observable, x, *, N_values, condition=None,
                       argmap=None, P: int = 10 ** 6, threads: int = 1,
                       segment_size: int = DEFAULT_SEGMENT,
                       iterated: bool = False) -> list[ReportRow]:
    """Ergodic averages at several N against the predicted limit.

    The limit is (density of the condition) * (space mean of g): the sieve
    controls how often n is selected, the unique ergodicity of the system
    spreads the orbit uniformly. One table build at max(N) serves all rows.
    """
    from .dynamics import orbit_table

    condition = condition if condition is not None else AllIntegers()
    argmap = argmap if argmap is not None else IdentityMap()
    Ns = sorted(int(v) for v in N_values)
    if not Ns or Ns[0] < 1:
        raise ValueError("need positive checkpoints")
    N = Ns[-1]
    n = np.arange(1, N + 1, dtype=np.int64)
    args = argmap.map_values(n)
    max_arg = int(args.max())
    tables = build_tables(1, max_arg + 1, segment_size=segment_size,
                          threads=threads)
    sel = condition.mask(N, segment_size=segment_size, threads=threads)
    om_all = tables.omega[args - tables.lo]
    jm = default_j_max(max_arg)
    orb = orbit_table(system, observable, x, jm, iterated=iterated)
    dens = condition.density(P, N)
    target = dens * orb.mean
    rows = []
    for Ni in Ns:
        om = om_all[:Ni][sel[:Ni]]
        counts = np.bincount(om, minlength=jm + 1).astype(np.int64)
        hist = OmegaHistogram(counts, Ni, int(counts.sum()))
        avg = ergodic_average(hist, orb)
        rows.append(ReportRow(Ni, hist.selected, avg, target, avg - target))
    return rows


def exponent_fit(points) -> float:
    """Least-squares slope of log|err| against log N.

    points: iterable of (N, err). Errors are clamped below at 1 before the
    log so zero rows do not blow up (all-1 errors fit slope 0 as expected);
    the fully degenerate all-zero case returns -inf as a sentinel.
    """
    pts = [(int(n), abs(float(e))) for n, e in points]
    if len(pts) < 2:
        raise ValueError("need at least 2 points")
    ns = [p[0] for p in pts]
    if any(a >= b for a, b in zip(ns, ns[1:])):
        raise ValueError("N values must be strictly increasing")
    if all(e == 0.0 for _, e in pts):
        return -math.inf
    xs = np.log([float(n) for n, _ in pts])
    ys = np.log([max(e, 1.0) for _, e in pts])
    xm, ym = xs.mean(), ys.mean()
    return float(((xs - xm) * (ys - ym)).sum() / ((xs - xm) ** 2).sum())
