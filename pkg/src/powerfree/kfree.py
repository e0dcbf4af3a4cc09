"""Sieves for k-free polynomial values and the tail sums that certify them.

The mask sieve marks every n in [1, N] whose value f(n) is k-free (no
prime to the k-th power divides it). Primes up to P0 = ceil(max|f|^(1/(k+1)))
are handled by dividing p out at the residue classes where p | f(n); the
cofactor that survives is a product of primes above P0, and since any two
of those multiply past max|f| it can only spoil k-freeness by being a
perfect k-th power itself, which an exact integer root test detects. So the
sieve is exact, not heuristic.

Products of coprime factors get per-factor masks plus an exact correction
at the finitely many primes dividing a pairwise resultant, the only places
where exponents from different factors can combine.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .density import DensityResult, density
from .errors import CapacityError, HypothesisViolation
from .factorint import factorize, integer_nth_root
from .local_roots import batch_roots, lift_roots
from .poly import (IntPolynomial, coefficient_bound, evaluate_range,
                   has_fixed_kth_power, max_abs_value, profile)
from .sieve import DEFAULT_SEGMENT, build_tables, primes_up_to

ROOT_LIMIT = 2 * 10 ** 6
_TABLE_SIEVE_CAP = 3 * 10 ** 5
_INT64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class KfreeMask:
    """Indicator of k-free values of f on [1, N]; bits[n - 1] is n's flag.

    zero_hits lists the n with f(n) = 0 (never k-free; 0 is divisible by
    everything). prime_bound is the sieving bound P0 actually used.
    """

    poly: IntPolynomial
    k: int
    N: int
    bits: np.ndarray
    zero_hits: tuple[int, ...]
    prime_bound: int

    @property
    def count(self) -> int:
        return int(self.bits.sum())

    def counts_at(self, checkpoints) -> list[int]:
        out = []
        for n in checkpoints:
            if not 1 <= n <= self.N:
                raise ValueError(f"checkpoint {n} outside [1, {self.N}]")
            out.append(int(self.bits[:n].sum()))
        return out


def sieve_prime_bound(f: IntPolynomial, k: int, N: int) -> int:
    """Smallest P0 with P0^(k+1) >= max|f| on [1, N]: sieving below P0
    leaves cofactors whose only k-th-power risk is being one exactly."""
    m = max_abs_value(f, N)
    if m == 0:
        return 2
    r = integer_nth_root(m, k + 1)
    p0 = r if r ** (k + 1) >= m else r + 1
    return max(p0, 2)


def _check_sieve_hypotheses(f: IntPolynomial, k: int) -> None:
    if k < 2:
        raise ValueError("k >= 2 required (k-free needs a power to exclude)")
    if not profile(f).is_squarefree_poly:
        raise HypothesisViolation(
            f"{f.text()} has a repeated factor; its values are never "
            f"k-free beyond finitely many n"
        )
    p = has_fixed_kth_power(f, k)
    if p is not None:
        raise HypothesisViolation(
            f"{p}^{k} divides every value of {f.text()}; the k-free set is empty"
        )


def _divide_out(vals: np.ndarray, seg_bits: np.ndarray, off: int, p: int,
                k: int, record=None) -> None:
    """Divide the full p-part out of vals[off::p]; clear seg_bits where the
    exponent reaches k. record(global_slice_indices) hooks exponent >= k.

    The sl > 0 guard matters: zero values of f were replaced by 1 upstream
    and sit at a root position of every prime, so the first (unconditional)
    division floors them to 0; without the guard they'd loop forever.
    """
    sl = vals[off::p]
    sl //= p
    cur = np.nonzero((sl % p == 0) & (sl > 0))[0]
    e = 2
    while len(cur):
        sl[cur] //= p
        if e == k:
            pos = off + cur * p
            seg_bits[pos] = False
            if record is not None:
                record(pos, p)
        e += 1
        sub = sl[cur]
        cur = cur[(sub % p == 0) & (sub > 0)]


def _mark_kth_power_cofactors(vals: np.ndarray, seg_bits: np.ndarray, k: int) -> None:
    """After all p <= P0 are divided out, a surviving value > 1 is a product
    of primes > P0 and can only break k-freeness by being q^k exactly."""
    if vals.dtype == object:
        for i in np.nonzero(vals > 1)[0].tolist():
            v = int(vals[i])
            r = integer_nth_root(v, k)
            if r ** k == v:
                seg_bits[i] = False
        return
    idx = np.nonzero(vals > 1)[0]
    if not len(idx):
        return
    v = vals[idx]
    rbound = int(float(_INT64_MAX) ** (1.0 / k)) - 2
    r = np.rint(np.power(v.astype(np.float64), 1.0 / k)).astype(np.int64)
    r = np.minimum(np.maximum(r, 1), rbound)
    hit = np.zeros(len(idx), dtype=bool)
    for cand in (r - 1, r, r + 1):
        c = np.maximum(cand, 1)
        hit |= c ** k == v
    seg_bits[idx[hit]] = False


def _mask_segment(f: IntPolynomial, k: int, a: int, b: int, roots_items,
                  bits: np.ndarray) -> list[int]:
    """Sieve n in [a, b) (1-based values of n), writing bits[n - 1]."""
    m = b - a
    vals = evaluate_range(f, a, b)
    seg = bits[a - 1:b - 1]
    seg[:] = True
    zeros = np.nonzero(vals == 0)[0]
    zero_ns = (zeros + a).tolist()
    if len(zeros):
        vals[zeros] = 1
        seg[zeros] = False
    vals = np.abs(vals)
    for p, roots in roots_items:
        for v in roots.tolist():
            off = (v - a) % p
            if off >= m:
                continue
            _divide_out(vals, seg, off, p, k)
    _mark_kth_power_cofactors(vals, seg, k)
    return zero_ns


def collect_sieve_roots(f: IntPolynomial, P0: int) -> list[tuple[int, np.ndarray]]:
    """(p, roots of f mod p) for all primes p <= P0 that have roots."""
    rd = batch_roots(f, primes_up_to(P0))
    return sorted(rd.items())


def kfree_mask(f: IntPolynomial, k: int, N: int, *,
               segment_size: int = DEFAULT_SEGMENT, threads: int = 1,
               root_limit: int = ROOT_LIMIT) -> KfreeMask:
    """Exact k-free indicator for f on [1, N].

    Deterministic for any thread count: segment boundaries depend only on
    segment_size, workers write disjoint slices. Raises CapacityError when
    the required prime bound P0 exceeds root_limit, and HypothesisViolation
    when f has a repeated factor or a fixed k-th power divisor.
    """
    _check_sieve_hypotheses(f, k)
    if N < 1:
        raise ValueError("N >= 1 required")
    P0 = sieve_prime_bound(f, k, N)
    if P0 > root_limit:
        raise CapacityError(
            f"sieve needs roots mod all p <= {P0}, above the configured "
            f"limit {root_limit}; raise root_limit if you mean it"
        )
    roots_items = collect_sieve_roots(f, P0)
    bits = np.zeros(N, dtype=bool)
    starts = list(range(1, N + 1, segment_size))
    zero_ns: list[int] = []
    if threads <= 1 or len(starts) == 1:
        for a in starts:
            zero_ns += _mask_segment(f, k, a, min(a + segment_size, N + 1),
                                     roots_items, bits)
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            futs = [ex.submit(_mask_segment, f, k, a,
                              min(a + segment_size, N + 1), roots_items, bits)
                    for a in starts]
            for fu in futs:
                zero_ns += fu.result()
    return KfreeMask(f, k, N, bits, tuple(sorted(zero_ns)), P0)


def _shared_correction_primes(factors) -> set[int]:
    from .poly import resultant

    shared: set[int] = set()
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            r = resultant(factors[i], factors[j])
            if r == 0:
                raise HypothesisViolation(
                    f"factors {factors[i].text()} and {factors[j].text()} "
                    f"share a common factor"
                )
            if abs(r) > 1:
                shared.update(factorize(abs(r)))
    return shared


def product_kfree_mask(factors, k: int, N: int, *,
                       segment_size: int = DEFAULT_SEGMENT, threads: int = 1,
                       root_limit: int = ROOT_LIMIT) -> KfreeMask:
    """k-free indicator for the product of pairwise coprime factors.

    Per-factor masks are combined by AND; that misses only primes whose
    exponents in two different factors add up to k, and any such prime
    divides a pairwise resultant, so the finitely many of them get an exact
    exponent-accumulation pass over lifted roots.
    """
    factors = tuple(factors)
    if not factors:
        raise ValueError("at least one factor required")
    if len(factors) == 1:
        return kfree_mask(factors[0], k, N, segment_size=segment_size,
                          threads=threads, root_limit=root_limit)
    expanded = factors[0]
    for g in factors[1:]:
        expanded = expanded * g
    _check_sieve_hypotheses(expanded, k)

    masks = [kfree_mask(g, k, N, segment_size=segment_size, threads=threads,
                        root_limit=root_limit) for g in factors]
    bits = masks[0].bits.copy()
    for mk in masks[1:]:
        bits &= mk.bits

    for p in sorted(_shared_correction_primes(factors)):
        exp = np.zeros(N, dtype=np.uint16)
        for g in factors:
            mv = max_abs_value(g, N)
            j, pj = 1, p
            while pj <= mv:
                ld = lift_roots(g, p, j)
                if ld.roots is None:
                    raise CapacityError(
                        f"correction at p={p} level {j} has {ld.rho} residues"
                    )
                for v in ld.roots:
                    exp[(v - 1) % pj::pj] += 1
                j += 1
                pj *= p
        bits[exp >= k] = False

    zero_ns = sorted(set().union(*(mk.zero_hits for mk in masks)))
    return KfreeMask(expanded, k, N, bits, tuple(zero_ns),
                     max(mk.prime_bound for mk in masks))


def twin_squarefree_mask(N: int, *, segment_size: int = DEFAULT_SEGMENT,
                         threads: int = 1) -> np.ndarray:
    """bits[n - 1] set when n and n + 1 are both squarefree, n in [1, N]."""
    if N < 1:
        raise ValueError("N >= 1 required")
    tables = build_tables(1, N + 2, segment_size=segment_size, threads=threads)
    sq = tables.squarefree
    return sq[:N] & sq[1:N + 1]


@dataclass(frozen=True)
class CountRow:
    N: int
    count: int
    target: float
    abs_error: float
    rel_error: float


def count_kfree(mask: KfreeMask, checkpoints, density_result=None) -> list[CountRow]:
    """Counts at checkpoints against the density prediction target = c * N.

    density_result may be a DensityResult, a float, or None (computed from
    the mask's polynomial with P = 10^6).
    """
    if density_result is None:
        density_result = density(mask.poly, mask.k, 10 ** 6)
    c = density_result.value if isinstance(density_result, DensityResult) \
        else float(density_result)
    rows = []
    for n, cnt in zip(checkpoints, mask.counts_at(checkpoints)):
        target = c * n
        abs_err = cnt - target
        rel = abs(abs_err) / target if target > 0 else math.nan
        rows.append(CountRow(int(n), cnt, target, abs_err, rel))
    return rows


def _kth_power_prime_table(f: IntPolynomial, k: int, N: int):
    """For each n in [1, N], the sorted tuple of primes p with p^k | f(n).

    Exact: primes up to min(floor(max|f|^(1/k)), 3e5) are sieved via root
    positions with full exponent tracking; if the k-th-power range extends
    beyond that, surviving cofactors are factorized outright.
    """
    maxval = max_abs_value(f, N)
    kroot = integer_nth_root(maxval, k) if maxval else 0
    B0 = min(kroot, _TABLE_SIEVE_CAP)
    vals = evaluate_range(f, 1, N + 1)
    zeros = (np.nonzero(vals == 0)[0] + 1).tolist()
    if zeros:
        raise HypothesisViolation(
            f"f(n) = 0 at n in {zeros[:5]}: the k-free decomposition "
            f"identity needs nonzero values"
        )
    vals = np.abs(vals)
    table: list[list[int]] = [[] for _ in range(N)]
    seg_bits = np.ones(N, dtype=bool)  # scratch for _divide_out's marking

    def record(pos: np.ndarray, p: int) -> None:
        for i in pos.tolist():
            table[i].append(p)

    if B0 >= 2:
        for p, roots in collect_sieve_roots(f, B0):
            for v in roots.tolist():
                off = (v - 1) % p
                if off < N:
                    _divide_out(vals, seg_bits, off, p, k, record=record)
    if kroot > B0:
        idx = np.nonzero(vals > 1)[0]
        for i in idx.tolist():
            c = int(vals[i])
            for q, e in factorize(c).items():
                if e >= k:
                    table[i].append(q)
    return [tuple(sorted(t)) for t in table]


@dataclass(frozen=True)
class SumDecomposition:
    """Inclusion-exclusion split of a weighted k-free count at threshold Y.

    small_part sums mu(d) a(n) over squarefree d <= Y with d^k | f(n);
    large_part the same over d > Y; their sum telescopes to the weighted
    count of k-free values, exactly, term by term.
    """

    Y: int
    N: int
    small_part: int
    large_part: int
    total: int


def decompose_sum(f: IntPolynomial, k: int, Y: int, N: int,
                  weights=None) -> SumDecomposition:
    """Compute both halves of the threshold decomposition independently.

    The d ranging over products of primes in S(n) = {p : p^k | f(n)} makes
    each half a subset sum with sign (-1)^|T|; the identity small + large =
    total is not assumed here, both sides are computed and returned.
    Capped at N <= 10^6. Integer weights only, so everything is exact.
    """
    if N > 10 ** 6:
        raise CapacityError("decompose_sum caps N at 10^6")
    if N < 1 or Y < 1:
        raise ValueError("N >= 1 and Y >= 1 required")
    _check_sieve_hypotheses(f, k)
    if weights is None:
        w = np.ones(N, dtype=np.int64)
    else:
        w = np.asarray(weights)
        if not np.issubdtype(w.dtype, np.integer):
            raise TypeError("weights must be integers for an exact identity")
        if len(w) != N:
            raise ValueError("need one weight per n in [1, N]")
        w = w.astype(np.int64)
    table = _kth_power_prime_table(f, k, N)
    small = large = total = 0
    for i in range(N):
        wn = int(w[i])
        if wn == 0:
            continue
        S = table[i]
        if not S:
            small += wn  # only the empty subset, product 1 <= Y
            total += wn
            continue
        a = b = 0
        for msk in range(1 << len(S)):
            prod = 1
            bitcount = 0
            mm = msk
            j = 0
            while mm:
                if mm & 1:
                    prod *= S[j]
                    bitcount += 1
                mm >>= 1
                j += 1
            sgn = -1 if bitcount & 1 else 1
            if prod <= Y:
                a += sgn
            else:
                b += sgn
        small += wn * a
        large += wn * b
    return SumDecomposition(Y, N, small, large, total)


def tail_pair_count(f: IntPolynomial, k: int, Y: int, N: int) -> int:
    """Number of pairs (n, d): n <= N, d > Y squarefree, d^k | f(n).

    This is the term count behind the large part of the decomposition (all
    signs dropped), the quantity whose smallness makes truncation at Y
    work. Capped at N <= 10^5.
    """
    if N > 10 ** 5:
        raise CapacityError("tail_pair_count caps N at 10^5")
    if N < 1 or Y < 1:
        raise ValueError("N >= 1 and Y >= 1 required")
    _check_sieve_hypotheses(f, k)
    table = _kth_power_prime_table(f, k, N)
    out = 0
    for S in table:
        if not S:
            continue
        for msk in range(1, 1 << len(S)):
            prod = 1
            mm, j = msk, 0
            while mm:
                if mm & 1:
                    prod *= S[j]
                mm >>= 1
                j += 1
            if prod > Y:
                out += 1
    return out
