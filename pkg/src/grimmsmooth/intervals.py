"""Distinct-prime factor data for a window of consecutive integers.

For a window n+1, ..., n+k the factorization is the adjacency structure of
the bipartite graph "window offset <-> primes dividing it", which is what
both the matching decision (does the window admit distinct prime
representatives?) and the smoothness counts consume.

The method is interval sieving: every prime p <= sqrt(n+k) strikes its
multiples inside the window and is divided out to full multiplicity; a
residual cofactor r > 1 after that is necessarily prime (it can have no
factor <= sqrt(n+k) left) and is appended as the last, largest entry of its
row.  Multiplicities are deliberately discarded -- only the set of distinct
primes per element is kept.

Rows are stored CSR-style (``offsets`` into one flat int64 array) so that a
window of a million elements stays a handful of numpy arrays, and a run of
consecutive windows can be factored once as a block and sliced.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .primes import PrimeTable, TableLimitError

# Per-call window cap; longer scans must go through chunked drivers.
MAX_WINDOW = 10**6


@dataclass(frozen=True)
class IntervalFactorization:
    """Distinct prime divisors for each element of the window n+1 .. n+k.

    ``offsets``/``primes_flat`` form a CSR matrix whose row i-1 (0-based)
    lists the distinct primes of n+i in increasing order.
    """

    n: int
    k: int
    offsets: np.ndarray  # int64, length k+1
    primes_flat: np.ndarray  # int64, concatenated ascending rows
    largest_prime_factor: np.ndarray  # int64, length k; lpf(n+i) (1 for the unit)

    def prime_set(self, offset: int) -> np.ndarray:
        """Distinct primes dividing n+offset (offset is 1-based)."""
        if not 1 <= offset <= self.k:
            raise ValueError(f"offset must be in [1, {self.k}], got {offset}")
        return self.primes_flat[self.offsets[offset - 1] : self.offsets[offset]]

    @property
    def prime_sets(self) -> list[list[int]]:
        """All rows as plain Python lists (materializes the whole window)."""
        flat = self.primes_flat.tolist()
        offs = self.offsets.tolist()
        return [flat[offs[i] : offs[i + 1]] for i in range(self.k)]


def _sieving_primes(table: PrimeTable, hi: int) -> list[int]:
    root = isqrt(hi)
    if table.limit < root:
        raise TableLimitError(
            f"factoring up to {hi} needs primes to {root}, "
            f"table limit is {table.limit}",
            required=root,
        )
    return table.prime_list(root) if root >= 2 else []


# Below this many elements, plain Python loops beat numpy call overhead.
_SMALL_BLOCK = 512


def _factor_block_small(lo: int, hi: int, plist: list[int]):
    """Python-loop variant of :func:`_factor_block` for short windows."""
    count = hi - lo + 1
    rows: list[list[int]] = [[] for _ in range(count)]
    residual = list(range(lo, hi + 1))
    for p in plist:
        start = ((lo + p - 1) // p) * p
        for m in range(start, hi + 1, p):
            i = m - lo
            rows[i].append(p)
            v = residual[i]
            while v % p == 0:
                v //= p
            residual[i] = v
    for i, r in enumerate(residual):
        if r > 1:
            rows[i].append(r)
    offsets = np.zeros(count + 1, dtype=np.int64)
    np.cumsum([len(r) for r in rows], out=offsets[1:])
    flat = np.fromiter(
        (p for row in rows for p in row), dtype=np.int64, count=int(offsets[-1])
    )
    lpf = np.fromiter(
        (row[-1] if row else 1 for row in rows), dtype=np.int64, count=count
    )
    return offsets, flat, lpf


def _factor_block(lo: int, hi: int, plist: list[int]):
    """CSR (offsets, flat, lpf) of distinct primes for values lo..hi, lo >= 1."""
    count = hi - lo + 1
    if count <= _SMALL_BLOCK:
        return _factor_block_small(lo, hi, plist)
    residual = np.arange(lo, hi + 1, dtype=np.int64)
    nfac = np.zeros(count, dtype=np.int64)
    starts = []
    for p in plist:
        start = ((lo + p - 1) // p) * p
        starts.append(start)
        if start > hi:
            continue
        idx = np.arange(start - lo, count, p)
        nfac[idx] += 1
        sub = idx
        residual[sub] //= p
        while True:
            m = residual[sub] % p == 0
            if not m.any():
                break
            sub = sub[m]
            residual[sub] //= p

    has_res = residual > 1
    nfac += has_res
    offsets = np.zeros(count + 1, dtype=np.int64)
    np.cumsum(nfac, out=offsets[1:])
    flat = np.zeros(int(offsets[-1]), dtype=np.int64)
    fill = offsets[:-1].copy()
    for p, start in zip(plist, starts):
        if start > hi:
            continue
        idx = np.arange(start - lo, count, p)
        flat[fill[idx]] = p
        fill[idx] += 1
    rows = np.flatnonzero(has_res)
    flat[fill[rows]] = residual[rows]

    lpf = np.ones(count, dtype=np.int64)
    nonempty = nfac > 0
    lpf[nonempty] = flat[offsets[1:][nonempty] - 1]
    return offsets, flat, lpf


def factor_range(lo: int, hi: int, table: PrimeTable):
    """Block form of :func:`factor_interval` on raw values lo..hi (lo >= 1).

    Returns ``(offsets, primes_flat, lpf)``; meant for drivers that factor a
    long stretch once and slice out many sub-windows.
    """
    if lo < 1 or hi < lo:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    return _factor_block(lo, hi, _sieving_primes(table, hi))


def factor_interval(n: int, k: int, table: PrimeTable) -> IntervalFactorization:
    """Distinct-prime sets for the window n+1, ..., n+k."""
    n, k = int(n), int(k)
    if n < 1:
        raise ValueError(f"window base n must be >= 1, got {n}")
    if not 1 <= k <= MAX_WINDOW:
        raise ValueError(f"window length k must be in [1, {MAX_WINDOW}], got {k}")
    offsets, flat, lpf = factor_range(n + 1, n + k, table)
    return IntervalFactorization(
        n=n, k=k, offsets=offsets, primes_flat=flat, largest_prime_factor=lpf
    )


def omega_prefix(f: IntervalFactorization) -> list[int]:
    """Entry l (1-based) = number of distinct primes dividing (n+1)...(n+l).

    Each prime contributes at the first row it appears in; the prefix counts
    are the cumulative sums of those first occurrences, hence nondecreasing.
    """
    if len(f.primes_flat) == 0:
        return [0] * f.k
    _, first = np.unique(f.primes_flat, return_index=True)
    rows = np.searchsorted(f.offsets, first, side="right") - 1
    per_row = np.bincount(rows, minlength=f.k)
    return np.cumsum(per_row).tolist()


def is_smooth(f: IntervalFactorization, offset: int, y: float) -> bool:
    """True iff every prime factor of n+offset is <= y."""
    if not 1 <= offset <= f.k:
        raise ValueError(f"offset must be in [1, {f.k}], got {offset}")
    return bool(f.largest_prime_factor[offset - 1] <= y)


# ---------------------------------------------------------------------------
# residual-only window sieving (no CSR), for smooth counting
# ---------------------------------------------------------------------------

# Below this window size plain Python loops beat numpy call overhead.
_SMALL_WINDOW = 256


def window_residuals(lo: int, hi: int, prime_bound: int, table: PrimeTable):
    """Residual of each value in lo..hi after dividing out, to full
    multiplicity, every prime <= min(prime_bound, sqrt(hi)).

    Below sqrt(hi) the bound is the smoothness threshold itself: residual 1
    marks exactly the prime_bound-smooth elements, and any other residual
    exceeds prime_bound.  At or above sqrt(hi) the residual is 1 or the
    element's one prime factor above sqrt(hi).  Either way, an element is
    y-smooth for y = prime_bound iff its residual is <= y.
    """
    if lo < 1 or hi < lo:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    bound = min(prime_bound, isqrt(hi))
    if table.limit < bound:
        raise TableLimitError(
            f"window sieve needs primes to {bound}, table limit is {table.limit}",
            required=bound,
        )
    ps = table.prime_list(bound) if bound >= 2 else []

    if hi - lo + 1 <= _SMALL_WINDOW:
        res = list(range(lo, hi + 1))
        for p in ps:
            start = ((lo + p - 1) // p) * p
            for m in range(start, hi + 1, p):
                i = m - lo
                v = res[i]
                while v % p == 0:
                    v //= p
                res[i] = v
        return np.asarray(res, dtype=np.int64)

    residual = np.arange(lo, hi + 1, dtype=np.int64)
    count = hi - lo + 1
    for p in ps:
        start = ((lo + p - 1) // p) * p
        if start > hi:
            continue
        sub = np.arange(start - lo, count, p)
        residual[sub] //= p
        while True:
            m = residual[sub] % p == 0
            if not m.any():
                break
            sub = sub[m]
            residual[sub] //= p
    return residual
