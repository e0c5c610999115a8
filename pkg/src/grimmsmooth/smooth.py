"""Smooth-number counts, globally and in short windows, and what they imply
for g.

Psi(x, y) counts the positive integers <= x all of whose prime factors are
<= y (1 counts: the condition is vacuous).  Window counts
Psi(x+z, y) - Psi(x, y) are computed directly on the window by residual
sieving: divide every element by all primes up to min(y, sqrt(x+z)) to full
multiplicity and look at what is left.

* if y < sqrt(x+z), a residual > 1 has all its prime factors > y, so the
  element is smooth iff the residual is 1;
* if y >= sqrt(x+z), the residual is 1 or a single prime, so the element is
  smooth iff the residual is <= y.

Both regimes collapse to the single test ``residual <= y``.

The payoff is the window criterion: if a window (x, x+z] holds more than
pi(y) many y-smooth numbers, those elements alone overwhelm the supply of
distinct primes <= y available to them (Hall's condition fails on the smooth
offsets), so (x, z) has no prime representation and g(x) < z.  That turns a
pure counting statement into a certified upper bound for g, independent of
the matching machinery -- and cheap enough to run at x far beyond where g
itself is computable.

:func:`exceptional_scan` measures, over sampled n <= X, how often the window
(n, n + n^eps] fails to contain c0 * n^eps many n^eps-smooth numbers; the
constants in the known almost-all results are not explicit, so the scan
reports empirical failure fractions rather than asserting any.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .dickman import build_rho_table, rho
from .intervals import window_residuals
from .primes import PrimeTable, TableLimitError

# Global Psi(x, y) sieves all of [1, x]; beyond this, use psi_window on the
# stretch you actually care about.
PSI_GLOBAL_CAP = 10**8

_BLOCK = 1 << 20


@dataclass(frozen=True)
class SmoothWindowReport:
    """Exact count of y-smooth integers in (x, x+z] plus the pi(y) comparison."""

    x: int
    z: int
    y: float
    count: int
    pi_y: int
    bound_established: bool  # count > pi_y
    smooth_head: int | None  # smallest smooth element found
    smooth_tail: int | None  # largest smooth element found


@dataclass(frozen=True)
class GrimmUpperBound:
    """Certified assertion g(x) < z from an overfull smooth window.

    ``first_smooth``/``last_smooth`` are the extreme smooth elements of
    (x, x+z]; together with count > pi_y they are the whole certificate.
    """

    x: int
    z: int
    y: float
    count: int
    pi_y: int
    first_smooth: int
    last_smooth: int

    @property
    def bound(self) -> int:
        return self.z


@dataclass(frozen=True)
class ExceptionalScanReport:
    """Empirical failure fraction of the short-window smoothness criterion."""

    x_max: int
    eps: float
    c0: float
    stride: int
    sampled: int
    degenerate: int  # n with n^eps < 2: empty window, skipped
    evaluated: int
    failures: int
    failure_fraction: float
    first_failures: tuple[int, ...]


def psi(x: int, y: float, table: PrimeTable) -> int:
    """Psi(x, y): exact count of y-smooth positive integers <= x."""
    x = int(x)
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    if y <= 0:
        raise ValueError(f"y must be positive, got {y}")
    if x > PSI_GLOBAL_CAP:
        raise ValueError(
            f"global Psi is capped at x = {PSI_GLOBAL_CAP}; "
            f"use psi_window on the range of interest instead"
        )
    if x == 0:
        return 0
    count = 0
    bound = min(int(y), isqrt(x))
    for lo in range(1, x + 1, _BLOCK):
        hi = min(lo + _BLOCK - 1, x)
        res = window_residuals(lo, hi, bound, table)
        count += int((res <= y).sum())
    return count


def psi_window(x: int, z: int, y: float, table: PrimeTable) -> SmoothWindowReport:
    """Exact count of y-smooth integers in (x, x+z], with certificate ends."""
    x, z = int(x), int(z)
    if x < 0 or z < 1:
        raise ValueError(f"need x >= 0 and z >= 1, got x={x}, z={z}")
    if y <= 0:
        raise ValueError(f"y must be positive, got {y}")
    required = max(isqrt(x + z), int(y))
    if table.limit < required:
        raise TableLimitError(
            f"psi_window(x={x}, z={z}, y={y}) needs table limit >= {required}, "
            f"have {table.limit}",
            required=required,
        )
    count = 0
    head = tail = None
    bound = min(int(y), isqrt(x + z))
    for lo in range(x + 1, x + z + 1, _BLOCK):
        hi = min(lo + _BLOCK - 1, x + z)
        res = window_residuals(lo, hi, bound, table)
        smooth = np.flatnonzero(res <= y)
        if len(smooth):
            count += len(smooth)
            if head is None:
                head = lo + int(smooth[0])
            tail = lo + int(smooth[-1])
    pi_y = table.pi(y)
    return SmoothWindowReport(
        x=x, z=z, y=float(y), count=count, pi_y=pi_y,
        bound_established=count > pi_y, smooth_head=head, smooth_tail=tail,
    )


def grimm_upper_bound(
    x: int, y: float, z: int, table: PrimeTable
) -> GrimmUpperBound | None:
    """g(x) < z, certified, when (x, x+z] holds more than pi(y) smooth numbers.

    The window then contains count > pi(y) offsets whose every prime factor
    is <= y; any distinct-prime assignment would need that many distinct
    primes <= y, which do not exist.  Returns None when the criterion is not
    met (which does not decide anything).
    """
    report = psi_window(x, z, y, table)
    if not report.bound_established:
        return None
    return GrimmUpperBound(
        x=report.x, z=report.z, y=report.y, count=report.count,
        pi_y=report.pi_y, first_smooth=report.smooth_head,
        last_smooth=report.smooth_tail,
    )


def exceptional_scan(
    x_max: int,
    eps: float,
    table: PrimeTable,
    c0: float | None = None,
    stride: int = 1,
    max_reported: int = 20,
) -> ExceptionalScanReport:
    """Fraction of sampled n <= x_max failing
    Psi(n + n^eps, n^eps) - Psi(n, n^eps) >= c0 * n^eps.

    Default c0 is rho(1/eps) / 2: half the limiting density of the window
    count, a scale-free stand-in for the inexplicit constant of the
    almost-all theorems.  n with n^eps < 2 yield empty windows and are
    counted as degenerate rather than failures.
    """
    if not 0 < eps < 0.5:
        raise ValueError(f"eps must be in (0, 1/2), got {eps}")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if c0 is None:
        t = 1.0 / eps
        c0 = rho(t, build_rho_table(t_max=math.ceil(t) + 1)) / 2.0
    if c0 <= 0:
        raise ValueError(f"c0 must be positive, got {c0}")

    sampled = degenerate = evaluated = failures = 0
    first_failures: list[int] = []
    for n in range(1, x_max + 1, stride):
        sampled += 1
        ne = n**eps
        if ne < 2.0:
            degenerate += 1
            continue
        z = int(ne)
        evaluated += 1
        res = window_residuals(n + 1, n + z, int(ne), table)
        count = int((res <= ne).sum())
        if count < c0 * ne:
            failures += 1
            if len(first_failures) < max_reported:
                first_failures.append(n)
    return ExceptionalScanReport(
        x_max=x_max, eps=eps, c0=float(c0), stride=stride, sampled=sampled,
        degenerate=degenerate, evaluated=evaluated, failures=failures,
        failure_fraction=failures / evaluated if evaluated else 0.0,
        first_failures=tuple(first_failures),
    )
