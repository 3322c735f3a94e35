"""Exact arithmetic for sums of two squares over smooth numbers.

r(n) counts representations n = a^2 + b^2 with signs and order distinct;
r(n)/4 is multiplicative.  The central exact quantity is the circle sum
sum of r(n) over y-smooth n <= x (n = 1 included, r(1) = 4), computed by
two independent routes: a segmented trial-factoring sieve and a recursive
enumeration of the smooth numbers themselves.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import DomainError, ResourceBudgetError
from .primes import prime_table

DEFAULT_NODE_BUDGET = 10**9
DEFAULT_SEGMENT_SIZE = 1 << 20


def chi4(n: int) -> int:
    """The nontrivial character mod 4: 0 on evens, else (-1)^((n-1)/2)."""
    if n < 1:
        raise DomainError(f"chi4 needs n >= 1, got {n}")
    if n % 2 == 0:
        return 0
    return 1 if n % 4 == 1 else -1


def _local_r4(p: int, e: int) -> int:
    # Local factor of r(n)/4 at p^e.
    if p == 2:
        return 1
    if p % 4 == 1:
        return e + 1
    return 0 if e & 1 else 1


def r_over_4(n: int, factorization: list[tuple[int, int]]) -> int:
    """r(n)/4 evaluated multiplicatively from the prime factorization of n.

    Local values: 1 at powers of 2, e+1 at p^e for p = 1 (mod 4), and 1 or 0
    at p^e for p = 3 (mod 4) according as e is even or odd.  Equivalent to
    counting divisors d of n weighted by chi4(d).
    """
    if n < 1:
        raise DomainError(f"r_over_4 needs n >= 1, got {n}")
    prod = 1
    val = 1
    seen: set[int] = set()
    for p, e in factorization:
        if p < 2 or e < 1 or p in seen:
            raise DomainError(f"invalid factorization entry ({p}, {e})")
        seen.add(p)
        prod *= p**e
        val *= _local_r4(p, e)
    if prod != n:
        raise DomainError(f"factorization product {prod} != n = {n}")
    return val


def lattice_r(n: int) -> int:
    """r(n) by brute-force lattice scan: pairs (a, b) with a^2 + b^2 = n.

    Independent oracle for the multiplicative route; O(sqrt n) work.
    """
    if n < 1:
        raise DomainError(f"lattice_r needs n >= 1, got {n}")
    count = 0
    a = 0
    while a * a <= n:
        b2 = n - a * a
        b = isqrt(b2)
        if b * b == b2:
            count += (2 if a else 1) * (2 if b else 1)
        a += 1
    return count


def lattice_r_table(limit: int) -> np.ndarray:
    """r(n) for all 0 <= n <= limit by one sweep over the lattice quadrant.

    Entry 0 is the origin count (1).  Each row a contributes a^2 + b^2 for
    b = 0..floor(sqrt(limit - a^2)) with the sign/order multiplicities; the
    targets within a row are distinct, so fancy-index accumulation is exact.
    """
    if limit < 0:
        raise DomainError(f"lattice_r_table needs limit >= 0, got {limit}")
    counts = np.zeros(limit + 1, dtype=np.int64)
    amax = isqrt(limit)
    for a in range(amax + 1):
        bmax = isqrt(limit - a * a)
        b = np.arange(bmax + 1, dtype=np.int64)
        w = np.full(bmax + 1, 4 if a else 2, dtype=np.int64)
        w[0] = 2 if a else 1
        counts[a * a + b * b] += w
    return counts


@dataclass(frozen=True)
class ExactCount:
    """Exact circle sum over y-smooth n <= x, with enumeration statistics.

    value is a plain (unbounded) int and is always a multiple of 4;
    terms counts the smooth integers enumerated, n = 1 included.
    """

    x: int
    y: int
    value: int
    terms: int
    method: str


def _exact_recursive(x: int, y: int, node_budget: int) -> tuple[int, int]:
    ps = [int(p) for p in prime_table(y).p if p <= x]
    k = len(ps)
    total = 0
    nodes = 0

    # Depth-first over descending primes; each smooth n <= x is visited once
    # with its full exponent pattern, so the weight multiplies exactly.
    def rec(hi: int, cur: int, w: int) -> None:
        nonlocal total, nodes
        nodes += 1
        if nodes > node_budget:
            raise ResourceBudgetError(
                f"smooth enumeration exceeded node budget {node_budget}"
            )
        total += w
        top = bisect_right(ps, x // cur) - 1
        if top > hi:
            top = hi
        for i in range(top, -1, -1):
            p = ps[i]
            v = cur * p
            e = 1
            while v <= x:
                rec(i - 1, v, w * _local_r4(p, e))
                v *= p
                e += 1

    rec(k - 1, 1, 1)
    return 4 * total, nodes


def _exact_sieve(x: int, y: int, node_budget: int, segment_size: int) -> tuple[int, int]:
    if x > node_budget:
        raise ResourceBudgetError(
            f"sieve range {x} exceeds node budget {node_budget}"
        )
    ps = [int(p) for p in prime_table(y).p if p <= x]
    total = 0
    terms = 0
    lo = 1
    while lo <= x:
        hi = min(lo + segment_size, x + 1)
        rem = np.arange(lo, hi, dtype=np.int64)
        val = np.ones(hi - lo, dtype=np.int64)
        for p in ps:
            first = ((lo + p - 1) // p) * p
            if first >= hi:
                continue
            idx = np.arange(first - lo, hi - lo, p, dtype=np.int64)
            r = rem[idx] // p
            e = np.ones(idx.size, dtype=np.int64)
            while True:
                m = r % p == 0
                if not m.any():
                    break
                r[m] //= p
                e[m] += 1
            rem[idx] = r
            if p == 2:
                continue
            if p % 4 == 1:
                val[idx] *= e + 1
            else:
                val[idx] *= 1 - (e & 1)
        smooth = rem == 1
        total += int(val[smooth].sum())
        terms += int(np.count_nonzero(smooth))
        lo = hi
    return 4 * total, terms


def exact_circle_sum(
    x: int,
    y: int,
    method: str = "auto",
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> ExactCount:
    """Exact sum of r(n) over y-smooth n <= x (n = 1 counts, with r(1) = 4).

    method "sieve" trial-factors every integer in [1, x] segment by segment;
    "recursive" walks the smooth numbers directly and is the only practical
    route when they are sparse.  "auto" picks the sieve in the dense regime
    y^2 >= x.  Both routes use exact integer arithmetic throughout and agree
    bit for bit; enumeration work beyond node_budget raises
    ResourceBudgetError.
    """
    if x < 1:
        raise DomainError(f"exact_circle_sum needs x >= 1, got {x}")
    if y < 2:
        raise DomainError(f"exact_circle_sum needs y >= 2, got {y}")
    if method == "auto":
        method = "sieve" if y * y >= x and x <= node_budget else "recursive"
    if method == "sieve":
        value, terms = _exact_sieve(x, y, node_budget, segment_size)
    elif method == "recursive":
        value, terms = _exact_recursive(x, y, node_budget)
    else:
        raise DomainError(f"unknown method {method!r}")
    return ExactCount(x=x, y=y, value=value, terms=terms, method=method)
