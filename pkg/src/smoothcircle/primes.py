"""Prime tables with the mod-4 character attached, plus smallest-prime-factor
sieves and their optional binary disk cache."""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from pathlib import Path

import numpy as np

from .errors import CacheFormatError, DomainError

SPF_MAGIC = b"SPFTAB01"  # 8 bytes, then u64 count, then u32 entries (little endian)


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (empty for limit < 2)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    comp = np.zeros(limit + 1, dtype=bool)
    comp[:2] = True
    for p in range(2, isqrt(limit) + 1):
        if not comp[p]:
            comp[p * p :: p] = True
    return np.flatnonzero(~comp).astype(np.int64)


@dataclass(frozen=True)
class PrimeTable:
    """Immutable table of the primes p <= y_limit with chi_4(p) and log p.

    chi is 0 at p=2, +1 for p = 1 (mod 4) and -1 for p = 3 (mod 4).  The
    arrays are read-only and shared freely between threads.
    """

    y_limit: int
    p: np.ndarray = field(repr=False)
    chi: np.ndarray = field(repr=False)
    logp: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return int(self.p.size)

    def entries(self):
        """Yield (p, chi, logp) tuples in increasing order of p."""
        for i in range(self.p.size):
            yield int(self.p[i]), int(self.chi[i]), float(self.logp[i])

    def restrict(self, limit: int) -> "PrimeTable":
        """View of the table truncated to primes <= limit."""
        if limit >= self.y_limit:
            return self
        k = int(np.searchsorted(self.p, limit, side="right"))
        return PrimeTable(limit, self.p[:k], self.chi[:k], self.logp[:k])

    def validate(self) -> None:
        if self.p.size and not np.all(np.diff(self.p) > 0):
            raise CacheFormatError("prime table not strictly increasing")
        expect = np.where(self.p % 4 == 1, 1, -1)
        expect[self.p == 2] = 0
        if not np.array_equal(self.chi, expect):
            raise CacheFormatError("chi_4 column inconsistent with residues mod 4")


@lru_cache(maxsize=16)
def prime_table(y: int) -> PrimeTable:
    """Cached PrimeTable for the bound y >= 2."""
    if y < 2:
        raise DomainError(f"prime table needs y >= 2, got {y}")
    p = sieve_primes(y)
    chi = np.where(p % 4 == 1, 1, -1).astype(np.int8)
    chi[p == 2] = 0
    logp = np.log(p.astype(np.float64))
    for arr in (p, chi, logp):
        arr.setflags(write=False)
    return PrimeTable(y, p, chi, logp)


def smallest_prime_factors(limit: int) -> np.ndarray:
    """uint32 array spf with spf[n] = least prime factor of n (spf[0]=0, spf[1]=1)."""
    if limit < 1:
        raise DomainError(f"spf table needs limit >= 1, got {limit}")
    if limit >= 2**32:
        raise DomainError("spf table entries are u32; limit too large")
    spf = np.zeros(limit + 1, dtype=np.uint32)
    if limit >= 1:
        spf[1] = 1
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            spf[p] = p
            sl = spf[p * p :: p]
            sl[sl == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest  # primes above sqrt(limit)
    return spf


def write_spf_cache(path: str | Path, spf: np.ndarray) -> None:
    data = np.ascontiguousarray(spf, dtype="<u4")
    with open(path, "wb") as fh:
        fh.write(SPF_MAGIC)
        fh.write(struct.pack("<Q", data.size))
        fh.write(data.tobytes())


def read_spf_cache(path: str | Path) -> np.ndarray:
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != SPF_MAGIC:
            raise CacheFormatError(f"bad magic {magic!r} in {path}")
        (count,) = struct.unpack("<Q", fh.read(8))
        raw = fh.read(4 * count)
        if len(raw) != 4 * count:
            raise CacheFormatError(f"truncated spf cache {path}")
        return np.frombuffer(raw, dtype="<u4").astype(np.uint32)


def spf_table(limit: int, cache_dir: str | Path | None = None) -> np.ndarray:
    """Smallest-prime-factor table, served from a disk cache when one is configured.

    A cache file larger than requested is sliced; a smaller or corrupt one is
    rebuilt and overwritten.
    """
    path = Path(cache_dir) / f"spf_{limit}.bin" if cache_dir is not None else None
    if path is not None and path.exists():
        try:
            cached = read_spf_cache(path)
            if cached.size >= limit + 1:
                return cached[: limit + 1]
        except CacheFormatError:
            pass
    spf = smallest_prime_factors(limit)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        write_spf_cache(path, spf)
    return spf


def factorize(n: int, spf: np.ndarray | None = None) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as an ascending list of (p, exponent)."""
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    out: list[tuple[int, int]] = []
    if spf is not None and n < spf.size:
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d = 5
    while d * d <= n:
        for step in (d, d + 2):
            if n % step == 0:
                e = 0
                while n % step == 0:
                    n //= step
                    e += 1
                out.append((step, e))
        d += 6
    if n > 1:
        out.append((n, 1))
    out.sort()
    return out
