"""The truncated Euler product H(s; y) = prod_{p<=y} (1-p^-s)^-1 (1-chi4(p)p^-s)^-1
and the derivatives of its logarithm.

H is the Dirichlet series of r(n)/4 over y-smooth n.  phi = log H is evaluated
in log space (no overflow for large y); its sigma-derivatives phi_1..phi_4 come
from one prime-power series with an explicit truncation bound, with the
rational closed forms kept alongside as fast paths and test oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .numutil import csum
from .primes import prime_table

NU_TRUNCATION_RTOL = 1e-18  # stop the prime-power series at this relative size


def h_log_value(s: complex, y: int) -> complex:
    """log H(s; y) with principal logarithms; requires Re(s) > 0.

    All poles of H sit on the line Re(s) = 0, so the product is finite and
    nonvanishing on the open right half plane.
    """
    s = complex(s)
    if s.real <= 0:
        raise DomainError(f"h_log_value needs Re(s) > 0, got {s}")
    table = prime_table(y)
    w = np.exp(-s * table.logp)
    chi = table.chi.astype(np.float64)
    terms = -np.log(1.0 - w) - np.where(chi == 0.0, 0.0, np.log(1.0 - chi * w))
    return complex(csum(terms.real), csum(terms.imag))


def h_value(s: complex, y: int) -> complex:
    """H(s; y) itself, as exp of the log-space accumulation."""
    return np.exp(h_log_value(s, y))


def h_log_real(sigma: float, y: int) -> float:
    """log H(sigma; y) for real sigma > 0 (cheaper real-only path)."""
    if sigma <= 0:
        raise DomainError(f"h_log_real needs sigma > 0, got {sigma}")
    table = prime_table(y)
    w = np.exp(-sigma * table.logp)
    chi = table.chi.astype(np.float64)
    return csum(-np.log1p(-w) - np.where(chi == 0.0, 0.0, np.log1p(-chi * w)))


def phi1_closed(sigma: float, y: int) -> float:
    """phi_1(sigma; y) = -sum_p [log p/(p^sigma - 1) + chi4(p) log p/(p^sigma - chi4(p))]."""
    if sigma <= 0:
        raise DomainError(f"phi1_closed needs sigma > 0, got {sigma}")
    table = prime_table(y)
    chi = table.chi.astype(np.float64)
    em1 = np.expm1(sigma * table.logp)
    el = em1 + 1.0
    terms = table.logp / em1 + np.where(chi == 0.0, 0.0, chi * table.logp / (el - chi))
    return -csum(terms)


def phi2_closed(sigma: float, y: int) -> float:
    """phi_2(sigma; y) = sum_p (log p)^2 p^sigma [1/(p^sigma-1)^2 + chi4(p)/(p^sigma-chi4(p))^2]."""
    if sigma <= 0:
        raise DomainError(f"phi2_closed needs sigma > 0, got {sigma}")
    table = prime_table(y)
    chi = table.chi.astype(np.float64)
    em1 = np.expm1(sigma * table.logp)
    el = em1 + 1.0
    lp2 = table.logp**2
    terms = lp2 * el / em1**2 + np.where(chi == 0.0, 0.0, chi * lp2 * el / (el - chi) ** 2)
    return csum(terms)


@dataclass(frozen=True)
class PhiDerivatives:
    """phi(sigma; y) = log H and its first derivatives at a real point.

    d holds (phi_1, .., phi_kmax).  For sigma > 0 the series gives phi_1 < 0
    and phi_2 >= 0 termwise (convexity of sigma log x + phi).
    """

    sigma: float
    y: int
    phi: float
    d: tuple[float, ...]
    truncation_error_bound: float

    def __post_init__(self) -> None:
        if len(self.d) >= 1 and not self.d[0] < 0:
            raise ConvergenceError(f"phi_1 must be negative, got {self.d[0]}")
        if len(self.d) >= 2 and self.d[1] < 0:
            raise ConvergenceError(f"phi_2 must be nonnegative, got {self.d[1]}")

    @property
    def phi1(self) -> float:
        return self.d[0]

    @property
    def phi2(self) -> float:
        return self.d[1]


def phi_derivatives(sigma: float, y: int, kmax: int = 4) -> PhiDerivatives:
    """phi and phi_1..phi_kmax from the prime-power series.

    phi_k(sigma) = sum_{p<=y} sum_{nu>=1} (1+chi4(p)^nu) (-nu log p)^k p^(-nu sigma) / nu.
    The nu series stops once a block falls below NU_TRUNCATION_RTOL of the
    running values; the geometric tail estimate is recorded.
    """
    if sigma <= 0:
        raise DomainError(f"phi_derivatives needs sigma > 0, got {sigma}")
    if not 1 <= kmax <= 4:
        raise DomainError(f"kmax must be in 1..4, got {kmax}")
    table = prime_table(y)
    chi = table.chi.astype(np.float64)
    base = np.exp(-sigma * table.logp)
    lpk = [np.ones_like(table.logp)]
    for _ in range(kmax):
        lpk.append(lpk[-1] * table.logp)

    sums = [0.0] * (kmax + 1)
    pv = np.ones_like(base)
    chi_nu = np.ones_like(chi)
    nu = 0
    while True:
        nu += 1
        if nu > 100_000:
            raise ConvergenceError(f"prime-power series stalled at sigma={sigma}")
        pv = pv * base
        chi_nu = chi_nu * chi
        w = (1.0 + chi_nu) * pv
        block_scale = 0.0
        for k in range(kmax + 1):
            blk = w * (float(nu) ** (k - 1)) * lpk[k]
            bmag = float(np.sum(np.abs(blk)))
            sums[k] += csum(blk)
            scale = max(abs(sums[k]), 1e-300)
            block_scale = max(block_scale, bmag / scale)
        if block_scale < NU_TRUNCATION_RTOL:
            break

    # Geometric tail: block nu+1 is at most block nu times
    # max_p p^-sigma * ((nu+1)/nu)^(kmax-1).
    r = float(np.max(base)) * ((nu + 1.0) / nu) ** (kmax - 1)
    tail = block_scale * r / (1.0 - r) if r < 1.0 else block_scale
    phi = sums[0]
    d = tuple(((-1.0) ** k) * sums[k] for k in range(1, kmax + 1))
    return PhiDerivatives(
        sigma=sigma,
        y=y,
        phi=phi,
        d=d,
        truncation_error_bound=tail * max(abs(v) for v in (phi, *d)),
    )


def h_ratio_profile(x: float, y: int, t_grid) -> list[tuple[float, float]]:
    """|H(alpha + it; y) / H(alpha; y)| over t_grid, alpha the saddle point of (x, y).

    Ratios live in (0, 1]; the modulus is assembled from real logs only, so
    no complex cancellation enters.
    """
    from .saddle import solve_alpha  # deferred: saddle depends on this module

    alpha = solve_alpha(x, y).alpha
    return [(float(t), h_abs_ratio(alpha, y, float(t))) for t in t_grid]


def h_abs_ratio(alpha: float, y: int, t: float) -> float:
    """|H(alpha+it; y)| / H(alpha; y) for a known saddle point alpha > 0."""
    if alpha <= 0:
        raise DomainError(f"h_abs_ratio needs alpha > 0, got {alpha}")
    table = prime_table(y)
    c = np.exp(-alpha * table.logp)
    cosv = np.cos(t * table.logp)
    chi = table.chi.astype(np.float64)
    # log |1 - z p^-s|^2 = log(1 - 2 z c cos(t log p) + z^2 c^2), z in {1, chi}
    num = np.log1p(c * (c - 2.0 * cosv))
    num = num + np.where(chi == 0.0, 0.0, np.log1p(chi * c * (chi * c - 2.0 * cosv)))
    den = np.log1p(c * (c - 2.0))
    den = den + np.where(chi == 0.0, 0.0, np.log1p(chi * c * (chi * c - 2.0)))
    return math.exp(-0.5 * (csum(num) - csum(den)))
