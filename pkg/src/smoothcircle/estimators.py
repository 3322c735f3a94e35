"""The asymptotic routes to the smooth circle sum and their verification
against the exact oracle: saddle-point main term, closed-form estimate,
Dickman-density estimate, the Rankin upper bound, a truncated Perron
integral, and the short-interval difference diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .counting import DEFAULT_NODE_BUDGET, exact_circle_sum
from .dickman import rho, rho_saddle_form
from .errors import DomainError, ResourceBudgetError, SmoothCircleError
from .euler import h_log_real, phi_derivatives
from .numutil import integrate_panels
from .saddle import solve_alpha

DEFAULT_EPSILON0 = 0.1
DEFAULT_LAMBDA = 0.25

FLAG_OUTSIDE_THM1 = "outside-thm1-range"
FLAG_OUTSIDE_THM2 = "outside-thm2-range"
FLAG_ORACLE_SKIPPED = "oracle-skipped"
FLAG_OVERFLOW = "overflow-logspace"


def log_saddle_point_estimate(x: float, y: int) -> float:
    """log of the saddle-point main term 4 x^a H(a; y) / (a sqrt(2 pi phi_2(a; y)))."""
    res = solve_alpha(x, y)
    a = res.alpha
    phi2 = phi_derivatives(a, y, kmax=2).phi2
    return (
        math.log(4.0)
        + a * math.log(x)
        + h_log_real(a, y)
        - math.log(a)
        - 0.5 * math.log(2.0 * math.pi * phi2)
    )


def saddle_point_estimate(x: float, y: int) -> float:
    """Saddle-point main term for the smooth circle sum; exact up to 1 + O(1/u).

    Assembled fully in log space; returns inf when the value exceeds float
    range (the log form above stays finite).
    """
    lv = log_saddle_point_estimate(x, y)
    return math.exp(lv) if lv < 709.0 else math.inf


def closed_form_estimate(x: float, y: int) -> float:
    """Closed-form estimate pi x sqrt(xi'(u)/2pi) exp(gamma - u xi(u) + I(xi(u))).

    Composition of the saddle-form Dickman approximation with the trivial
    factor pi x; requires u > 1 (x > y).
    """
    u = math.log(x) / math.log(y)
    if u <= 1.0:
        raise DomainError(f"closed_form_estimate needs x > y (u > 1), got u={u}")
    return math.pi * x * rho_saddle_form(u)


def dickman_estimate(x: float, y: int) -> float:
    """The first-order density estimate pi rho(u) x, u = log x / log y."""
    u = math.log(x) / math.log(y)
    if u < 1.0:
        raise DomainError(f"dickman_estimate needs x >= y, got u={u}")
    return math.pi * rho(u) * x


def log_rankin_bound(x: float, y: int) -> float:
    """log of the Rankin bound 4 x^a H(a; y) at the minimizing exponent a."""
    if x == 1:
        return math.log(4.0)  # inf over sigma of 4 H(sigma; y) = 4, attained in the limit
    res = solve_alpha(x, y)
    return math.log(4.0) + res.alpha * math.log(x) + h_log_real(res.alpha, y)


def rankin_bound(x: float, y: int) -> float:
    """The unconditional upper bound 4 x^alpha H(alpha; y) >= exact circle sum."""
    return math.exp(log_rankin_bound(x, y))


@dataclass(frozen=True)
class PerronResult:
    """Truncated Perron integral next to the exact circle sum."""

    x: float
    y: int
    T: float
    alpha: float
    integral: float
    exact: int
    error: float  # integral - exact


def perron_verify(
    x: float,
    y: int,
    T: float,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    rtol: float = 1e-9,
) -> PerronResult:
    """Evaluate (4/2pi) int_{-T}^{T} H(a+it; y) x^(a+it) / (a+it) dt and
    compare with the exact circle sum at floor(x).

    x must not be an integer (Perron's formula has a boundary jump there;
    work at half-integers).  The integrand is even in t after taking real
    parts, and is integrated over panels of width 1/log y, each refined
    adaptively.
    """
    if float(x).is_integer():
        raise DomainError(f"perron_verify needs non-integer x; shift to {x} + 0.5")
    if T <= 0:
        raise DomainError(f"perron_verify needs T > 0, got {T}")
    res = solve_alpha(x, y)
    a = res.alpha
    logx = math.log(x)

    from .primes import prime_table

    tab = prime_table(y)
    lp = tab.logp[None, :]
    chi = tab.chi.astype(np.float64)[None, :]

    def f(ts: np.ndarray) -> np.ndarray:
        s = a + 1j * ts[:, None]
        w = np.exp(-s * lp)
        logh = np.sum(-np.log(1.0 - w) - np.where(chi == 0.0, 0.0, np.log(1.0 - chi * w)), axis=1)
        sv = a + 1j * ts
        return (np.exp(logh + sv * logx) / sv).real

    integral = 4.0 / math.pi * integrate_panels(
        f, 0.0, T, 1.0 / math.log(y), rtol=rtol, atol=1e-9
    )
    exact = exact_circle_sum(int(math.floor(x)), y, node_budget=node_budget).value
    return PerronResult(
        x=x, y=y, T=T, alpha=a, integral=integral, exact=exact,
        error=integral - exact,
    )


@dataclass(frozen=True)
class DifferenceReport:
    """Scale-free diagnostic for the short-interval increment of the circle sum.

    lhs is the exact increment over (x, x + x/z]; scale is x^a H(a; y)/z, the
    leading factor of its upper bound.  ratio = lhs/scale is reported, not
    asserted (the bound's constant is not explicit).
    """

    x: int
    y: int
    z: float
    u: float
    alpha: float
    lhs: int
    scale: float
    ratio: float


def difference_check(
    x: int,
    y: int,
    z: float,
    *,
    lam: float = DEFAULT_LAMBDA,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> DifferenceReport:
    """Exact increment of the circle sum over (x, x + x/z] against its bound scale."""
    big_z = math.exp(math.log(y) ** (1.5 - lam))
    if not 1.0 <= z <= big_z:
        raise DomainError(f"difference_check needs 1 <= z <= {big_z:.6g}, got {z}")
    res = solve_alpha(x, y)
    hi = exact_circle_sum(int(math.floor(x + x / z)), y, node_budget=node_budget).value
    lo = exact_circle_sum(int(x), y, node_budget=node_budget).value
    lhs = hi - lo
    scale = math.exp(res.alpha * math.log(x) + h_log_real(res.alpha, y)) / z
    return DifferenceReport(
        x=x, y=y, z=z, u=res.u, alpha=res.alpha,
        lhs=lhs, scale=scale, ratio=lhs / scale,
    )


@dataclass(frozen=True)
class ComparisonRow:
    """One (x, y) cell of the estimate comparison sweep.

    exact is None when the oracle was skipped; ratios are estimate/exact.
    Log-space values of the two product-form quantities are kept alongside
    so overflowing cells remain meaningful (flagged overflow-logspace).
    """

    x: float
    y: int
    u: float | None = None
    alpha: float | None = None
    residual: float | None = None
    exact: int | None = None
    thm1: float | None = None
    thm2: float | None = None
    goswami: float | None = None
    rankin: float | None = None
    ratio_thm1: float | None = None
    ratio_thm2: float | None = None
    ratio_goswami: float | None = None
    flags: tuple[str, ...] = ()
    log_thm1: float | None = field(default=None, repr=False)
    log_rankin: float | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if (
            self.exact is not None
            and self.rankin is not None
            and math.isfinite(self.rankin)
            and not self.rankin >= self.exact
        ):
            raise SmoothCircleError(
                f"Rankin bound {self.rankin} below exact value {self.exact} "
                f"at (x={self.x}, y={self.y})"
            )


def _thm1_window(u: float, y: int, epsilon0: float) -> bool:
    lly = math.log(math.log(y))
    low = max(1.0, lly * lly) if lly > 0 else 1.0
    high = y ** (1.0 / (2.0 + epsilon0)) / math.log(y)
    return low <= u <= high


def _thm2_window(x: float, y: int, epsilon0: float) -> bool:
    return math.log(x) ** (2.0 + epsilon0) < y < x


def compare_cell(
    x: float,
    y: int,
    with_exact: bool,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    epsilon0: float = DEFAULT_EPSILON0,
) -> ComparisonRow:
    """Build one ComparisonRow; per-cell failures are recorded, not raised."""
    flags: list[str] = []
    try:
        res = solve_alpha(x, y)
    except SmoothCircleError:
        return ComparisonRow(x=x, y=y)
    u = res.u

    log1 = log_saddle_point_estimate(x, y)
    logr = log_rankin_bound(x, y)
    thm1 = math.exp(log1) if log1 < 709.0 else math.inf
    rankin = math.exp(logr) if logr < 709.0 else math.inf
    if math.isinf(thm1) or math.isinf(rankin):
        flags.append(FLAG_OVERFLOW)
    if not _thm1_window(u, y, epsilon0):
        flags.append(FLAG_OUTSIDE_THM1)

    try:
        thm2 = closed_form_estimate(x, y)
    except DomainError:
        thm2 = None
    if not _thm2_window(x, y, epsilon0):
        flags.append(FLAG_OUTSIDE_THM2)
    goswami = dickman_estimate(x, y) if u >= 1.0 else None

    exact: int | None = None
    if with_exact:
        try:
            exact = exact_circle_sum(int(math.floor(x)), y, node_budget=node_budget).value
        except ResourceBudgetError:
            flags.append(FLAG_ORACLE_SKIPPED)

    def ratio(v: float | None) -> float | None:
        if exact is None or v is None or not math.isfinite(v):
            return None
        return v / exact

    return ComparisonRow(
        x=x, y=y, u=u, alpha=res.alpha, residual=res.residual,
        exact=exact, thm1=thm1, thm2=thm2, goswami=goswami, rankin=rankin,
        ratio_thm1=ratio(thm1), ratio_thm2=ratio(thm2), ratio_goswami=ratio(goswami),
        flags=tuple(flags), log_thm1=log1, log_rankin=logr,
    )


def compare_grid(
    x_list,
    y_list,
    with_exact: bool = False,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    epsilon0: float = DEFAULT_EPSILON0,
) -> list[ComparisonRow]:
    """One ComparisonRow per (x, y) in row-major input order."""
    if not x_list or not y_list:
        raise DomainError("compare_grid needs nonempty x and y lists")
    return [
        compare_cell(x, y, with_exact, node_budget=node_budget, epsilon0=epsilon0)
        for x in x_list
        for y in y_list
    ]
