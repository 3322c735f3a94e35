"""Small numerical helpers: compensated sums, safeguarded root finding,
panel-based Gauss-Legendre quadrature."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ConvergenceError

# Euler-Mascheroni constant, 16 decimal digits.
EULER_GAMMA = 0.5772156649015329


def csum(terms) -> float:
    """Compensated (exact) floating sum of an iterable or array."""
    return math.fsum(terms)


def bracketed_newton(
    f: Callable[[float], float],
    fprime: Callable[[float], float],
    lo: float,
    hi: float,
    x0: float | None = None,
    *,
    ftol: float,
    max_iters: int = 100,
) -> tuple[float, float, int, tuple[float, float]]:
    """Newton iteration confined to a sign-changing bracket, with bisection fallback.

    Requires f nondecreasing with f(lo) <= 0 <= f(hi).  Returns
    (root, f(root), iterations, (lo, hi)); the returned bracket still
    straddles the root strictly.
    """
    if not (lo < hi):
        raise ConvergenceError(f"empty bracket [{lo}, {hi}]")
    if f(lo) > 0 or f(hi) < 0:
        raise ConvergenceError(f"bracket [{lo}, {hi}] does not straddle a sign change")
    x = x0 if (x0 is not None and lo < x0 < hi) else 0.5 * (lo + hi)
    for it in range(1, max_iters + 1):
        fx = f(x)
        if abs(fx) <= ftol:
            return x, fx, it, (lo, hi)
        if fx > 0:
            hi = x
        else:
            lo = x
        d = fprime(x)
        step = x - fx / d if (d > 0 and math.isfinite(d)) else math.nan
        if not (lo < step < hi):
            step = 0.5 * (lo + hi)
        if step == x:  # float resolution exhausted
            return x, fx, it, (lo, hi)
        x = step
    raise ConvergenceError(f"no convergence after {max_iters} iterations (|f|={abs(fx):.3e})")


_GL_LO = leggauss(15)
_GL_HI = leggauss(31)


def integrate_panels(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    panel_width: float,
    *,
    rtol: float = 1e-10,
    atol: float = 1e-10,
    max_splits: int = 4000,
) -> float:
    """Integrate f over [a, b] with fixed panels refined adaptively.

    f must map an array of abscissae to an array of values.  Each panel is
    evaluated with nested 15/31-point Gauss-Legendre rules and bisected until
    the two agree; exceeding the split budget raises ConvergenceError.  The
    final reduction order is deterministic (panels sorted by position).
    """
    if b <= a:
        return 0.0

    def rule(lo: float, hi: float, nodes: np.ndarray, wts: np.ndarray) -> float:
        mid, hw = 0.5 * (lo + hi), 0.5 * (hi - lo)
        return hw * float(np.dot(wts, f(mid + hw * nodes)))

    n_base = max(1, math.ceil((b - a) / panel_width))
    edges = np.linspace(a, b, n_base + 1)
    work = [(edges[i], edges[i + 1]) for i in range(n_base)]
    done: list[tuple[float, float]] = []
    splits = 0
    while work:
        lo, hi = work.pop()
        coarse = rule(lo, hi, *_GL_LO)
        fine = rule(lo, hi, *_GL_HI)
        if abs(fine - coarse) <= max(atol, rtol * abs(fine)):
            done.append((lo, fine))
            continue
        splits += 1
        if splits > max_splits:
            raise ConvergenceError(
                f"quadrature refinement budget exceeded ({max_splits} splits)"
            )
        mid = 0.5 * (lo + hi)
        work.append((mid, hi))
        work.append((lo, mid))
    done.sort(key=lambda t: t[0])
    return math.fsum(v for _, v in done)
