"""Dimension-dependent bounds for the product A(f) A(fhat) of radial
functions, driven by the normalized Bessel kernel

    Lambda_d(t) = Gamma(d/2 + 1) J_{d/2}(t) / (t/2)^{d/2},

whose most negative value -lambda_d is attained at the first zero of the
kernel derivative, namely t0 = j_{d/2+1} (smallest positive zero of
J_{d/2+1}).  The module computes lambda_d by that stationary-point formula,
cross-checks it by direct minimization, and exposes the bound family

    bound_new(d)   = (1/pi) (Gamma(d/2+1) / (1 + lambda_d))^{2/d}
    bound_bck(d)   = (1/pi) (Gamma(d/2+1) / 2)^{2/d}
    bound_upper(d) = (d + 2) / (2 pi)

plus the explicit decreasing envelope U_d >= lambda_d.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, require
from .specfun.bessel import bessel_first_zero, bessel_j, bessel_j_pair
from .specfun.gammafn import log_gamma

D_MIN = 2
D_MAX = 120


def _check_d(d: int) -> None:
    require(int(d) == d and D_MIN <= d <= D_MAX, f"dimension must be in [{D_MIN}, {D_MAX}]")


def worker_cap() -> int:
    """Worker count cap from FRL_THREADS; defaults to serial execution."""
    raw = os.environ.get("FRL_THREADS", "")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


def normalized_kernel(d: int, t) -> float:
    """Gamma(d/2+1) J_{d/2}(t) / (t/2)^{d/2}, evaluated through logs."""
    _check_d(d)
    nu = 0.5 * d
    ts = np.asarray(t, dtype=float)
    require(bool(np.all(ts > 0.0)), "kernel requires t > 0")
    j = bessel_j(nu, ts)
    log_pref = log_gamma(nu + 1.0) - nu * np.log(0.5 * ts)
    out = j * np.exp(log_pref)
    return float(out) if np.ndim(t) == 0 else out


def lambda_d(d: int) -> float:
    """-min of the normalized kernel, via its stationary point j_{d/2+1}."""
    _check_d(d)
    nu = 0.5 * d
    t0 = bessel_first_zero(nu + 1.0)
    value = -normalized_kernel(d, t0)
    if not 0.0 < value < 1.0:
        raise DomainError(f"lambda_{d} fell outside (0, 1); got {value}")
    return value


def lambda_d_direct(d: int) -> float:
    """Cross-check route: direct minimization of the normalized kernel.

    Coarse scan to bracket the first minimum, then golden-section refinement.
    """
    _check_d(d)
    nu = 0.5 * d
    lo = nu + 0.5
    # the first kernel minimum sits at j_{nu+1} ~ nu + 1.86 nu^{1/3}, so a
    # window of a few turning-point widths always brackets it
    hi = min(nu + 14.0 * (nu + 1.0) ** (1.0 / 3.0) + 25.0, 255.0)
    ts = np.arange(lo, hi, 0.05)
    vals = normalized_kernel(d, ts)
    # the global minimum of the kernel is its first local minimum
    first = None
    for k in range(1, len(ts) - 1):
        if vals[k] < vals[k - 1] and vals[k] < vals[k + 1]:
            first = k
            break
    if first is None:
        raise DomainError("no interior minimum found in the scan window")
    a, b = float(ts[first - 1]), float(ts[first + 1])
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1 = normalized_kernel(d, x1)
    f2 = normalized_kernel(d, x2)
    for _ in range(120):
        if b - a < 1e-12:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = normalized_kernel(d, x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = normalized_kernel(d, x2)
    return -normalized_kernel(d, 0.5 * (a + b))


def bound_new(d: int, lam: float | None = None) -> float:
    _check_d(d)
    lam = lambda_d(d) if lam is None else lam
    return (1.0 / math.pi) * math.exp((2.0 / d) * (log_gamma(0.5 * d + 1.0) - math.log1p(lam)))


def bound_bck(d: int) -> float:
    _check_d(d)
    return (1.0 / math.pi) * math.exp((2.0 / d) * (log_gamma(0.5 * d + 1.0) - math.log(2.0)))


def bound_upper(d: int) -> float:
    _check_d(d)
    return (d + 2.0) / (2.0 * math.pi)


def u_d(d: int) -> float:
    """Explicit envelope sqrt(2 pi)/e * e^{1/(6(d+2))} (d/2+1)^{1/2} (2/e)^{d/2}."""
    require(d >= 2, "u_d requires d >= 2")
    return (math.sqrt(2.0 * math.pi) / math.e
            * math.exp(1.0 / (6.0 * (d + 2.0)))
            * math.sqrt(0.5 * d + 1.0)
            * (2.0 / math.e) ** (0.5 * d))


@dataclass(frozen=True)
class BoundReport:
    d: int
    lambda_d: float
    bound_new: float
    bound_bck: float
    bound_upper: float
    u_d: float

    def __post_init__(self):
        require(self.bound_bck < self.bound_new, "new bound must beat the older one")
        require(self.bound_new <= self.bound_upper, "lower bound crossed the upper bound")
        require(0.0 < self.lambda_d, "lambda_d must be positive")


def bound_report(d: int) -> BoundReport:
    lam = lambda_d(d)
    return BoundReport(d=d, lambda_d=lam, bound_new=bound_new(d, lam),
                       bound_bck=bound_bck(d), bound_upper=bound_upper(d), u_d=u_d(d))


def bound_table(d_min: int, d_max: int) -> list[BoundReport]:
    """Per-dimension reports; rows are independent so FRL_THREADS may help."""
    _check_d(d_min)
    _check_d(d_max)
    require(d_min <= d_max, "need d_min <= d_max")
    dims = list(range(d_min, d_max + 1))
    workers = worker_cap()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(bound_report, dims))
    return [bound_report(d) for d in dims]


def linear_growth_report(d_max: int) -> list[dict]:
    """Rows (d/(2 pi e), bound_new, (d+2)/(2 pi)) with the sandwich check."""
    _check_d(d_max)
    rows = []
    for d in range(D_MIN, d_max + 1):
        low = d / (2.0 * math.pi * math.e)
        mid = bound_new(d)
        high = bound_upper(d)
        rows.append({"d": d, "linear_floor": low, "bound_new": mid,
                     "bound_upper": high, "sandwich_ok": low < mid < high})
    return rows


def stationary_point_identity_residual(d: int) -> float:
    """Residual of 2 J'_{d/2}(t0) = (d/t0) J_{d/2}(t0) at t0 = j_{d/2+1}."""
    nu = 0.5 * d
    t0 = bessel_first_zero(nu + 1.0)
    j_nu, j_nu1 = bessel_j_pair(nu, t0)
    # J'_nu = (nu/t) J_nu - J_{nu+1}
    lhs = 2.0 * ((nu / t0) * j_nu - j_nu1)
    rhs = (d / t0) * j_nu
    return abs(lhs - rhs)
