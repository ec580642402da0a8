"""Generalized Laguerre polynomials L_n^nu via the three-term recurrence

    (k+1) L_{k+1}^nu(t) = (2k + 1 + nu - t) L_k^nu(t) - (k + nu) L_{k-1}^nu(t)

with the same power-of-two renormalization scheme used for Hermite, so the
scan stays valid for any degree the sign searches need.  Leading term is
(-1)^n t^n / n!.
"""

from __future__ import annotations

import math
import numpy as np

from ..errors import InternalError, require
from ..scaled import ScaledValue
from .gammafn import log_gamma

_UP = 2.0 ** 300
_DOWN = 2.0 ** -300
_SHIFT = 600

DEGREE_MAX = 20000


def _check_params(nu: float, t: float) -> None:
    require(nu > -1.0, "laguerre requires nu > -1")
    require(math.isfinite(nu) and math.isfinite(t), "laguerre requires finite arguments")
    require(t >= 0.0, "laguerre requires t >= 0")


def laguerre(n: int, nu: float, t: float) -> ScaledValue:
    """L_n^nu(t) as a ScaledValue."""
    require(0 <= n <= DEGREE_MAX, f"laguerre degree must be in [0, {DEGREE_MAX}]")
    _check_params(nu, t)
    if n == 0:
        return ScaledValue.from_float(1.0)
    g_prev = 1.0
    g_cur = 1.0 + nu - t
    exp2 = 0
    for k in range(1, n):
        g_next = ((2.0 * k + 1.0 + nu - t) * g_cur - (k + nu) * g_prev) / (k + 1.0)
        g_prev = g_cur
        g_cur = g_next
        mag = max(abs(g_cur), abs(g_prev))
        if mag > _UP:
            g_cur = math.ldexp(g_cur, -_SHIFT)
            g_prev = math.ldexp(g_prev, -_SHIFT)
            exp2 += _SHIFT
        elif 0.0 < mag < _DOWN:
            g_cur = math.ldexp(g_cur, _SHIFT)
            g_prev = math.ldexp(g_prev, _SHIFT)
            exp2 -= _SHIFT
    return ScaledValue.compose(g_cur, exp2)


def laguerre_float(n: int, nu: float, t: float) -> float:
    return laguerre(n, nu, t).to_float()


def laguerre_sign_scan(nu: float, t: float, n_max: int,
                       noise_ratio: float = 1e-13) -> tuple[np.ndarray, np.ndarray]:
    """Signs of L_n^nu(t) for n = 0..n_max plus roundoff-uncertainty flags."""
    require(0 <= n_max <= DEGREE_MAX, f"n_max must be in [0, {DEGREE_MAX}]")
    _check_params(nu, t)
    signs = np.zeros(n_max + 1, dtype=np.int8)
    uncertain = np.zeros(n_max + 1, dtype=bool)
    g_prev = 1.0
    g_cur = 1.0 + nu - t
    signs[0] = 1
    if n_max >= 1:
        signs[1] = 0 if g_cur == 0.0 else (1 if g_cur > 0.0 else -1)
        uncertain[1] = abs(g_cur) < noise_ratio
    for k in range(1, n_max):
        g_next = ((2.0 * k + 1.0 + nu - t) * g_cur - (k + nu) * g_prev) / (k + 1.0)
        g_prev = g_cur
        g_cur = g_next
        mag = max(abs(g_cur), abs(g_prev))
        if mag > _UP:
            g_cur = math.ldexp(g_cur, -_SHIFT)
            g_prev = math.ldexp(g_prev, -_SHIFT)
        elif 0.0 < mag < _DOWN:
            g_cur = math.ldexp(g_cur, _SHIFT)
            g_prev = math.ldexp(g_prev, _SHIFT)
        signs[k + 1] = 0 if g_cur == 0.0 else (1 if g_cur > 0.0 else -1)
        uncertain[k + 1] = abs(g_cur) < noise_ratio * max(abs(g_prev), abs(g_cur))
    return signs, uncertain


def laguerre_grid(n: int, nu: float, ts: np.ndarray) -> np.ndarray:
    """L_n^nu over an array of t values, vectorized in plain float64.

    Intended for quadrature integrands (n <= 200, t <= 500); raises if the
    recurrence leaves the float64 range.
    """
    require(0 <= n <= 200, "laguerre_grid caps the degree at 200")
    _check_params(nu, float(np.min(ts)) if np.size(ts) else 0.0)
    ts = np.asarray(ts, dtype=float)
    g_prev = np.ones_like(ts)
    if n == 0:
        return g_prev
    g_cur = 1.0 + nu - ts
    for k in range(1, n):
        g_next = ((2.0 * k + 1.0 + nu - ts) * g_cur - (k + nu) * g_prev) / (k + 1.0)
        g_prev = g_cur
        g_cur = g_next
    if not np.all(np.isfinite(g_cur)):
        raise InternalError("laguerre_grid overflowed float64; use laguerre pointwise")
    return g_cur


def laguerre_at_zero(n: int, nu: float) -> float:
    """L_n^nu(0) = C(n + nu, n)."""
    require(n >= 0, "laguerre_at_zero requires n >= 0")
    require(nu > -1.0, "laguerre requires nu > -1")
    return math.exp(log_gamma(n + nu + 1.0) - log_gamma(n + 1.0) - log_gamma(nu + 1.0))


def generating_function_partial_sum(nu: float, x: float, t: float, terms: int) -> float:
    """Partial sum of sum_n t^n L_n^nu(x) through degree terms-1."""
    require(abs(t) < 1.0, "generating function requires |t| < 1")
    _check_params(nu, x)
    total = 0.0
    tk = 1.0
    g_prev = 1.0
    g_cur = 1.0 + nu - x
    for k in range(terms):
        if k == 0:
            total += tk * g_prev
        elif k == 1:
            total += tk * g_cur
        else:
            g_next = ((2.0 * (k - 1) + 1.0 + nu - x) * g_cur - (k - 1 + nu) * g_prev) / float(k)
            g_prev = g_cur
            g_cur = g_next
            total += tk * g_cur
        tk *= t
    return total


def generating_function_closed_form(nu: float, x: float, t: float) -> float:
    """(1-t)^{-nu-1} exp(-t x / (1-t))."""
    require(abs(t) < 1.0, "generating function requires |t| < 1")
    return math.exp(-t * x / (1.0 - t)) / (1.0 - t) ** (nu + 1.0)


def laguerre_asymptotic(n: int, nu: float, x: float) -> float:
    """Cosine-phase approximation to x^{nu/2+1/4} e^{-x/2} L_n^nu(x).

    Main term pi^{-1/2} n^{nu/2-1/4} cos(2 sqrt(n x) - nu pi/2 - pi/4); the
    remainder is O(n^{nu/2-3/4}) uniformly on compact x-sets in (0, inf).
    """
    require(n >= 1, "asymptotic form requires n >= 1")
    require(x > 0.0, "asymptotic form requires x > 0")
    phase = 2.0 * math.sqrt(n * x) - 0.5 * nu * math.pi - 0.25 * math.pi
    return n ** (0.5 * nu - 0.25) * math.cos(phase) / math.sqrt(math.pi)
