"""Weighted Hermite polynomial evaluation stable up to degree ~20000.

Everything is built on the three-term recurrence
    H_{k+1}(x) = 2x H_k(x) - 2k H_{k-1}(x)
run with the Gaussian weight exp(-x^2/2) folded in incrementally (one factor
exp(-x^2/(2m)) per step over m steps) and with power-of-two renormalization,
so intermediate magnitudes never leave the float64 exponent range.  Values
come back as ScaledValue pairs.

Also provides the orthonormal Hermite functions

    psi_n(x) = 2^{1/4} (2^n n!)^{-1/2} H_n(sqrt(2 pi) x) e^{-pi x^2},

the cosine-phase asymptotic approximation to the normalized weighted
polynomial, and the normalized difference family

    phi_n(x) = H_{4n+4}(sqrt(2 pi) x) e^{-pi x^2} / H_{4n+4}(0)
             - H_{4n}(sqrt(2 pi) x) e^{-pi x^2} / H_{4n}(0).
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from ..errors import DomainError, InternalError, require
from ..scaled import ScaledValue
from .gammafn import log_gamma

SQRT_TWO_PI = math.sqrt(2.0 * math.pi)
_LOG2_E = 1.0 / math.log(2.0)

_UP = 2.0 ** 300
_DOWN = 2.0 ** -300
_SHIFT = 600

DEGREE_MAX = 20000


def _scan_collect(x: float, degrees: Sequence[int]) -> list[ScaledValue]:
    """exp(-x^2/2) H_k(x) for each requested degree, one recurrence pass."""
    if not degrees:
        return []
    wanted = sorted(set(degrees))
    require(wanted[0] >= 0, "Hermite degree must be >= 0")
    require(wanted[-1] <= DEGREE_MAX, f"Hermite degree capped at {DEGREE_MAX}")
    n_top = wanted[-1]

    if n_top == 0:
        out = {0: ScaledValue.from_float(math.exp(-0.5 * x * x))}
        return [out[d] for d in degrees]

    # per-step weight factor; after n_top steps the full exp(-x^2/2) is in
    w = math.exp(-x * x / (2.0 * n_top))
    w2 = w * w
    log2_w = -x * x / (2.0 * n_top) * _LOG2_E

    wanted_set = frozenset(wanted)
    out: dict[int, ScaledValue] = {}

    def _emit(k: int, value: float, exp2: int) -> None:
        # fold in the weight factors this value has not yet received; the
        # renormalization exponent is an exact integer, so keep it out of
        # the float log to avoid losing its low bits at large magnitudes
        if value == 0.0:
            out[k] = ScaledValue(0.0, 0)
            return
        log2_small = math.log2(abs(value)) + (n_top - k) * log2_w
        sv = ScaledValue.from_log2(log2_small, 1 if value > 0.0 else -1)
        out[k] = ScaledValue(sv.mantissa, sv.exponent + exp2)

    g_prev = 1.0  # H_0 with no weight factor yet
    g_cur = 2.0 * x * w  # H_1 with one weight factor
    exp2 = 0
    if 0 in wanted_set:
        _emit(0, g_prev, 0)
    if 1 in wanted_set:
        _emit(1, g_cur, 0)

    # with u_k = H_k(x) w^k the recurrence is u_{k+1} = 2xw u_k - 2k w^2 u_{k-1}
    two_x_w = 2.0 * x * w
    for k in range(1, n_top):
        g_next = two_x_w * g_cur - (2.0 * k) * w2 * g_prev
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
        if (k + 1) in wanted_set:
            _emit(k + 1, g_cur, exp2)

    return [out[d] for d in degrees]


def hermite_weighted(n: int, x: float) -> ScaledValue:
    """exp(-x^2/2) H_n(x) by the weighted three-term recurrence."""
    require(n >= 0, "hermite_weighted requires n >= 0")
    require(math.isfinite(x), "hermite_weighted requires finite x")
    return _scan_collect(float(x), [int(n)])[0]


def hermite_weighted_many(x: float, degrees: Iterable[int]) -> list[ScaledValue]:
    """Several degrees at one x, sharing a single recurrence pass."""
    return _scan_collect(float(x), [int(d) for d in degrees])


def hermite_at_zero(n: int) -> ScaledValue:
    """H_n(0): zero for odd n, (-1)^{n/2} n!/(n/2)! for even n."""
    return hermite_weighted(n, 0.0)


def hermite_sign_scan(x: float, n_max_degree: int, stride: int = 4,
                      noise_ratio: float = 1e-13) -> tuple[np.ndarray, np.ndarray]:
    """Signs of H_k(x) for k = 0, stride, 2*stride, ..., <= n_max_degree.

    Returns (signs, uncertain) where signs[i] in {-1, 0, +1} is the sign of
    H_{i*stride}(x) and uncertain[i] marks values below noise_ratio times the
    running recurrence magnitude, where roundoff could flip the sign.
    """
    require(n_max_degree >= 0, "sign scan requires n_max_degree >= 0")
    require(n_max_degree <= DEGREE_MAX, f"Hermite degree capped at {DEGREE_MAX}")
    count = n_max_degree // stride + 1
    signs = np.zeros(count, dtype=np.int8)
    uncertain = np.zeros(count, dtype=bool)

    g_prev = 1.0
    g_cur = 2.0 * x
    signs[0] = 1
    if stride == 1 and n_max_degree >= 1:
        signs[1] = 0 if g_cur == 0.0 else (1 if g_cur > 0.0 else -1)
    two_x = 2.0 * x
    for k in range(1, n_max_degree):
        g_next = two_x * g_cur - (2.0 * k) * g_prev
        g_prev = g_cur
        g_cur = g_next
        mag = max(abs(g_cur), abs(g_prev))
        if mag > _UP:
            g_cur = math.ldexp(g_cur, -_SHIFT)
            g_prev = math.ldexp(g_prev, -_SHIFT)
        elif 0.0 < mag < _DOWN:
            g_cur = math.ldexp(g_cur, _SHIFT)
            g_prev = math.ldexp(g_prev, _SHIFT)
        deg = k + 1
        if deg % stride == 0:
            i = deg // stride
            if i < count:
                signs[i] = 0 if g_cur == 0.0 else (1 if g_cur > 0.0 else -1)
                uncertain[i] = abs(g_cur) < noise_ratio * max(abs(g_prev), abs(g_cur))
    return signs, uncertain


def weighted_grid(xs: np.ndarray, degrees: Sequence[int]) -> np.ndarray:
    """exp(-x^2/2) H_k(x) over an array of x, as plain floats.

    Vectorized companion of hermite_weighted_many for moderate degrees
    (values must fit in float64; enforced up to degree 180).
    """
    degrees = [int(d) for d in degrees]
    require(all(d >= 0 for d in degrees), "degrees must be >= 0")
    require(max(degrees, default=0) <= 180, "weighted_grid caps the degree at 180")
    xs = np.asarray(xs, dtype=float)
    n_top = max(degrees, default=0)
    out = np.empty((len(degrees), xs.size), dtype=float)
    flat = xs.ravel()
    w = np.exp(-0.5 * flat * flat)
    g_prev = np.ones_like(flat) * w
    g_cur = 2.0 * flat * w
    for pos, d in enumerate(degrees):
        if d == 0:
            out[pos] = g_prev
        elif d == 1:
            out[pos] = g_cur
    two_x = 2.0 * flat
    for k in range(1, n_top):
        g_next = two_x * g_cur - (2.0 * k) * g_prev
        g_prev = g_cur
        g_cur = g_next
        for pos, d in enumerate(degrees):
            if d == k + 1:
                out[pos] = g_cur
    if not np.all(np.isfinite(out)):
        raise InternalError("weighted_grid overflowed float64; use hermite_weighted")
    return out.reshape((len(degrees),) + xs.shape)


def _psi_normalizer(n: int) -> ScaledValue:
    # 2^{1/4} (2^n n!)^{-1/2}
    log2_norm = 0.25 - 0.5 * (n + log_gamma(n + 1.0) * _LOG2_E)
    return ScaledValue.from_log2(log2_norm, 1)


def psi(n: int, x: float) -> float:
    """Orthonormal Hermite function psi_n(x); bounded for all valid n."""
    require(0 <= n <= DEGREE_MAX, f"psi requires 0 <= n <= {DEGREE_MAX}")
    value = hermite_weighted(n, SQRT_TWO_PI * x) * _psi_normalizer(n)
    return value.to_float()


def psi_grid(n: int, xs: np.ndarray) -> np.ndarray:
    """psi_n over an array; degree capped by weighted_grid's float64 range."""
    norm = _psi_normalizer(n).to_float() if n <= 180 else None
    if norm is None:
        raise DomainError("psi_grid caps n at 180; call psi pointwise instead")
    vals = weighted_grid(np.asarray(xs, dtype=float) * SQRT_TWO_PI, [n])[0]
    return norm * vals


def hermite_asymptotic(n: int, x: float, order: str = "leading") -> float:
    """Cosine-phase approximation to Gamma(n/2+1)/Gamma(n+1) e^{-x^2/2} H_n(x).

    order="leading" keeps the pure cosine term; order="corrected" adds the
    x^3 sine correction of relative size 1/sqrt(2n+1).
    """
    require(n >= 1, "asymptotic form requires n >= 1")
    require(order in ("leading", "corrected"), "order must be leading|corrected")
    root = math.sqrt(2.0 * n + 1.0)
    phase = root * x - 0.5 * math.pi * n
    value = math.cos(phase)
    if order == "corrected":
        value += (x ** 3 / 6.0) * math.sin(phase) / root
    return value


def hermite_ratio_to_zero(n: int, x: float) -> float:
    """Exact Gamma(n/2+1)/Gamma(n+1) e^{-x^2/2} H_n(x) for even n.

    The prefactor equals 1/|H_n(0)| for n divisible by 4; evaluated through
    ScaledValue products so it stays finite at any degree.
    """
    from .gammafn import gamma_scaled

    prefactor = gamma_scaled(n / 2.0 + 1.0) / gamma_scaled(n + 1.0)
    return (prefactor * hermite_weighted(n, x)).to_float()


def normalized_ratio_scan(x: float, count: int) -> np.ndarray:
    """r_n = H_{4n}(sqrt(2 pi) x) e^{-pi x^2} / H_{4n}(0) for n = 0..count-1."""
    require(count >= 1, "ratio scan requires count >= 1")
    degrees = [4 * n for n in range(count)]
    at_x = hermite_weighted_many(SQRT_TWO_PI * x, degrees)
    at_zero = hermite_weighted_many(0.0, degrees)
    return np.array([(a / b).to_float() for a, b in zip(at_x, at_zero)])


PHI_INDEX_MAX = 5000


def phi(n: int, x: float) -> float:
    """Normalized difference of consecutive degree-4n Gaussian-Hermite terms."""
    require(0 <= n <= PHI_INDEX_MAX, f"phi requires 0 <= n <= {PHI_INDEX_MAX}")
    y = SQRT_TWO_PI * x
    hi, lo = hermite_weighted_many(y, [4 * n + 4, 4 * n])
    hi0, lo0 = hermite_weighted_many(0.0, [4 * n + 4, 4 * n])
    return (hi / hi0).to_float() - (lo / lo0).to_float()


def hermite_coefficients(n: int) -> list[int]:
    """Exact integer coefficients of H_n, constant term first."""
    require(0 <= n <= 400, "exact coefficients capped at degree 400")
    if n == 0:
        return [1]
    prev = [1]
    cur = [0, 2]
    for k in range(1, n):
        nxt = [0] * (k + 2)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(prev):
            nxt[i] -= 2 * k * c
        prev, cur = cur, nxt
    return cur
