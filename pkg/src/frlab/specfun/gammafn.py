"""Gamma function on the positive half-line.

A Lanczos rational approximation (g = 7, 9 terms) provides the evaluator;
results beyond the float64 range (x > 170) come back as a ScaledValue built
from log Gamma.  Stirling-type two-sided bounds are deliberately not used
for evaluation; they serve as an independent test envelope.
"""

from __future__ import annotations

import math

from ..errors import require
from ..scaled import ScaledValue

_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)
_LN_SQRT_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_LOG2_E = 1.0 / math.log(2.0)

# Largest x for which Gamma(x) fits comfortably in a float64.
FLOAT_RANGE_MAX = 170.0


def _lanczos_series(x: float) -> float:
    acc = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[i] / (x - 1.0 + i)
    return acc


def _check_argument(x: float) -> None:
    require(isinstance(x, (int, float)) and math.isfinite(x), "gamma requires finite x")
    require(x > 0.0, "gamma requires x > 0")


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    _check_argument(x)
    x = float(x)
    if x < 0.5:
        # reflection keeps the series argument away from the pole
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    t = x + _LANCZOS_G - 0.5
    return _LN_SQRT_TWO_PI + (x - 0.5) * math.log(t) - t + math.log(_lanczos_series(x))


def gamma_float(x: float) -> float:
    """Gamma(x) as a float; only valid for x <= FLOAT_RANGE_MAX."""
    _check_argument(x)
    x = float(x)
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma_float(1.0 - x))
    t = x + _LANCZOS_G - 0.5
    return _SQRT_TWO_PI * _lanczos_series(x) * math.exp((x - 0.5) * math.log(t) - t)


def gamma_scaled(x: float) -> ScaledValue:
    """Gamma(x) as a ScaledValue, valid for any positive x."""
    _check_argument(x)
    if x <= FLOAT_RANGE_MAX:
        return ScaledValue.from_float(gamma_float(x))
    return ScaledValue.from_log2(log_gamma(x) * _LOG2_E, sign=1)


def gamma(x: float):
    """Gamma(x); a float for x <= 170, a ScaledValue beyond that."""
    _check_argument(x)
    if x <= FLOAT_RANGE_MAX:
        return gamma_float(x)
    return gamma_scaled(x)


def gamma_ratio(numerator: float, denominator: float) -> ScaledValue:
    """Gamma(numerator) / Gamma(denominator) without overflow."""
    return gamma_scaled(numerator) / gamma_scaled(denominator)


def binomial(n: float, k: float) -> float:
    """Generalized binomial coefficient C(n, k) for n, k with n - k > -1."""
    if k == 0:
        return 1.0
    sv = gamma_scaled(n + 1.0) / (gamma_scaled(k + 1.0) * gamma_scaled(n - k + 1.0))
    return sv.to_float()
