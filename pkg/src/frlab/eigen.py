"""Even +1-eigenfunctions of the Fourier transform built on the basis

    e_n(x) = H_{4n}(sqrt(2 pi) x) exp(-pi x^2),

their evaluation, certified largest roots, double/near-double root detection
and L1 norms.  The basis is kept unnormalized so exact rational
coefficients can be carried verbatim; conversion to the orthonormal psi
basis is provided.

A RootCertificate pins down A(f) = inf {r > 0 : f >= 0 beyond r}: the sign
pattern is scanned on [0, R] at a fixed grid step, every bracketed root is
bisected, and positivity beyond R is certified by a coefficient-norm bound
that makes the top-degree term dominate all lower-degree ones.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DomainError, InternalError, require
from .quadrature import GAUSSIAN_TAIL, Integrand, integrate, measured_envelope, truncation_radius
from .scaled import ScaledValue
from .specfun.gammafn import log_gamma
from .specfun.hermite import (SQRT_TWO_PI, hermite_coefficients, hermite_weighted_many,
                              phi, weighted_grid)

_LOG2_E = 1.0 / math.log(2.0)

BASIS_UNNORMALIZED = "unnormalized-H4n"
BASIS_PSI = "psi"

MAX_BASIS_INDEX = 40  # H_{4n}(0) must stay inside float64

ZERO_RESIDUAL_TOL = 1e-12
DOUBLE_ROOT_VALUE_TOL = 1e-10
NEAR_DOUBLE_RATIO = 0.01
DEFAULT_GRID_STEP = 1e-3
DEFAULT_ROOT_TOL = 1e-12


def h4n_at_zero(n: int) -> float:
    """H_{4n}(0) as a float; positive for every n."""
    require(0 <= n <= MAX_BASIS_INDEX, f"basis index must be in [0, {MAX_BASIS_INDEX}]")
    if n == 0:
        return 1.0
    return math.exp(log_gamma(4.0 * n + 1.0) - log_gamma(2.0 * n + 1.0))


@dataclass(frozen=True)
class EigenPlusFunction:
    """Finite combination sum_n coeffs[n] * e_n; immutable after creation."""

    coeffs: tuple[float, ...]
    normalized: bool = False

    def __post_init__(self):
        require(len(self.coeffs) >= 1, "at least one coefficient required")
        require(len(self.coeffs) - 1 <= MAX_BASIS_INDEX,
                f"basis index capped at {MAX_BASIS_INDEX}")
        require(all(math.isfinite(c) for c in self.coeffs), "coefficients must be finite")
        if self.normalized:
            residual = abs(self.value_at_zero())
            scale = max(abs(c) * h4n_at_zero(n) for n, c in enumerate(self.coeffs))
            if residual > ZERO_RESIDUAL_TOL * max(1.0, scale):
                raise DomainError("normalized flag set but f(0) does not vanish")

    @property
    def top_index(self) -> int:
        for n in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[n] != 0.0:
                return n
        raise DomainError("all coefficients vanish")

    def value_at_zero(self) -> float:
        return sum(c * h4n_at_zero(n) for n, c in enumerate(self.coeffs))

    def eval(self, x):
        """f(x) for scalar or array x."""
        xs = np.asarray(x, dtype=float)
        degrees = [4 * n for n in range(len(self.coeffs))]
        table = weighted_grid(np.atleast_1d(xs).ravel() * SQRT_TWO_PI, degrees)
        out = np.zeros(table.shape[1])
        for n, c in enumerate(self.coeffs):
            if c != 0.0:
                out += c * table[n]
        out = out.reshape(np.shape(xs))
        return float(out) if np.ndim(x) == 0 else out

    __call__ = eval

    def eval_scaled(self, x: float) -> ScaledValue:
        """f(x) through ScaledValue terms; slower, any basis size."""
        degrees = [4 * n for n in range(len(self.coeffs))]
        terms = hermite_weighted_many(SQRT_TWO_PI * x, degrees)
        acc = ScaledValue(0.0, 0)
        for c, t in zip(self.coeffs, terms):
            acc = acc + t * c
        return acc


def normalize(coeffs: Sequence[float], pivot: int | None = None) -> EigenPlusFunction:
    """Re-solve one coefficient so that f(0) = 0 exactly.

    The pivot defaults to the highest index, mirroring the reference
    construction where the last coefficient balances all the others.
    """
    coeffs = [float(c) for c in coeffs]
    require(len(coeffs) >= 2, "normalization needs at least two coefficients")
    if pivot is None:
        pivot = len(coeffs) - 1
    require(0 <= pivot < len(coeffs), "pivot out of range")
    others = sum(c * h4n_at_zero(n) for n, c in enumerate(coeffs) if n != pivot)
    coeffs[pivot] = -others / h4n_at_zero(pivot)
    return EigenPlusFunction(tuple(coeffs), normalized=True)


def reference_candidate() -> EigenPlusFunction:
    """The explicit four-term example with largest root near 0.59354."""
    a0 = Fraction(-113, 100)
    a1 = Fraction(1, 25)
    a2 = Fraction(1, 3240)
    a3 = (-a0 - 12 * a1 - 1680 * a2) / 665280
    return EigenPlusFunction((float(a0), float(a1), float(a2), float(a3)), normalized=True)


# -- root certification -----------------------------------------------------


@dataclass(frozen=True)
class RootCertificate:
    roots: tuple[float, ...]              # sign changes on [0, scan_bound]
    largest_root: float                   # 0.0 when there is none
    scan_bound: float
    tail_reason: str                      # positivity proof beyond scan_bound
    double_roots: tuple[tuple[float, float], ...]
    near_double_roots: tuple[tuple[float, float], ...]
    grid_step: float
    tol: float


def polynomial_coefficients(f: EigenPlusFunction) -> np.ndarray:
    """Coefficients of P(y) = sum_n coeffs[n] H_{4n}(y), constant term first."""
    top = f.top_index
    out = np.zeros(4 * top + 1)
    for n, c in enumerate(f.coeffs):
        if c != 0.0:
            h = hermite_coefficients(4 * n)
            out[: len(h)] += c * np.asarray(h, dtype=float)
    return out


def domination_radius(poly: np.ndarray) -> float:
    """Radius beyond which the top term of the polynomial outweighs the rest.

    For |y| > R each lower-degree term is below |c_N| |y|^N / N, so the sign
    of the polynomial equals the sign of its leading coefficient.
    """
    n = len(poly) - 1
    c_top = poly[-1]
    require(c_top != 0.0, "leading coefficient must not vanish")
    r = 1.0
    for i in range(n):
        if poly[i] != 0.0:
            r = max(r, (n * abs(poly[i] / c_top)) ** (1.0 / (n - i)))
    return r * (1.0 + 1e-9)


def _bisect_root(f: EigenPlusFunction, lo: float, hi: float, f_lo: float, tol: float) -> float:
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        fm = f.eval(mid)
        if fm == 0.0:
            return mid
        if (f_lo < 0.0) == (fm < 0.0):
            lo, f_lo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _refine_minimum(f: EigenPlusFunction, a: float, b: float, c: float) -> tuple[float, float]:
    """Golden-section refinement of a bracketed local minimum a < b < c."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    lo, hi = a, c
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f.eval(x1), f.eval(x2)
    for _ in range(120):
        if hi - lo < 1e-13:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = f.eval(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = f.eval(x2)
    xm = 0.5 * (lo + hi)
    return xm, f.eval(xm)


def root_certificate(f: EigenPlusFunction,
                     grid_step: float = DEFAULT_GRID_STEP,
                     tol: float = DEFAULT_ROOT_TOL) -> RootCertificate:
    """Certify the largest root and the sign of f beyond it.

    Raises DomainError when the leading coefficient is negative (f is
    eventually negative, so no finite certificate exists) or when every
    coefficient vanishes.
    """
    require(grid_step > 0.0 and tol > 0.0, "grid_step and tol must be positive")
    top = f.top_index  # raises for the all-zero function
    poly = polynomial_coefficients(f)
    if poly[-1] < 0.0:
        raise DomainError("negative at infinity: leading coefficient below zero")

    r_scan = domination_radius(poly) / SQRT_TWO_PI
    if r_scan > 100.0:
        raise InternalError("domination radius unreasonably large")

    n_points = int(math.ceil(r_scan / grid_step)) + 1
    xs = np.linspace(0.0, n_points * grid_step, n_points + 1)
    vals = f.eval(xs)

    roots: list[float] = []
    sign = np.sign(vals)
    for i in range(len(xs) - 1):
        if sign[i] == 0.0:
            roots.append(float(xs[i]))
        elif sign[i] * sign[i + 1] < 0.0:
            roots.append(_bisect_root(f, float(xs[i]), float(xs[i + 1]), float(vals[i]), tol))
    if sign[-1] == 0.0:
        roots.append(float(xs[-1]))

    largest = max(roots) if roots else 0.0

    # local minima beyond the largest crossing: double or near-double roots
    doubles: list[tuple[float, float]] = []
    nears: list[tuple[float, float]] = []
    scale = float(np.max(np.abs(vals)))
    interior = (vals[1:-1] < vals[:-2]) & (vals[1:-1] < vals[2:])
    for i in np.flatnonzero(interior) + 1:
        x_i = float(xs[i])
        if x_i <= largest + grid_step:
            continue
        xm, fm = _refine_minimum(f, float(xs[i - 1]), x_i, float(xs[i + 1]))
        if fm < -DOUBLE_ROOT_VALUE_TOL:
            # a dip through zero narrower than the grid: recover both roots
            left = _bisect_root(f, float(xs[i - 1]), xm, float(vals[i - 1]), tol)
            right = _bisect_root(f, xm, float(xs[i + 1]), fm, tol)
            roots.extend([left, right])
            largest = max(largest, right)
        elif abs(fm) <= DOUBLE_ROOT_VALUE_TOL:
            doubles.append((xm, fm))
        elif fm <= NEAR_DOUBLE_RATIO * scale:
            nears.append((xm, fm))

    return RootCertificate(
        roots=tuple(sorted(roots)),
        largest_root=largest,
        scan_bound=float(xs[-1]),
        tail_reason="leading-term-domination",
        double_roots=tuple(doubles),
        near_double_roots=tuple(nears),
        grid_step=grid_step,
        tol=tol,
    )


# -- integrals ---------------------------------------------------------------


def _as_integrand(f: EigenPlusFunction) -> Integrand:
    return Integrand(f.eval, GAUSSIAN_TAIL, measured_envelope(f.eval))


def l1_norm(f: EigenPlusFunction, tol: float = 1e-9,
            certificate: RootCertificate | None = None) -> float:
    """Integral of |f| over the real line, splitting panels at certified roots."""
    if certificate is None:
        # |f| = |-f|, so an eventually negative f is certified via its negation
        target = f
        if f.coeffs[f.top_index] < 0.0:
            target = EigenPlusFunction(tuple(-c for c in f.coeffs))
        certificate = root_certificate(target)
    cert = certificate
    integrand = _as_integrand(f)
    r_end = max(truncation_radius(integrand.envelope, tol), cert.scan_bound)
    cuts = [0.0] + [r for r in cert.roots if r > 0.0] + [r_end]
    pieces = len(cuts) - 1
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        total += abs(integrate(integrand, a, b, 0.5 * tol / pieces))
    return 2.0 * total


def mean_integral(f: EigenPlusFunction, tol: float = 1e-9) -> float:
    """Integral of f over the real line (equals f(0) by self-duality)."""
    integrand = _as_integrand(f)
    r_end = truncation_radius(integrand.envelope, tol)
    return 2.0 * integrate(integrand, 0.0, r_end, 0.5 * tol)


def rescaled_to_unit_l1(f: EigenPlusFunction) -> EigenPlusFunction:
    norm = l1_norm(f)
    require(norm > 0.0, "cannot rescale the zero function")
    return EigenPlusFunction(tuple(c / norm for c in f.coeffs), normalized=f.normalized)


# -- basis conversion and JSON files ----------------------------------------


def _psi4n_scale(n: int) -> float:
    # e_n = s_n psi_{4n} with s_n = 2^{-1/4} sqrt(2^{4n} (4n)!)
    log2_s = -0.25 + 0.5 * (4.0 * n + log_gamma(4.0 * n + 1.0) * _LOG2_E)
    return ScaledValue.from_log2(log2_s, 1).to_float()


def to_psi_coefficients(f: EigenPlusFunction) -> list[float]:
    return [c * _psi4n_scale(n) for n, c in enumerate(f.coeffs)]


def from_psi_coefficients(psi_coeffs: Sequence[float], normalized: bool = False) -> EigenPlusFunction:
    coeffs = tuple(float(c) / _psi4n_scale(n) for n, c in enumerate(psi_coeffs))
    return EigenPlusFunction(coeffs, normalized=normalized)


def _parse_coefficient(raw) -> float:
    if isinstance(raw, str):
        return float(Fraction(raw))
    if isinstance(raw, (int, float)):
        return float(raw)
    raise DomainError(f"coefficient entries must be numbers or rational strings, got {raw!r}")


def load_coefficients(path: str | Path) -> EigenPlusFunction:
    """Read a coefficient file: {"coeffs": [...], "basis": "unnormalized-H4n"|"psi"}."""
    data = json.loads(Path(path).read_text())
    require(isinstance(data, dict) and "coeffs" in data, "coefficient file needs a 'coeffs' list")
    basis = data.get("basis", BASIS_UNNORMALIZED)
    require(basis in (BASIS_UNNORMALIZED, BASIS_PSI), f"unknown basis {basis!r}")
    coeffs = [_parse_coefficient(c) for c in data["coeffs"]]
    if basis == BASIS_PSI:
        return from_psi_coefficients(coeffs)
    return EigenPlusFunction(tuple(coeffs))


def save_coefficients(f: EigenPlusFunction, path: str | Path,
                      basis: str = BASIS_UNNORMALIZED) -> None:
    require(basis in (BASIS_UNNORMALIZED, BASIS_PSI), f"unknown basis {basis!r}")
    coeffs = list(f.coeffs) if basis == BASIS_UNNORMALIZED else to_psi_coefficients(f)
    payload = {"coeffs": coeffs, "basis": basis}
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


__all__ = [
    "BASIS_PSI", "BASIS_UNNORMALIZED", "EigenPlusFunction", "MAX_BASIS_INDEX",
    "RootCertificate", "domination_radius", "from_psi_coefficients", "h4n_at_zero",
    "l1_norm", "load_coefficients", "mean_integral", "normalize", "reference_candidate",
    "phi", "polynomial_coefficients", "rescaled_to_unit_l1", "root_certificate",
    "save_coefficients", "to_psi_coefficients",
]
