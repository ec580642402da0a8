"""Sign-pattern searches for orthogonal polynomial families, driven by the
connection between pointwise signs and linear flows on the torus.

Exact recurrence evaluation is the source of truth; the cosine-phase
asymptotics only act as predictors for comparison.  Values whose magnitude
falls below 1e-13 of the running recurrence scale are flagged sign-uncertain
and excluded from matches instead of being guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, require
from .specfun.hermite import SQRT_TWO_PI, hermite_sign_scan, hermite_weighted_many
from .specfun.laguerre import laguerre_sign_scan

TWO_PI = 2.0 * math.pi

PLUS = "+"
MINUS = "-"


def _parse_pattern(pattern: Sequence[str]) -> np.ndarray:
    require(len(pattern) >= 1, "pattern must have length >= 1")
    out = np.empty(len(pattern), dtype=np.int8)
    for i, s in enumerate(pattern):
        if s == PLUS:
            out[i] = 1
        elif s == MINUS:
            out[i] = -1
        else:
            raise DomainError(f"pattern entries must be '+' or '-', got {s!r}")
    return out


def _check_points(points: Sequence[float]) -> list[float]:
    pts = [float(p) for p in points]
    require(all(math.isfinite(p) for p in pts), "points must be finite")
    require(len(set(pts)) == len(pts), "points must be distinct")
    return pts


# -- torus flow ---------------------------------------------------------------


@dataclass(frozen=True)
class FlowSpec:
    """Direction vector on the torus (R / 2 pi Z)^k plus a return radius."""

    direction: tuple[float, ...]
    epsilon: float
    n_max: int

    def __post_init__(self):
        require(len(self.direction) >= 1, "direction needs at least one component")
        require(all(math.isfinite(a) and a > 0.0 for a in self.direction),
                "direction components must be positive and finite")
        require(0.0 < self.epsilon < math.pi, "epsilon must lie in (0, pi)")
        require(self.n_max >= 1, "n_max must be >= 1")


def torus_return_times(spec: FlowSpec) -> list[int]:
    """All integer times n <= n_max with || n a mod 2 pi || <= epsilon.

    Each coordinate representative is reduced to (-pi, pi]; the norm is
    Euclidean.  An empty result is legitimate for small n_max.
    """
    a = np.asarray(spec.direction, dtype=float)
    ns = np.arange(1, spec.n_max + 1, dtype=float)
    out: list[int] = []
    block = 262144
    eps2 = spec.epsilon * spec.epsilon
    for start in range(0, len(ns), block):
        chunk = ns[start:start + block]
        reps = np.mod(np.outer(chunk, a), TWO_PI)
        reps = np.where(reps > math.pi, reps - TWO_PI, reps)
        dist2 = np.sum(reps * reps, axis=1)
        out.extend(int(n) for n in chunk[dist2 <= eps2])
    return out


# -- Hermite ------------------------------------------------------------------


@dataclass
class SignSearchResult:
    matches: list[int]
    predictor_matches: list[int]
    uncertain: list[int]                 # indices excluded for tiny magnitude
    frequencies: dict[str, float] = field(default_factory=dict)
    expected_sign: str | None = None


def hermite_sign_search(points: Sequence[float], pattern: Sequence[str],
                        n_max: int = 5000) -> SignSearchResult:
    """Indices n <= n_max with sign(H_{4n}(a_j)) matching the pattern at all
    points, plus the matches the predictor cos(sqrt(8n+1) a_j) would give.

    The positive weight e^{-a^2/2} folded into the stable recurrence never
    changes a sign, so recurrence signs are polynomial signs.
    """
    pts = _check_points(points)
    require(all(p > 0 for p in pts), "evaluation points must be positive")
    want = _parse_pattern(pattern)
    require(len(want) == len(pts), "pattern length must equal the number of points")
    require(1 <= n_max * 4 <= 20000, "n_max must be in [1, 5000]")

    sign_rows = []
    unc_rows = []
    for p in pts:
        signs, unc = hermite_sign_scan(p, 4 * n_max, stride=4)
        sign_rows.append(signs)
        unc_rows.append(unc)
    sign_mat = np.vstack(sign_rows)          # shape (k, n_max+1)
    unc_any = np.vstack(unc_rows).any(axis=0)

    ns = np.arange(0, n_max + 1)
    ok = np.all(sign_mat == want[:, None], axis=0) & ~unc_any
    ok[0] = ok[0] and n_max >= 0  # n = 0 participates like any other index

    phases = np.sqrt(8.0 * ns + 1.0)[None, :] * np.asarray(pts)[:, None]
    pred_sign = np.where(np.cos(phases) >= 0.0, 1, -1).astype(np.int8)
    pred_ok = np.all(pred_sign == want[:, None], axis=0)

    freqs: dict[str, float] = {}
    certain = ~unc_any
    total = int(np.count_nonzero(certain))
    if total:
        keys = [",".join(PLUS if s > 0 else MINUS for s in sign_mat[:, i])
                for i in np.flatnonzero(certain)]
        for key in keys:
            freqs[key] = freqs.get(key, 0.0) + 1.0
        freqs = {k: v / total for k, v in freqs.items()}

    return SignSearchResult(
        matches=[int(n) for n in ns[ok]],
        predictor_matches=[int(n) for n in ns[pred_ok]],
        uncertain=[int(n) for n in ns[unc_any]],
        frequencies=freqs,
    )


# -- phi family ---------------------------------------------------------------


def phi_sign_search(points: Sequence[float], n_max: int = 500,
                    threshold: float = 1e-13) -> list[int]:
    """Indices n <= n_max with phi_n strictly positive at every point."""
    pts = _check_points(points)
    require(all(p > 0 for p in pts), "evaluation points must be positive")
    require(1 <= n_max <= 5000, "n_max must be in [1, 5000]")
    degrees = [4 * n for n in range(n_max + 2)]
    at_zero = hermite_weighted_many(0.0, degrees)
    good = np.ones(n_max + 1, dtype=bool)
    for p in pts:
        at_x = hermite_weighted_many(SQRT_TWO_PI * p, degrees)
        ratios = np.array([(a / b).to_float() for a, b in zip(at_x, at_zero)])
        diffs = ratios[1:] - ratios[:-1]
        good &= diffs > threshold
    return [int(n) for n in np.flatnonzero(good)]


def phi_predictor(n: int, x: float) -> float:
    """Leading asymptotic term -sin(4 sqrt(pi n) x) 4 sqrt(2 pi) x / sqrt(8n+1)."""
    require(n >= 1, "predictor needs n >= 1")
    return -math.sin(4.0 * math.sqrt(math.pi * n) * x) * 4.0 * SQRT_TWO_PI * x / math.sqrt(8.0 * n + 1.0)


# -- Laguerre -----------------------------------------------------------------


def laguerre_expected_sign(nu: float) -> str:
    """Sign of cos(pi (nu + 1/2) / 2); undefined when nu + 1/2 is odd."""
    require(nu > -1.0, "laguerre requires nu > -1")
    half = nu + 0.5
    if abs(half / 2.0 - math.floor(half / 2.0) - 0.5) < 1e-12:
        raise DomainError("nu + 1/2 must not be an odd integer")
    c = math.cos(0.5 * math.pi * half)
    return PLUS if c > 0.0 else MINUS


def laguerre_sign_search(nu: float, points: Sequence[float],
                         n_max: int = 2000) -> SignSearchResult:
    """Indices n <= n_max where every L_n^nu(a_j) carries the expected sign."""
    pts = _check_points(points)
    require(all(p > 0 for p in pts), "evaluation points must be positive")
    require(1 <= n_max <= 20000, "n_max must be in [1, 20000]")
    expected = laguerre_expected_sign(nu)
    want = 1 if expected == PLUS else -1

    sign_rows = []
    unc_rows = []
    for p in pts:
        signs, unc = laguerre_sign_scan(nu, p, n_max)
        sign_rows.append(signs)
        unc_rows.append(unc)
    sign_mat = np.vstack(sign_rows)
    unc_any = np.vstack(unc_rows).any(axis=0)
    ns = np.arange(0, n_max + 1)
    ok = np.all(sign_mat == want, axis=0) & ~unc_any
    return SignSearchResult(
        matches=[int(n) for n in ns[ok]],
        predictor_matches=[],
        uncertain=[int(n) for n in ns[unc_any]],
        expected_sign=expected,
    )


# -- the (+, +, -, +) obstruction --------------------------------------------


@dataclass(frozen=True)
class ObstructionReport:
    y: float
    fractional_parts: tuple[float, float, float, float]   # {y}, {2y}, {3y}, {4y}
    outer_constraints_hold: bool      # {y}, {2y}, {4y} all avoid [1/4, 3/4]
    frac3_in_forced_zone: bool        # {3y} in [0, 3/16) or (13/16, 1)
    pattern_excluded: bool            # forced distance >= 1/16 from [1/4, 3/4]


def _frac(v: float) -> float:
    return v - math.floor(v)


def obstruction_predictor(y: float) -> ObstructionReport:
    """Fractional-part logic behind the impossibility of (+, +, -, +) at
    points (1, 2, 3, 4): whenever {y}, {2y}, {4y} all avoid [1/4, 3/4], the
    value {3y} is forced into [0, 3/16) union (13/16, 1), which keeps it at
    distance >= 1/16 from [1/4, 3/4] and so excludes the pattern.
    """
    require(math.isfinite(y), "y must be finite")
    fr = (_frac(y), _frac(2.0 * y), _frac(3.0 * y), _frac(4.0 * y))
    outside = lambda t: t < 0.25 or t > 0.75
    hold = outside(fr[0]) and outside(fr[1]) and outside(fr[3])
    forced = fr[2] < 3.0 / 16.0 or fr[2] > 13.0 / 16.0
    return ObstructionReport(
        y=y,
        fractional_parts=fr,
        outer_constraints_hold=hold,
        frac3_in_forced_zone=forced,
        pattern_excluded=hold and forced,
    )
