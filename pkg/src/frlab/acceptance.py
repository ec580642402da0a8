"""The executable acceptance suite: nine numbered criteria, each returning a
structured pass/fail record.  pytest wraps these (tests/test_acceptance.py)
and the CLI exposes them as `verify-all`.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import eigen, higherdim, lowerbound, optimizer, signpatterns
from .quadrature import (fourier_even, gaussian_integrand, integrate,
                         integrate_even_line, radial_fourier)
from .specfun import bessel, gammafn, hermite
from .specfun.laguerre import (generating_function_closed_form,
                               generating_function_partial_sum, laguerre_asymptotic,
                               laguerre_float, laguerre_grid)

LAMBDA_TABLE = (0.132, 0.086, 0.058, 0.041, 0.029, 0.021, 0.015, 0.011)
LAMBDA_TABLE_TOL = 5e-3

CANDIDATE_ROOT = 0.59354
CANDIDATE_ROOT_TOL = 1e-3
NEAR_DOUBLE_LOCATION = 0.8990
NEAR_DOUBLE_TOL = 5e-3
SELF_DUAL_POINTS = (0.0, 0.3, 0.9, 1.3, 1.7)
SELF_DUAL_TOL = 1e-6

ORTHONORMALITY_TOL = 1e-7
BESSEL_COMP_TOL = 1e-8
MULTIPLIER_TOL = 1e-6
GENFUNC_TOL = 1e-8

HERMITE_RATE_BOUND = 0.5     # |exact - leading| * sqrt(n), frozen with margin
FEJER_RATE_BOUND = 1.0       # |exact - main term| * n^{3/4 - nu/2}

DERIV_H1_BOUND = 0.78 + 1e-3
# The 0.18 cap cannot hold near A = 0.449: the outer kernel well below level
# -0.09 has two-sided measure ~0.52, more than any target measure <= 1/2, so
# the sublevel boundary sits below -0.09 and the slope reaches ~0.186.  The
# threshold is kept as stated rather than loosened; criterion 4 reports the
# measured value.  (The Lipschitz conclusion the argument rests on, < 1 and
# even <= 0.96, holds with margin ~0.86.)
DERIV_H2_BOUND = 0.18 + 1e-3

OPTIMIZER_IMPROVEMENT_CAP = 1e-3


@dataclass
class CheckResult:
    criterion: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _run(criterion: int, name: str, body: Callable[[], tuple[bool, str]]) -> CheckResult:
    start = time.perf_counter()
    try:
        passed, detail = body()
    except Exception as exc:  # a crash is a failure, not an abort
        return CheckResult(criterion, name, False, f"raised {type(exc).__name__}: {exc}",
                           time.perf_counter() - start)
    return CheckResult(criterion, name, passed, detail, time.perf_counter() - start)


# -- criterion bodies ---------------------------------------------------------


def _criterion_1() -> tuple[bool, str]:
    start = time.perf_counter()
    errors = []
    for d, want in zip(range(2, 10), LAMBDA_TABLE):
        got = higherdim.lambda_d(d)
        errors.append(abs(got - want))
    elapsed = time.perf_counter() - start
    ok = max(errors) <= LAMBDA_TABLE_TOL and elapsed < 5.0
    return ok, f"max_table_error={max(errors):.2e} runtime={elapsed:.2f}s"


def _criterion_2() -> tuple[bool, str]:
    lams = {d: higherdim.lambda_d(d) for d in range(2, 61)}
    below_half = all(v < 0.5 for v in lams.values())
    us = {d: higherdim.u_d(d) for d in range(10, 61)}
    enveloped = all(lams[d] <= us[d] for d in range(10, 61))
    u10 = higherdim.u_d(10)
    decreasing = all(us[d + 1] < us[d] for d in range(10, 60))
    route_gap = max(abs(lams[d] - higherdim.lambda_d_direct(d)) for d in range(2, 61))
    ok = below_half and enveloped and u10 <= 0.494 and decreasing and route_gap <= 1e-8
    return ok, (f"lambda<1/2:{below_half} lambda<=U:{enveloped} U10={u10:.4f} "
                f"U_decreasing:{decreasing} route_gap={route_gap:.2e}")


def _criterion_3() -> tuple[bool, str]:
    start = time.perf_counter()
    f = eigen.reference_candidate()
    cert = eigen.root_certificate(f)
    root_err = abs(cert.largest_root - CANDIDATE_ROOT)
    dips = cert.near_double_roots + cert.double_roots
    near = min(dips, key=lambda t: abs(t[0] - NEAR_DOUBLE_LOCATION)) if dips else (math.inf, math.inf)
    near_err = abs(near[0] - NEAR_DOUBLE_LOCATION)
    integrand = gaussian_integrand(f.eval)
    dual_err = max(abs(fourier_even(integrand, y, 1e-8) - f.eval(y)) for y in SELF_DUAL_POINTS)
    elapsed = time.perf_counter() - start
    ok = (root_err <= CANDIDATE_ROOT_TOL and near_err <= NEAR_DOUBLE_TOL
          and dual_err <= SELF_DUAL_TOL and elapsed < 10.0)
    return ok, (f"largest_root={cert.largest_root:.5f} (err {root_err:.1e}) "
                f"near_double at {near[0]:.4f} value {near[1]:.3e} "
                f"selfdual_err={dual_err:.1e} runtime={elapsed:.2f}s")


def _criterion_4() -> tuple[bool, str]:
    start = time.perf_counter()
    t_ub = lowerbound.tau_ub(0.45)
    tau_ok = t_ub < 13.0 / 500.0
    gaest_ok = all(
        (r := lowerbound.gaest_bounds_check(A))["upper_ok"] and r["lower_ok"]
        for A in (0.30, 0.40, 0.449))
    tau_grid = [0.001] + [0.005 * k for k in range(1, 11)]
    max_d1 = max_d2 = 0.0
    for A in (0.30, 0.40, 0.449):
        est = lowerbound.h_derivative_estimates(A, tau_grid)
        max_d1 = max(max_d1, est["max_dh1"])
        max_d2 = max(max_d2, est["max_dh2"])
    deriv_ok = max_d1 <= DERIV_H1_BOUND and max_d2 <= DERIV_H2_BOUND
    a_grid = np.linspace(0.26, 0.4499, 200)
    fails = [lowerbound.check_inequality(float(A), lowerbound.TAU_ENDPOINT).status == "fails"
             for A in a_grid]
    all_fail = all(fails)
    elapsed = time.perf_counter() - start
    ok = tau_ok and gaest_ok and deriv_ok and all_fail and elapsed < 120.0
    return ok, (f"tau_ub(0.45)={t_ub:.6f} gaest:{gaest_ok} dh1={max_d1:.3f} "
                f"dh2={max_d2:.3f} fails_on_grid:{sum(fails)}/200 runtime={elapsed:.1f}s")


def _criterion_5() -> tuple[bool, str]:
    worst_orth = 0.0
    for m in range(13):
        for n in range(m, 13):
            if (m + n) % 2 == 1:
                continue  # odd product integrates to zero identically
            fn = lambda x, m=m, n=n: hermite.psi_grid(m, x) * hermite.psi_grid(n, x)
            val = integrate_even_line(gaussian_integrand(fn), 1e-9)
            worst_orth = max(worst_orth, abs(val - (1.0 if m == n else 0.0)))
    orth_ok = worst_orth <= ORTHONORMALITY_TOL

    worst_comp = 0.0
    for nu in (1.0, 2.0, 3.5):
        for rho in (1.0, 5.0, 20.0):
            lhs = integrate(lambda r, nu=nu: bessel.bessel_j(nu - 1.0, r) * r ** nu,
                            0.0, rho, 1e-10)
            rhs = bessel.bessel_j(nu, rho) * rho ** nu
            worst_comp = max(worst_comp, abs(lhs - rhs))
    comp_ok = worst_comp <= BESSEL_COMP_TOL

    mono_ok = True
    for nu in (1.0, 2.0, 5.0):
        thetas = bessel.bessel_stationary_points(nu, 10)
        vals = [abs(bessel.bessel_j(nu, t)) for t in thetas]
        mono_ok &= all(a > b for a, b in zip(vals[:-1], vals[1:]))

    zeros_ok = all(bessel.bessel_first_zero(float(nu)) > nu
                   for nu in np.arange(0.0, 60.5, 0.5))

    stirling_ok = True
    for x in np.arange(0.5, 50.5, 0.5):
        lg = gammafn.log_gamma(float(x))
        base = 0.5 * math.log(2.0 * math.pi) + (x - 0.5) * math.log(x) - x
        stirling_ok &= base + 1.0 / (12.0 * x + 1.0) < lg < base + 1.0 / (12.0 * x)

    ok = orth_ok and comp_ok and mono_ok and zeros_ok and stirling_ok
    return ok, (f"orthonormality={worst_orth:.1e} bessel_comp={worst_comp:.1e} "
                f"extrema_decreasing:{mono_ok} zeros>nu:{zeros_ok} stirling:{stirling_ok}")


def _criterion_6() -> tuple[bool, str]:
    worst_mult = 0.0
    for d in (2, 3):
        nu = 0.5 * d - 1.0
        for n in range(5):
            prof = gaussian_integrand(
                lambda r, n=n, nu=nu: laguerre_grid(n, nu, 2.0 * math.pi * r * r)
                * np.exp(-math.pi * r * r))
            for s in (0.2, 0.6, 1.0):
                got = radial_fourier(prof, s, d, 1e-8)
                want = ((-1.0) ** n * laguerre_float(n, nu, 2.0 * math.pi * s * s)
                        * math.exp(-math.pi * s * s))
                worst_mult = max(worst_mult, abs(got - want))
    mult_ok = worst_mult <= MULTIPLIER_TOL

    worst_gen = 0.0
    for nu in (0.0, 0.5):
        for x in (0.5, 2.0, 5.0):
            partial = generating_function_partial_sum(nu, x, 0.5, 61)
            closed = generating_function_closed_form(nu, x, 0.5)
            worst_gen = max(worst_gen, abs(partial - closed))
    gen_ok = worst_gen <= GENFUNC_TOL
    return mult_ok and gen_ok, (f"multiplier={worst_mult:.1e} genfunc_N60={worst_gen:.1e}")


def _criterion_7() -> tuple[bool, str]:
    start = time.perf_counter()
    allplus = signpatterns.hermite_sign_search((1.0, 2.0, 3.0), ("+", "+", "+"), 2000)
    obstruction = signpatterns.hermite_sign_search((1.0, 2.0, 3.0, 4.0),
                                                   ("+", "+", "-", "+"), 5000)
    in_window = [n for n in obstruction.matches if 50 <= n <= 5000]
    phis = signpatterns.phi_sign_search((0.59354, 0.8990), 500)
    lag0 = signpatterns.laguerre_sign_search(0.0, (1.0, 3.0), 2000)
    lag2 = signpatterns.laguerre_sign_search(2.0, (0.5, 2.0), 2000)
    elapsed = time.perf_counter() - start
    ok = (len(allplus.matches) > 0 and len(in_window) == 0 and 6 in phis
          and len(lag0.matches) > 0 and len(lag2.matches) > 0 and elapsed < 180.0)
    return ok, (f"all_plus={len(allplus.matches)} obstruction_hits={len(in_window)} "
                f"phi_has_6:{6 in phis} laguerre=({len(lag0.matches)},{len(lag2.matches)}) "
                f"runtime={elapsed:.1f}s")


def _no_growth(rates: list[float], bound: float) -> bool:
    return max(rates) <= bound and rates[-1] <= 3.0 * max(rates[0], rates[1])


def _criterion_8() -> tuple[bool, str]:
    herm_ok = True
    worst_h = 0.0
    for x in (0.5, 1.0, 2.0):
        rates = [abs(hermite.hermite_ratio_to_zero(n, x) - hermite.hermite_asymptotic(n, x))
                 * math.sqrt(n) for n in (100, 400, 1600, 6400)]
        worst_h = max(worst_h, max(rates))
        herm_ok &= _no_growth(rates, HERMITE_RATE_BOUND)

    fejer_ok = True
    worst_f = 0.0
    for nu in (0.0, 0.5):
        for x in (1.0, 3.0):
            rates = []
            for n in (100, 400, 1600, 6400):
                exact = (x ** (0.5 * nu + 0.25) * math.exp(-0.5 * x)
                         * laguerre_float(n, nu, x))
                rates.append(abs(exact - laguerre_asymptotic(n, nu, x))
                             * n ** (0.75 - 0.5 * nu))
            worst_f = max(worst_f, max(rates))
            fejer_ok &= _no_growth(rates, FEJER_RATE_BOUND)
    return herm_ok and fejer_ok, f"hermite_rate_max={worst_h:.3f} fejer_rate_max={worst_f:.3f}"


def _criterion_9() -> tuple[bool, str]:
    f = eigen.reference_candidate()
    base = optimizer.objective(f)
    res3 = optimizer.greedy_search(f, optimizer.SearchConfig(max_basis_index=3))
    res4 = optimizer.greedy_search(f, optimizer.SearchConfig(max_basis_index=4))
    never_worse = res3.objective <= base + 1e-12 and res4.objective <= base + 1e-12
    improvement = base - res4.objective
    ok = never_worse and 0.0 < improvement < OPTIMIZER_IMPROVEMENT_CAP
    return ok, (f"baseline={base:.6f} n3={res3.objective:.6f} n4={res4.objective:.6f} "
                f"n4_improvement={improvement:.2e}")


_CRITERIA: dict[int, tuple[str, Callable[[], tuple[bool, str]]]] = {
    1: ("lambda_d table d=2..9 at 5e-3", _criterion_1),
    2: ("lambda_d structure and envelope", _criterion_2),
    3: ("explicit candidate reproduction", _criterion_3),
    4: ("one-dimensional lower-bound machine", _criterion_4),
    5: ("special-function suite", _criterion_5),
    6: ("Laguerre-Fourier multiplier and generating function", _criterion_6),
    7: ("sign-pattern searches", _criterion_7),
    8: ("asymptotic error rates", _criterion_8),
    9: ("optimizer sanity", _criterion_9),
}


def criterion_ids() -> list[int]:
    return sorted(_CRITERIA)


def run_criterion(cid: int) -> CheckResult:
    if cid not in _CRITERIA:
        raise KeyError(f"unknown acceptance criterion {cid}")
    name, body = _CRITERIA[cid]
    return _run(cid, name, body)


def run_all(ids=None) -> list[CheckResult]:
    targets = sorted(ids) if ids else criterion_ids()
    return [run_criterion(cid) for cid in targets]


def format_line(result: CheckResult) -> str:
    status = "PASS" if result.passed else "FAIL"
    return (f"[{status}] criterion {result.criterion}: {result.name} "
            f"({result.seconds:.1f}s) {result.detail}")
