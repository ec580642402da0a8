"""Request handlers shared by the FastAPI app and the in-process CLI client.

Each handler maps a validated request model onto the core library and packs
the outcome into the matching response model; no numerics live here.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .. import acceptance, eigen, higherdim, lowerbound, optimizer, signpatterns
from ..errors import DomainError
from ..quadrature import fourier_even, gaussian_integrand, radial_fourier
from ..specfun import hermite
from ..specfun.laguerre import laguerre_float, laguerre_grid
from . import schemas


def _parse_coeffs(raw) -> tuple[float, ...]:
    out = []
    for c in raw:
        if isinstance(c, str):
            try:
                out.append(float(Fraction(c)))
            except (ValueError, ZeroDivisionError) as exc:
                raise DomainError(f"bad rational coefficient {c!r}: {exc}") from exc
        else:
            out.append(float(c))
    return tuple(out)


def _function_from(coeffs, normalize_flag: bool) -> eigen.EigenPlusFunction:
    if coeffs is None:
        return eigen.reference_candidate()
    parsed = _parse_coeffs(coeffs)
    if normalize_flag:
        return eigen.normalize(parsed)
    return eigen.EigenPlusFunction(parsed)


def lambda_table(req: schemas.LambdaTableRequest) -> schemas.LambdaTableResponse:
    rows = [schemas.BoundRow(d=r.d, lambda_d=r.lambda_d, bound_new=r.bound_new,
                             bound_bck=r.bound_bck, bound_upper=r.bound_upper, u_d=r.u_d)
            for r in higherdim.bound_table(req.dmin, req.dmax)]
    return schemas.LambdaTableResponse(rows=rows)


def candidate(req: schemas.CandidateRequest) -> schemas.CandidateResponse:
    f = _function_from(req.coeffs, req.normalize)
    cert = eigen.root_certificate(f, grid_step=req.grid_step)
    resp = schemas.CandidateResponse(
        coeffs=list(f.coeffs),
        value_at_zero=f.value_at_zero(),
        largest_root=cert.largest_root,
        roots=list(cert.roots),
        double_roots=list(cert.double_roots),
        near_double_roots=list(cert.near_double_roots),
        scan_bound=cert.scan_bound,
        tail_reason=cert.tail_reason,
    )
    if req.report:
        resp.l1_norm = eigen.l1_norm(f, certificate=cert)
        resp.mean_integral = eigen.mean_integral(f)
    return resp


def optimize(req: schemas.OptimizeRequest) -> schemas.OptimizeResponse:
    # the search re-solves the constraint itself, pivoting on the start's
    # top coefficient; pre-normalizing here could change the degree
    start = _function_from(req.coeffs, normalize_flag=False)
    cfg = optimizer.SearchConfig(
        max_basis_index=req.max_basis_index, step_init=req.step_init,
        step_shrink=req.step_shrink, step_min=req.step_min,
        max_passes=req.max_passes, seed=req.seed)
    result = optimizer.greedy_search(start, cfg)
    return schemas.OptimizeResponse(
        coeffs=list(result.function.coeffs),
        objective=result.objective,
        start_objective=result.start_objective,
        improvement=result.improvement,
        passes=result.passes,
        accepted=result.accepted,
        gap_to_lower_bound=result.gap_to_lower_bound,
        log=[schemas.OptimizeLogEntry(**entry) for entry in result.log],
    )


def lower_bound(req: schemas.LowerBoundRequest) -> schemas.LowerBoundResponse:
    if req.report:
        report = lowerbound.verification_report(req.a_min, req.a_max, req.a_count)
        return schemas.LowerBoundResponse(report=report)
    rep = lowerbound.check_inequality(req.A, req.tau)
    row = schemas.InequalityRow(A=rep.A, tau=rep.tau, h1=rep.h1, h2=rep.h2,
                                sup_term=rep.sup_term, lhs=rep.lhs, rhs=rep.rhs,
                                margin=rep.margin, status=rep.status)
    return schemas.LowerBoundResponse(point=row)


def sign_search(req: schemas.SignSearchRequest) -> schemas.SignSearchResponse:
    if req.family == "hermite":
        nmax = req.nmax if req.nmax is not None else 5000
        res = signpatterns.hermite_sign_search(req.points, req.pattern, nmax)
        return schemas.SignSearchResponse(
            family="hermite", matches=res.matches,
            predictor_matches=res.predictor_matches, uncertain=res.uncertain,
            frequencies=res.frequencies)
    if req.family == "phi":
        nmax = req.nmax if req.nmax is not None else 500
        matches = signpatterns.phi_sign_search(req.points, nmax)
        return schemas.SignSearchResponse(
            family="phi", matches=matches, predictor_matches=[], uncertain=[],
            frequencies={})
    nmax = req.nmax if req.nmax is not None else 2000
    res = signpatterns.laguerre_sign_search(req.nu, req.points, nmax)
    return schemas.SignSearchResponse(
        family="laguerre", matches=res.matches, predictor_matches=[],
        uncertain=res.uncertain, frequencies={}, expected_sign=res.expected_sign)


_DEFAULT_FT_POINTS = (0.0, 0.3, 0.9, 1.3, 1.7)


def ft_check(req: schemas.FtCheckRequest) -> schemas.FtCheckResponse:
    rows = []
    if req.target == "candidate":
        f = _function_from(req.coeffs, normalize_flag=False)
        integrand = gaussian_integrand(f.eval)
        ys = req.ys if req.ys else list(_DEFAULT_FT_POINTS)
        for y in ys:
            got = fourier_even(integrand, y, 1e-8)
            want = f.eval(y)
            rows.append(schemas.FtCheckRow(point=y, transform=got, reference=want,
                                           abs_diff=abs(got - want)))
    elif req.target == "psi":
        n = req.n
        eigenvalue = 1.0 if n % 4 == 0 else -1.0
        integrand = gaussian_integrand(lambda x: hermite.psi_grid(n, x))
        ys = req.ys if req.ys else list(_DEFAULT_FT_POINTS)
        for y in ys:
            got = fourier_even(integrand, y, 1e-8)
            want = eigenvalue * hermite.psi_grid(n, np.asarray([y]))[0]
            rows.append(schemas.FtCheckRow(point=y, transform=got, reference=want,
                                           abs_diff=abs(got - want)))
    else:
        nu = req.nu if req.nu is not None else 0.5 * req.d - 1.0
        n = req.n
        prof = gaussian_integrand(
            lambda r: laguerre_grid(n, nu, 2.0 * math.pi * r * r)
            * np.exp(-math.pi * r * r))
        ss = req.ys if req.ys else [0.2, 0.6, 1.0]
        for s in ss:
            if s <= 0:
                raise DomainError("radial transform points must be positive")
            got = radial_fourier(prof, s, req.d, 1e-8)
            want = ((-1.0) ** n * laguerre_float(n, nu, 2.0 * math.pi * s * s)
                    * math.exp(-math.pi * s * s))
            rows.append(schemas.FtCheckRow(point=s, transform=got, reference=want,
                                           abs_diff=abs(got - want)))
    worst = max(row.abs_diff for row in rows)
    return schemas.FtCheckResponse(target=req.target, rows=rows, max_abs_diff=worst,
                                   tol=req.tol, passed=worst <= req.tol)


def plot_data(req: schemas.PlotDataRequest) -> schemas.PlotDataResponse:
    count = int(round((req.hi - req.lo) / req.step))
    xs = np.linspace(req.lo, req.lo + count * req.step, count + 1)
    roots: list[float] = []
    if req.target == "candidate":
        f = _function_from(req.coeffs, normalize_flag=False)
        values = f.eval(xs)
        roots = list(eigen.root_certificate(f).roots)
    elif req.target == "upsilon":
        values = lowerbound.upsilon(req.A, xs)
    else:
        values = hermite.psi_grid(req.n, xs)
    return schemas.PlotDataResponse(target=req.target, xs=[float(x) for x in xs],
                                    values=[float(v) for v in values], roots=roots)


def verify_all(req: schemas.VerifyAllRequest) -> schemas.VerifyAllResponse:
    ids = req.criteria if req.criteria else acceptance.criterion_ids()
    unknown = [i for i in ids if i not in acceptance.criterion_ids()]
    if unknown:
        raise DomainError(f"unknown acceptance criteria: {unknown}")
    results = acceptance.run_all(ids)
    return schemas.VerifyAllResponse(
        results=[schemas.CriterionResult(criterion=r.criterion, name=r.name,
                                         passed=r.passed, detail=r.detail,
                                         seconds=r.seconds) for r in results],
        all_passed=all(r.passed for r in results),
    )


HANDLERS = {
    "lambda-table": (schemas.LambdaTableRequest, lambda_table),
    "candidate": (schemas.CandidateRequest, candidate),
    "optimize": (schemas.OptimizeRequest, optimize),
    "lower-bound": (schemas.LowerBoundRequest, lower_bound),
    "sign-search": (schemas.SignSearchRequest, sign_search),
    "ft-check": (schemas.FtCheckRequest, ft_check),
    "plot-data": (schemas.PlotDataRequest, plot_data),
    "verify-all": (schemas.VerifyAllRequest, verify_all),
}
